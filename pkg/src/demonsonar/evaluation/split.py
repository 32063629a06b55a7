"""Train/validation split of a manifest."""

from typing import Tuple

from ..models import stratified_split
from .manifest import DatasetManifest


def split_dataset(
    manifest: DatasetManifest, ratio: float = 0.8, seed: int = 0
) -> Tuple[DatasetManifest, DatasetManifest]:
    """Stratified split on the coarse label.

    Every class keeps at least one row on each side.

    Raises:
        ContractError: If the ratio is outside (0, 1) or a class has fewer
            than two rows
    """
    train_index, val_index = stratified_split(manifest.coarse_labels, ratio, seed)
    return manifest.subset(train_index), manifest.subset(val_index)
