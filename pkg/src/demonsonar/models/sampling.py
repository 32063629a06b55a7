"""Stratified index splits."""

import math
from typing import Tuple

import numpy as np

from ..exceptions import ContractError
from .rng import Xoshiro256StarStar


def validation_count(n: int, ratio: float) -> int:
    """Rows of an ``n``-row class that go to validation.

    ``floor(n * (1 - ratio))`` with at least one row on each side. The
    product is rounded to 9 decimals first so that 60 * 0.2 gives 12.
    """
    n_val = math.floor(round(n * (1.0 - ratio), 9))
    return min(n - 1, max(1, n_val))


def stratified_split(keys, ratio: float, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Split row indices per stratum into train and validation.

    Strata are visited in ascending key order; within each, rows are
    shuffled by one shared seeded generator.

    Args:
        keys: Stratum key per row (integers)
        ratio: Training fraction, in (0, 1)
        seed: Generator seed

    Returns:
        Sorted train and validation index arrays

    Raises:
        ContractError: If the ratio is out of range or a stratum has fewer
            than two rows
    """
    if not (0.0 < ratio < 1.0):
        raise ContractError(f"Split ratio must be in (0, 1), got {ratio}")
    labels = np.asarray(keys).reshape(-1)
    if labels.size == 0:
        raise ContractError("Cannot split an empty dataset")

    strata, counts = np.unique(labels, return_counts=True)
    small = [str(s) for s, c in zip(strata, counts) if c < 2]
    if small:
        raise ContractError(
            f"Classes with fewer than 2 samples cannot be split: {', '.join(small)}"
        )

    rng = Xoshiro256StarStar(seed)
    train_parts, val_parts = [], []
    for stratum in strata:
        rows = [int(i) for i in np.flatnonzero(labels == stratum)]
        rng.shuffle(rows)
        n_val = validation_count(len(rows), ratio)
        val_parts.extend(rows[:n_val])
        train_parts.extend(rows[n_val:])

    return np.array(sorted(train_parts), dtype=np.intp), np.array(
        sorted(val_parts), dtype=np.intp
    )
