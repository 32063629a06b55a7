"""Labeled dataset manifests."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..exceptions import ArtifactIOError, ContractError
from ..features import (
    LABEL_COLUMNS,
    NO_FINE_LABEL,
    is_feature_table,
    validate_feature_table,
)

SPLIT_COLUMN = "split"


@dataclass
class DatasetManifest:
    """Rows of ``path, label_coarse, label_fine``, optionally with features and a split.

    Relative paths are resolved against ``base_dir``.
    """

    rows: pd.DataFrame
    base_dir: Path = field(default_factory=Path)

    def __post_init__(self):
        missing = [c for c in LABEL_COLUMNS if c not in self.rows.columns]
        if missing:
            raise ContractError(f"Manifest lacks columns: {', '.join(missing)}")
        rows = self.rows.reset_index(drop=True).copy()
        rows["path"] = rows["path"].astype(str)
        if rows[["label_coarse", "label_fine"]].isna().any().any():
            raise ContractError("Manifest has rows without labels")
        rows = rows.astype({"label_coarse": "int64", "label_fine": "int64"})
        duplicated = rows.loc[rows["path"].duplicated(), "path"]
        if not duplicated.empty:
            raise ContractError(
                f"Duplicate manifest paths: {', '.join(duplicated.head(5))}"
            )
        self.rows = rows
        self.base_dir = Path(self.base_dir)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def has_features(self) -> bool:
        return is_feature_table(self.rows)

    @property
    def coarse_labels(self) -> np.ndarray:
        return self.rows["label_coarse"].to_numpy()

    @property
    def fine_labels(self) -> np.ndarray:
        return self.rows["label_fine"].to_numpy()

    def resolve(self, path: Union[str, Path]) -> Path:
        candidate = Path(path)
        return candidate if candidate.is_absolute() else self.base_dir / candidate

    def audio_paths(self) -> Sequence[Path]:
        return [self.resolve(p) for p in self.rows["path"]]

    def feature_table(self) -> pd.DataFrame:
        """The rows as a validated feature table."""
        if not self.has_features:
            raise ContractError("Manifest carries no feature columns")
        return validate_feature_table(self.rows)

    def subset(self, indices) -> "DatasetManifest":
        return DatasetManifest(self.rows.iloc[np.asarray(indices)], self.base_dir)

    def select_split(self, name: str) -> "DatasetManifest":
        """Rows whose split column equals ``name``."""
        if SPLIT_COLUMN not in self.rows.columns:
            raise ContractError(f"Manifest has no '{SPLIT_COLUMN}' column")
        selected = self.rows[self.rows[SPLIT_COLUMN] == name]
        return DatasetManifest(selected, self.base_dir)

    def with_split(self, train_index, val_index) -> "DatasetManifest":
        """Copy with a split column marking train and validation rows."""
        rows = self.rows.copy()
        rows[SPLIT_COLUMN] = ""
        rows.loc[np.asarray(train_index), SPLIT_COLUMN] = "train"
        rows.loc[np.asarray(val_index), SPLIT_COLUMN] = "val"
        return DatasetManifest(rows, self.base_dir)

    def check_labels(
        self, coarse_classes: int, fine_classes: Optional[int] = None
    ) -> None:
        """Raise if a label falls outside the configured class counts."""
        coarse = self.rows["label_coarse"]
        bad = sorted(set(coarse[(coarse < 0) | (coarse >= coarse_classes)].tolist()))
        if bad:
            raise ContractError(f"Coarse labels {bad} outside [0, {coarse_classes})")
        if fine_classes is not None:
            fine = self.rows["label_fine"]
            invalid = (fine != NO_FINE_LABEL) & ((fine < 0) | (fine >= fine_classes))
            if invalid.any():
                raise ContractError(
                    f"Fine labels {sorted(set(fine[invalid].tolist()))} outside "
                    f"[0, {fine_classes})"
                )


def read_manifest(path: Union[str, Path]) -> DatasetManifest:
    """Read a manifest or feature CSV.

    Raises:
        ContractError: If the file has no rows or lacks label columns
    """
    manifest_path = Path(path)
    try:
        rows = pd.read_csv(manifest_path, dtype={"path": str})
    except pd.errors.EmptyDataError as e:
        raise ContractError(f"Manifest {manifest_path} is empty") from e
    if rows.empty:
        raise ContractError(f"Manifest {manifest_path} has no rows")
    return DatasetManifest(rows, manifest_path.parent)


def write_manifest(manifest: DatasetManifest, path: Union[str, Path]) -> Path:
    manifest_path = Path(path)
    try:
        manifest.rows.to_csv(manifest_path, index=False, float_format="%.17g")
    except OSError as e:
        raise ArtifactIOError(
            manifest_path, f"cannot write manifest: {e.strerror or e}"
        ) from e
    return manifest_path
