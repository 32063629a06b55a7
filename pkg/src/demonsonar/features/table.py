"""Feature tables: one row of labels and salient features per recording."""

from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np
import pandas as pd

from ..exceptions import ArtifactIOError, ContractError, InputValidationError
from .salient import FEATURE_NAMES, SalientFeatures

LABEL_COLUMNS = ["path", "label_coarse", "label_fine"]
TABLE_COLUMNS = LABEL_COLUMNS + list(FEATURE_NAMES)
NO_FINE_LABEL = -1


def feature_row(
    path: Union[str, Path],
    label_coarse: int,
    label_fine: Optional[int],
    features: SalientFeatures,
) -> dict:
    """Table row for one recording."""
    row = {
        "path": str(path),
        "label_coarse": int(label_coarse),
        "label_fine": NO_FINE_LABEL if label_fine is None else int(label_fine),
    }
    row.update(zip(FEATURE_NAMES, features.to_vector().tolist()))
    return row


def build_feature_table(rows: Iterable[dict]) -> pd.DataFrame:
    df = pd.DataFrame(list(rows), columns=TABLE_COLUMNS)
    return df.astype({"label_coarse": "int64", "label_fine": "int64"})


def is_feature_table(df: pd.DataFrame) -> bool:
    """True when every feature column is present."""
    return all(name in df.columns for name in FEATURE_NAMES)


def validate_feature_table(df: pd.DataFrame) -> pd.DataFrame:
    """Check columns, label types and finiteness; return a normalized copy."""
    missing = [c for c in TABLE_COLUMNS if c not in df.columns]
    if missing:
        raise ContractError(f"Feature table lacks columns: {', '.join(missing)}")

    table = df[TABLE_COLUMNS].copy()
    table["path"] = table["path"].astype(str)
    labels = table[["label_coarse", "label_fine"]]
    if labels.isna().any().any():
        raise InputValidationError("Feature table has missing labels")
    table = table.astype({"label_coarse": "int64", "label_fine": "int64"})

    features = table[list(FEATURE_NAMES)].astype(np.float64)
    if not np.all(np.isfinite(features.to_numpy())):
        bad = table.loc[~np.isfinite(features.to_numpy()).all(axis=1), "path"]
        raise InputValidationError(
            f"Non-finite features in rows: {', '.join(bad.head(5))}"
        )
    table[list(FEATURE_NAMES)] = features
    return table.reset_index(drop=True)


def feature_matrix(df: pd.DataFrame) -> np.ndarray:
    """Feature columns as an ``(n, 5)`` array in canonical order."""
    return df[list(FEATURE_NAMES)].to_numpy(dtype=np.float64)


def write_feature_table(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a feature table as CSV with full float precision."""
    table_path = Path(path)
    try:
        validate_feature_table(df).to_csv(table_path, index=False, float_format="%.17g")
    except OSError as e:
        raise ArtifactIOError(
            table_path, f"cannot write features: {e.strerror or e}"
        ) from e
    return table_path


def read_feature_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read and validate a feature CSV."""
    table_path = Path(path)
    df = pd.read_csv(table_path, dtype={"path": str})
    return validate_feature_table(df)
