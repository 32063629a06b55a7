"""Z-score normalization of feature vectors."""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Union

import numpy as np

from ..exceptions import ContractError, InputValidationError
from .salient import N_FEATURES, SalientFeatures

FeatureRows = Union[Sequence[SalientFeatures], np.ndarray]


def as_matrix(features: FeatureRows) -> np.ndarray:
    """Stack feature vectors into an ``(n, 5)`` float matrix."""
    if isinstance(features, np.ndarray):
        matrix = np.asarray(features, dtype=np.float64)
    else:
        matrix = np.array(
            [f.to_vector() if isinstance(f, SalientFeatures) else f for f in features],
            dtype=np.float64,
        )
    matrix = matrix.reshape(-1 if matrix.size else 0, N_FEATURES)
    if not np.all(np.isfinite(matrix)):
        raise InputValidationError("Feature matrix contains non-finite values")
    return matrix


@dataclass(frozen=True)
class FeatureStats:
    """Per-dimension training mean and population standard deviation."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.float64).reshape(-1)
        std = np.array(self.std, dtype=np.float64).reshape(-1)
        if mean.size != N_FEATURES or std.size != N_FEATURES:
            raise ContractError(f"Feature stats need {N_FEATURES} values per field")
        if np.any(std < 0) or not np.all(np.isfinite(np.concatenate([mean, std]))):
            raise ContractError("Feature stats must be finite with std >= 0")
        mean.setflags(write=False)
        std.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)

    @property
    def safe_std(self) -> np.ndarray:
        """Standard deviation with zeros replaced by one."""
        return np.where(self.std == 0, 1.0, self.std)

    def to_dict(self) -> Dict[str, List[float]]:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}


def fit_feature_stats(features: FeatureRows) -> FeatureStats:
    """Fit mean and population std over a training set of at least two rows."""
    matrix = as_matrix(features)
    if matrix.shape[0] < 2:
        raise ContractError(
            f"Feature statistics need at least 2 samples, got {matrix.shape[0]}"
        )
    mean = matrix.mean(axis=0)
    std = np.sqrt(((matrix - mean) ** 2).mean(axis=0))
    return FeatureStats(mean=mean, std=std)


def normalize_features(
    features: Union[SalientFeatures, Sequence[float], np.ndarray], stats: FeatureStats
) -> np.ndarray:
    """``(x - mean) / std`` per dimension; a zero std counts as one.

    Accepts a single feature vector or an ``(n, 5)`` matrix.
    """
    if isinstance(features, SalientFeatures):
        values = features.to_vector()
    else:
        values = np.asarray(features, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise InputValidationError("Features contain non-finite values")
    return (values - stats.mean) / stats.safe_std
