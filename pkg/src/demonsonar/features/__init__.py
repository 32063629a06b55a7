"""Salient line features of DEMON spectra."""

from .comb import band_bins, comb_score, estimate_blade_count, estimate_shaft_frequency
from .normalization import (
    FeatureStats,
    as_matrix,
    fit_feature_stats,
    normalize_features,
)
from .peaks import Peak, analysis_median, detect_peaks
from .salient import (
    FEATURE_NAMES,
    N_FEATURES,
    SalientFeatures,
    extract_salient_features,
)
from .table import (
    LABEL_COLUMNS,
    NO_FINE_LABEL,
    TABLE_COLUMNS,
    build_feature_table,
    feature_matrix,
    feature_row,
    is_feature_table,
    read_feature_table,
    validate_feature_table,
    write_feature_table,
)

__all__ = [
    "FEATURE_NAMES",
    "FeatureStats",
    "LABEL_COLUMNS",
    "NO_FINE_LABEL",
    "N_FEATURES",
    "Peak",
    "SalientFeatures",
    "TABLE_COLUMNS",
    "analysis_median",
    "as_matrix",
    "band_bins",
    "build_feature_table",
    "comb_score",
    "detect_peaks",
    "estimate_blade_count",
    "estimate_shaft_frequency",
    "extract_salient_features",
    "feature_matrix",
    "feature_row",
    "fit_feature_stats",
    "is_feature_table",
    "normalize_features",
    "read_feature_table",
    "validate_feature_table",
    "write_feature_table",
]
