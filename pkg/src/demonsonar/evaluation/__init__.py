"""Dataset manifests, splits, metrics and width sweeps."""

from .manifest import SPLIT_COLUMN, DatasetManifest, read_manifest, write_manifest
from .metrics import (
    NOT_ROUTED,
    ConfusionMatrix,
    Metrics,
    compute_metrics,
    evaluate,
    metrics_from_confusion,
)
from .split import split_dataset
from .sweep import DEFAULT_WIDTHS, SweepResult, WidthResult, sweep_hidden_widths

__all__ = [
    "ConfusionMatrix",
    "DEFAULT_WIDTHS",
    "DatasetManifest",
    "Metrics",
    "NOT_ROUTED",
    "SPLIT_COLUMN",
    "SweepResult",
    "WidthResult",
    "compute_metrics",
    "evaluate",
    "metrics_from_confusion",
    "read_manifest",
    "split_dataset",
    "sweep_hidden_widths",
    "write_manifest",
]
