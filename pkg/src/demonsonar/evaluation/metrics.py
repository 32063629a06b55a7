"""Confusion matrices and per-class accuracy."""

from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..exceptions import ContractError
from ..features import feature_matrix, validate_feature_table
from .manifest import DatasetManifest

if TYPE_CHECKING:
    from ..models import CascadeModel

# Column label of the fine-stage bucket for rows the cascade routed elsewhere
NOT_ROUTED = "not_routed"


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with rows = true class and columns = predicted class.

    A matrix may carry one extra trailing column, the not-routed bucket.
    """

    counts: np.ndarray
    has_bucket: bool = False

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or np.any(counts < 0):
            raise ContractError("Confusion counts must be a non-negative 2-D grid")
        expected_cols = counts.shape[0] + (1 if self.has_bucket else 0)
        if counts.shape[1] != expected_cols:
            raise ContractError(
                f"Confusion of {counts.shape[0]} classes needs {expected_cols} columns"
            )
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def n_classes(self) -> int:
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts[:, : self.n_classes]))

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def column_labels(self) -> List[str]:
        labels = [str(c) for c in range(self.n_classes)]
        return labels + [NOT_ROUTED] if self.has_bucket else labels


@dataclass(frozen=True)
class Metrics:
    """Per-class recall and overall accuracy of one confusion matrix.

    ``routed_accuracy`` is set for fine-stage metrics: the accuracy over
    the rows the cascade actually routed to the fine network.
    """

    per_class_accuracy: np.ndarray
    overall_accuracy: float
    confusion: ConfusionMatrix
    routed_accuracy: Optional[float] = None

    @property
    def support(self) -> np.ndarray:
        return self.confusion.row_sums

    @property
    def empty_classes(self) -> List[int]:
        return [int(c) for c in np.flatnonzero(self.support == 0)]


def metrics_from_confusion(
    confusion: ConfusionMatrix, routed_accuracy: Optional[float] = None
) -> Metrics:
    rows = confusion.row_sums
    diagonal = np.diag(confusion.counts[:, : confusion.n_classes])
    per_class = np.divide(
        diagonal, rows, out=np.zeros(confusion.n_classes), where=rows > 0
    ).astype(np.float64)
    total = confusion.total
    overall = confusion.trace / total if total else 0.0
    return Metrics(per_class, float(overall), confusion, routed_accuracy)


def compute_metrics(
    true_labels, predicted_labels, n_classes: int, bucket: bool = False
) -> Metrics:
    """Tabulate predictions into a confusion matrix and score it.

    With ``bucket`` set, a predicted label of -1 is counted in the trailing
    not-routed column.

    Raises:
        ContractError: If a label is outside the class range
    """
    true = np.asarray(true_labels, dtype=np.int64).reshape(-1)
    predicted = np.asarray(predicted_labels, dtype=np.int64).reshape(-1)
    if true.size != predicted.size:
        raise ContractError(f"{true.size} true labels but {predicted.size} predictions")
    if np.any((true < 0) | (true >= n_classes)):
        raise ContractError(f"True labels outside [0, {n_classes})")

    columns = n_classes + (1 if bucket else 0)
    if bucket:
        predicted = np.where(predicted < 0, n_classes, predicted)
    if np.any((predicted < 0) | (predicted >= columns)):
        raise ContractError(f"Predicted labels outside [0, {n_classes})")

    counts = np.zeros((n_classes, columns), dtype=np.int64)
    np.add.at(counts, (true, predicted), 1)
    return metrics_from_confusion(ConfusionMatrix(counts, has_bucket=bucket))


def _evaluation_table(rows: Union[DatasetManifest, pd.DataFrame]) -> pd.DataFrame:
    if isinstance(rows, DatasetManifest):
        return rows.feature_table()
    return validate_feature_table(rows)


def evaluate(
    cascade: "CascadeModel", rows: Union[DatasetManifest, pd.DataFrame]
) -> Tuple[Metrics, Optional[Metrics]]:
    """Score a cascade on labeled feature rows.

    Coarse metrics cover every row. Fine metrics cover the rows whose true
    coarse label is the refine category; a row the cascade routed elsewhere
    lands in the not-routed column.

    Returns:
        Coarse metrics, and fine metrics when the cascade refines

    Raises:
        ContractError: If there are no rows
    """
    table = _evaluation_table(rows)
    if table.empty:
        raise ContractError("Cannot evaluate on an empty dataset")

    predictions = cascade.predict_many(feature_matrix(table))
    true_coarse = table["label_coarse"].to_numpy()
    coarse = compute_metrics(
        true_coarse, [p.coarse_class for p in predictions], cascade.coarse.n_outputs
    )
    if cascade.refine_category is None:
        return coarse, None

    refine_rows = np.flatnonzero(true_coarse == cascade.refine_category)
    true_fine = table["label_fine"].to_numpy()[refine_rows]
    predicted_fine = np.array(
        [
            -1 if predictions[i].fine_class is None else predictions[i].fine_class
            for i in refine_rows
        ],
        dtype=np.int64,
    )
    fine = compute_metrics(
        true_fine, predicted_fine, cascade.fine.n_outputs, bucket=True
    )

    routed = predicted_fine >= 0
    routed_accuracy = 0.0
    if routed.any():
        routed_accuracy = float(np.mean(predicted_fine[routed] == true_fine[routed]))
    return coarse, metrics_from_confusion(fine.confusion, routed_accuracy)
