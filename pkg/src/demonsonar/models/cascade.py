"""Two-stage cascade: a vessel category, refined to a vessel model for one category."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger

from ..config import CascadeConfig
from ..exceptions import ContractError, InputValidationError
from ..features import (
    NO_FINE_LABEL,
    FeatureStats,
    SalientFeatures,
    feature_matrix,
    fit_feature_stats,
    normalize_features,
    validate_feature_table,
)
from .mlp import MlpModel, forward, init_mlp
from .rng import MASK64
from .sampling import stratified_split
from .trainer import EpochCallback, FeatureSet, TrainHistory, train

SplitIndices = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class Prediction:
    """Cascade output; ``fine_class`` is set only for the refined category."""

    coarse_class: int
    fine_class: Optional[int]
    coarse_probs: np.ndarray
    fine_probs: Optional[np.ndarray] = None

    def format(self) -> str:
        fine = "-" if self.fine_class is None else str(self.fine_class)
        return f"coarse={self.coarse_class} fine={fine}"


@dataclass(frozen=True)
class CascadeModel:
    """Coarse network plus an optional fine network for ``refine_category``."""

    coarse: MlpModel
    fine: Optional[MlpModel] = None
    refine_category: Optional[int] = 1

    def __post_init__(self):
        if self.coarse.feature_stats is None:
            raise ContractError("Coarse network carries no feature statistics")
        if self.refine_category is None:
            if self.fine is not None:
                raise ContractError("Fine network given but refinement is disabled")
            return
        if not (0 <= self.refine_category < self.coarse.n_outputs):
            raise ContractError(
                f"refine_category {self.refine_category} outside the coarse "
                f"outputs [0, {self.coarse.n_outputs})"
            )
        if self.fine is None:
            raise ContractError("Refinement is enabled but no fine network is present")
        if self.fine.n_inputs != self.coarse.n_inputs:
            raise ContractError("Coarse and fine networks disagree on input width")

    @property
    def feature_stats(self) -> FeatureStats:
        return self.coarse.feature_stats

    def predict_many(self, features) -> List[Prediction]:
        return cascade_predict_many(self, features)


def _stats_for(net: MlpModel, fallback: FeatureStats) -> FeatureStats:
    return net.feature_stats if net.feature_stats is not None else fallback


def cascade_predict_many(cascade: CascadeModel, features) -> List[Prediction]:
    """Predict every row of an ``(n, 5)`` raw feature matrix."""
    raw = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if not np.all(np.isfinite(raw)):
        raise InputValidationError("Features contain non-finite values")

    normalized = normalize_features(raw, cascade.feature_stats)
    coarse_probs = forward(cascade.coarse, normalized)
    coarse_classes = np.argmax(coarse_probs, axis=1)

    fine_probs = None
    routed = np.zeros(raw.shape[0], dtype=bool)
    if cascade.refine_category is not None:
        routed = coarse_classes == cascade.refine_category
        if routed.any():
            stats = _stats_for(cascade.fine, cascade.feature_stats)
            fine_probs = forward(cascade.fine, normalize_features(raw[routed], stats))

    predictions = []
    fine_row = 0
    for i, coarse in enumerate(coarse_classes):
        if routed[i]:
            probs = fine_probs[fine_row]
            fine_row += 1
            predictions.append(
                Prediction(int(coarse), int(np.argmax(probs)), coarse_probs[i], probs)
            )
        else:
            predictions.append(Prediction(int(coarse), None, coarse_probs[i]))
    return predictions


def cascade_predict(
    cascade: CascadeModel, features: Union[SalientFeatures, Sequence[float]]
) -> Prediction:
    """Run one feature vector through the cascade.

    The coarse network decides the category; only when it equals
    ``refine_category`` does the fine network name the vessel model.
    """
    vector = features.to_vector() if isinstance(features, SalientFeatures) else features
    return cascade_predict_many(cascade, np.asarray(vector).reshape(1, -1))[0]


@dataclass(frozen=True)
class CascadeFit:
    """Trained cascade together with how it was trained."""

    model: CascadeModel
    coarse_history: TrainHistory
    fine_history: Optional[TrainHistory]
    train_index: np.ndarray
    val_index: np.ndarray


def _check_labels(table: pd.DataFrame, config: CascadeConfig) -> None:
    coarse = table["label_coarse"]
    bad = sorted(set(coarse[(coarse < 0) | (coarse >= config.coarse_classes)].tolist()))
    if bad:
        raise ContractError(
            f"Coarse labels {bad} outside [0, {config.coarse_classes})"
        )
    sizes = coarse.value_counts()
    small = sorted(int(c) for c, n in sizes.items() if n < 2)
    if small:
        raise ContractError(
            f"Coarse classes with fewer than 2 samples: {', '.join(map(str, small))}"
        )
    if config.refine_category is None:
        return

    fine = table.loc[coarse == config.refine_category, "label_fine"]
    if fine.empty:
        raise ContractError(
            f"No rows of refine category {config.refine_category} to train the "
            f"fine network"
        )
    outside = (fine < NO_FINE_LABEL) | (fine >= config.fine_classes)
    out_of_range = sorted(set(fine[outside].tolist()))
    if out_of_range:
        raise ContractError(
            f"Rows of category {config.refine_category} need fine labels in "
            f"[0, {config.fine_classes}); found {out_of_range}"
        )
    counts = fine.value_counts()
    deficient = [c for c in range(config.fine_classes) if counts.get(c, 0) < 2]
    unlabeled = int((fine == NO_FINE_LABEL).sum())
    if unlabeled or deficient:
        listed = ", ".join(map(str, deficient)) or "none"
        raise ContractError(
            f"{unlabeled} rows of category {config.refine_category} lack a fine "
            f"label; fine classes with fewer than 2 samples: {listed}"
        )


def cascade_split(table: pd.DataFrame, config: CascadeConfig) -> SplitIndices:
    """Stratified split on the coarse label.

    The fine network uses the refine-category rows of each side, so the
    per-class counts of the coarse split are the only ones drawn.
    """
    coarse = table["label_coarse"].to_numpy(dtype=np.int64)
    return stratified_split(coarse, config.split_ratio, config.train.seed)


def fit_cascade(
    table: pd.DataFrame,
    config: Optional[CascadeConfig] = None,
    split: Optional[SplitIndices] = None,
    on_epoch: Optional[EpochCallback] = None,
) -> CascadeFit:
    """Train both stages of the cascade on a feature table.

    One stratified split is drawn (or ``split`` reused). The coarse network
    trains on every row; the fine network trains on the refine-category rows
    of the same split. Both share feature statistics fitted on the coarse
    training rows.

    Raises:
        ContractError: If labels are out of range, a refine fine class has
            fewer than two samples, or a stratum cannot be split
    """
    config = config or CascadeConfig()
    table = validate_feature_table(table)
    if table.empty:
        raise ContractError("Cannot train on an empty dataset")
    _check_labels(table, config)

    seed = config.train.seed
    if split is None:
        split = cascade_split(table, config)
    train_idx, val_idx = (np.asarray(part, dtype=np.intp) for part in split)

    raw = feature_matrix(table)
    stats = fit_feature_stats(raw[train_idx])
    normalized = normalize_features(raw, stats)
    data = FeatureSet(normalized, table["label_coarse"].to_numpy())
    width = config.train.hidden_width

    logger.info(
        f"Training coarse network 5-{width}-{config.coarse_classes} on "
        f"{train_idx.size} rows, validating on {val_idx.size}"
    )
    coarse_dims = (normalized.shape[1], width, config.coarse_classes)
    coarse_init = init_mlp(coarse_dims, seed, stats)
    coarse, coarse_history = train(
        coarse_init,
        data.subset(train_idx),
        data.subset(val_idx),
        config.train,
        on_epoch,
    )

    fine, fine_history = None, None
    if config.refine_category is not None:
        refine = table["label_coarse"].to_numpy() == config.refine_category
        fine_train = train_idx[refine[train_idx]]
        fine_val = val_idx[refine[val_idx]]
        fine_data = FeatureSet(normalized, table["label_fine"].to_numpy())
        fine_seed = (seed + 1) & MASK64
        logger.info(
            f"Training fine network 5-{width}-{config.fine_classes} on "
            f"{fine_train.size} rows of category {config.refine_category}"
        )
        fine_init = init_mlp(
            (normalized.shape[1], width, config.fine_classes), fine_seed, stats
        )
        fine, fine_history = train(
            fine_init,
            fine_data.subset(fine_train),
            fine_data.subset(fine_val),
            config.train.model_copy(update={"seed": fine_seed}),
            on_epoch,
        )

    model = CascadeModel(
        coarse=coarse, fine=fine, refine_category=config.refine_category
    )
    return CascadeFit(model, coarse_history, fine_history, train_idx, val_idx)


def train_cascade(
    table: pd.DataFrame,
    config: Optional[CascadeConfig] = None,
    split: Optional[SplitIndices] = None,
) -> CascadeModel:
    """Train a cascade and return only the model (see :func:`fit_cascade`)."""
    return fit_cascade(table, config, split).model
