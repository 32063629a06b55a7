"""Mini-batch gradient descent with best-on-validation model selection."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger

from ..config import TrainConfig
from ..exceptions import ContractError
from .mlp import MlpModel, loss_and_gradients, predict_classes, sgd_step
from .rng import Xoshiro256StarStar

# Stream id for batch shuffling, distinct from the weight-init stream
SHUFFLE_STREAM = 1

EpochCallback = Callable[[int, float, float], None]


@dataclass(frozen=True)
class FeatureSet:
    """Normalized feature rows with integer labels."""

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.features, dtype=np.float64))
        y = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if x.shape[0] != y.size:
            raise ContractError(f"{x.shape[0]} feature rows but {y.size} labels")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", y)

    def __len__(self) -> int:
        return int(self.labels.size)

    def subset(self, indices) -> "FeatureSet":
        return FeatureSet(self.features[indices], self.labels[indices])


@dataclass
class TrainHistory:
    """Per-epoch training loss and validation accuracy."""

    train_loss: List[float] = field(default_factory=list)
    val_accuracy: List[float] = field(default_factory=list)
    best_epoch: int = 0
    best_val_accuracy: float = -1.0

    def __len__(self) -> int:
        return len(self.train_loss)

    def record(self, loss: float, accuracy: float) -> bool:
        """Append an epoch; return True when it is the new best."""
        self.train_loss.append(loss)
        self.val_accuracy.append(accuracy)
        if accuracy > self.best_val_accuracy:
            self.best_val_accuracy = accuracy
            self.best_epoch = len(self.train_loss)
            return True
        return False


def accuracy(model: MlpModel, data: FeatureSet) -> float:
    """Fraction of rows whose argmax prediction equals the label."""
    return float(np.mean(predict_classes(model, data.features) == data.labels))


def train(
    model: MlpModel,
    train_set: FeatureSet,
    val_set: FeatureSet,
    config: Optional[TrainConfig] = None,
    on_epoch: Optional[EpochCallback] = None,
) -> Tuple[MlpModel, TrainHistory]:
    """Train by shuffled mini-batch gradient descent.

    After every epoch the model is scored on ``val_set``; the returned model
    is the snapshot with the highest validation accuracy, the earliest one
    on ties.

    Args:
        model: Initial network
        train_set: Normalized training rows
        val_set: Normalized validation rows
        config: Learning rate, epochs, batch size and shuffle seed
        on_epoch: Called with ``(epoch, train_loss, val_accuracy)``

    Returns:
        Best model and the training history

    Raises:
        ContractError: If either set is empty
    """
    config = config or TrainConfig()
    if len(train_set) == 0 or len(val_set) == 0:
        raise ContractError("Training and validation sets must be non-empty")

    rng = Xoshiro256StarStar(config.seed, stream=SHUFFLE_STREAM)
    history = TrainHistory()
    best = model
    n = len(train_set)

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        total_loss = 0.0
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = loss_and_gradients(
                model, train_set.features[batch], train_set.labels[batch]
            )
            model = sgd_step(model, grads, config.learning_rate)
            total_loss += loss * batch.size

        epoch_loss = total_loss / n
        val_acc = accuracy(model, val_set)
        if history.record(epoch_loss, val_acc):
            best = model
        if on_epoch is not None:
            on_epoch(epoch, epoch_loss, val_acc)

    logger.debug(
        f"Trained {model.layer_dims} for {config.epochs} epochs: best val "
        f"accuracy {history.best_val_accuracy:.3f} at epoch {history.best_epoch}"
    )
    return best, history
