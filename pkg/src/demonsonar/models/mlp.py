"""Dense feedforward network with ReLU hidden layers and a softmax output."""

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ContractError, InputValidationError
from ..features import FeatureStats
from .rng import Xoshiro256StarStar


@dataclass(frozen=True)
class MlpModel:
    """Immutable network parameters.

    ``weights[i]`` has shape ``(layer_dims[i + 1], layer_dims[i])`` and
    ``biases[i]`` length ``layer_dims[i + 1]``. ``feature_stats`` holds the
    normalization the inputs must receive before :func:`forward`.
    """

    layer_dims: Tuple[int, ...]
    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]
    feature_stats: Optional[FeatureStats] = None

    def __post_init__(self):
        dims = tuple(int(d) for d in self.layer_dims)
        _check_dims(dims)
        if len(self.weights) != len(dims) - 1 or len(self.biases) != len(dims) - 1:
            raise ContractError(
                f"Expected {len(dims) - 1} layers, got {len(self.weights)} weight "
                f"matrices and {len(self.biases)} bias vectors"
            )

        weights, biases = [], []
        for layer, (w, b) in enumerate(zip(self.weights, self.biases)):
            w = np.array(w, dtype=np.float64)
            b = np.array(b, dtype=np.float64).reshape(-1)
            expected = (dims[layer + 1], dims[layer])
            if w.shape != expected:
                raise ContractError(
                    f"Layer {layer} weights have shape {w.shape}, expected {expected}"
                )
            if b.shape != (dims[layer + 1],):
                raise ContractError(
                    f"Layer {layer} biases have length {b.size}, "
                    f"expected {dims[layer + 1]}"
                )
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise InputValidationError(f"Layer {layer} has non-finite parameters")
            w.setflags(write=False)
            b.setflags(write=False)
            weights.append(w)
            biases.append(b)

        object.__setattr__(self, "layer_dims", dims)
        object.__setattr__(self, "weights", tuple(weights))
        object.__setattr__(self, "biases", tuple(biases))

    @property
    def n_inputs(self) -> int:
        return self.layer_dims[0]

    @property
    def n_outputs(self) -> int:
        return self.layer_dims[-1]

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def with_parameters(
        self, weights: Sequence[np.ndarray], biases: Sequence[np.ndarray]
    ) -> "MlpModel":
        return replace(self, weights=tuple(weights), biases=tuple(biases))

    def with_stats(self, stats: Optional[FeatureStats]) -> "MlpModel":
        return replace(self, feature_stats=stats)


@dataclass(frozen=True)
class Gradients:
    """Loss gradients, shaped like the model's parameters."""

    weights: Tuple[np.ndarray, ...]
    biases: Tuple[np.ndarray, ...]


def _check_dims(dims: Sequence[int]) -> None:
    if len(dims) < 2:
        raise ContractError(f"Need at least input and output dims, got {list(dims)}")
    if any(d < 1 for d in dims):
        raise ContractError(f"Layer dims must be >= 1, got {list(dims)}")


def init_mlp(
    layer_dims: Sequence[int], seed: int, feature_stats: Optional[FeatureStats] = None
) -> MlpModel:
    """Glorot-uniform weights and zero biases from a seeded xoshiro256** stream.

    Weights are drawn layer by layer in row-major order from
    ``uniform(-sqrt(6 / (fan_in + fan_out)), +sqrt(6 / (fan_in + fan_out)))``.
    """
    dims = tuple(int(d) for d in layer_dims)
    _check_dims(dims)
    rng = Xoshiro256StarStar(seed)

    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        values = rng.uniform_array(-bound, bound, fan_in * fan_out)
        weights.append(values.reshape(fan_out, fan_in))
        biases.append(np.zeros(fan_out))
    return MlpModel(dims, tuple(weights), tuple(biases), feature_stats)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction."""
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


def _as_inputs(model: MlpModel, x) -> np.ndarray:
    inputs = np.asarray(x, dtype=np.float64)
    if inputs.ndim not in (1, 2) or inputs.shape[-1] != model.n_inputs:
        raise ContractError(
            f"Expected inputs of width {model.n_inputs}, got shape {inputs.shape}"
        )
    if not np.all(np.isfinite(inputs)):
        raise InputValidationError("Network input contains non-finite values")
    return inputs


def _activations(model: MlpModel, inputs: np.ndarray):
    """Pre-activations and activations of every layer."""
    pre, post = [], [inputs]
    for layer, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = post[-1] @ w.T + b
        pre.append(z)
        if layer < model.n_layers - 1:
            post.append(np.maximum(z, 0.0))
    return pre, post


def forward(model: MlpModel, x) -> np.ndarray:
    """Class probabilities for one input vector or a batch of rows."""
    inputs = _as_inputs(model, x)
    pre, _ = _activations(model, inputs)
    return softmax(pre[-1])


def predict_classes(model: MlpModel, x) -> np.ndarray:
    """Argmax class per row."""
    return np.argmax(forward(model, np.atleast_2d(x)), axis=1)


def _targets(model: MlpModel, y, batch_size: int) -> np.ndarray:
    labels = np.asarray(y)
    if labels.ndim == 2:
        if labels.shape != (batch_size, model.n_outputs):
            raise ContractError(
                f"One-hot targets must be {batch_size}x{model.n_outputs}, "
                f"got {labels.shape}"
            )
        return labels.astype(np.float64)

    labels = labels.reshape(-1).astype(np.int64)
    if labels.size != batch_size:
        raise ContractError(f"{labels.size} labels for {batch_size} inputs")
    bad = labels[(labels < 0) | (labels >= model.n_outputs)]
    if bad.size:
        raise ContractError(
            f"Labels {sorted(set(bad.tolist()))} outside [0, {model.n_outputs})"
        )
    onehot = np.zeros((batch_size, model.n_outputs))
    onehot[np.arange(batch_size), labels] = 1.0
    return onehot


def loss_and_gradients(model: MlpModel, x, y) -> Tuple[float, Gradients]:
    """Mean cross-entropy of a batch and its exact parameter gradients.

    Args:
        model: Network
        x: ``(B, n_inputs)`` inputs
        y: ``B`` integer labels or a ``(B, n_outputs)`` one-hot matrix

    Returns:
        Loss and gradients

    Raises:
        ContractError: If the batch is empty or a label is out of range
    """
    inputs = np.atleast_2d(_as_inputs(model, x))
    batch = inputs.shape[0]
    if batch == 0:
        raise ContractError("Batch is empty")
    targets = _targets(model, y, batch)

    pre, post = _activations(model, inputs)
    logits = pre[-1]
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    log_probs = shifted - np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))
    loss = float(-np.sum(targets * log_probs) / batch)

    delta = (np.exp(log_probs) - targets) / batch
    grad_w = [None] * model.n_layers
    grad_b = [None] * model.n_layers
    for layer in range(model.n_layers - 1, -1, -1):
        grad_w[layer] = delta.T @ post[layer]
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ model.weights[layer]) * (pre[layer - 1] > 0)

    return loss, Gradients(tuple(grad_w), tuple(grad_b))


def sgd_step(model: MlpModel, gradients: Gradients, learning_rate: float) -> MlpModel:
    """Plain gradient descent update, returning a new model."""
    if learning_rate <= 0:
        raise ContractError(f"learning_rate must be positive, got {learning_rate}")
    weights = [w - learning_rate * g for w, g in zip(model.weights, gradients.weights)]
    biases = [b - learning_rate * g for b, g in zip(model.biases, gradients.biases)]
    return model.with_parameters(weights, biases)
