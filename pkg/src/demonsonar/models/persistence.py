"""Versioned JSON model files."""

import json
import math
from pathlib import Path
from typing import List, Optional, Union

from loguru import logger
from pydantic import BaseModel, ValidationError

from ..exceptions import ArtifactIOError, ContractError, ModelFileError, ModelParseError
from ..features import FeatureStats
from .cascade import CascadeModel
from .mlp import MlpModel

MODEL_FORMAT_VERSION = 1


class FeatureStatsSchema(BaseModel):
    mean: List[float]
    std: List[float]


class NetworkSchema(BaseModel):
    layer_dims: List[int]
    weights: List[List[List[float]]]
    biases: List[List[float]]


class ModelFileSchema(BaseModel):
    """Top-level layout of a model file."""

    version: int
    refine_category: Optional[int] = None
    feature_stats: FeatureStatsSchema
    coarse: NetworkSchema
    fine: Optional[NetworkSchema] = None


def _network_to_dict(net: MlpModel) -> dict:
    return {
        "layer_dims": list(net.layer_dims),
        "weights": [w.tolist() for w in net.weights],
        "biases": [b.tolist() for b in net.biases],
    }


def model_to_dict(cascade: CascadeModel) -> dict:
    stats = cascade.feature_stats
    return {
        "version": MODEL_FORMAT_VERSION,
        "refine_category": cascade.refine_category,
        "feature_stats": {"mean": stats.mean.tolist(), "std": stats.std.tolist()},
        "coarse": _network_to_dict(cascade.coarse),
        "fine": None if cascade.fine is None else _network_to_dict(cascade.fine),
    }


def dumps_model(cascade: CascadeModel) -> str:
    """Serialize a cascade; floats use shortest round-trip representation."""
    return json.dumps(model_to_dict(cascade), indent=2, allow_nan=False) + "\n"


def save_model(cascade: CascadeModel, path: Union[str, Path]) -> Path:
    """Write a cascade model file.

    Raises:
        ArtifactIOError: If the file cannot be written
    """
    model_path = Path(path)
    try:
        model_path.write_text(dumps_model(cascade), encoding="utf-8")
    except OSError as e:
        raise ArtifactIOError(
            model_path, f"cannot write model: {e.strerror or e}"
        ) from e
    logger.info(f"Model saved to {model_path}")
    return model_path


def _check_finite(values, field: str) -> None:
    for i, value in enumerate(values):
        if isinstance(value, list):
            _check_finite(value, f"{field}[{i}]")
        elif not math.isfinite(value):
            raise ModelFileError(f"non-finite value {value}", field=f"{field}[{i}]")


def _network_from_schema(
    schema: NetworkSchema, name: str, stats: FeatureStats
) -> MlpModel:
    dims = schema.layer_dims
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise ModelFileError(f"invalid layer dims {dims}", field=f"{name}.layer_dims")
    n_layers = len(dims) - 1
    if len(schema.weights) != n_layers:
        raise ModelFileError(
            f"expected {n_layers} weight matrices, found {len(schema.weights)}",
            field=f"{name}.weights",
        )
    if len(schema.biases) != n_layers:
        raise ModelFileError(
            f"expected {n_layers} bias vectors, found {len(schema.biases)}",
            field=f"{name}.biases",
        )

    for layer in range(n_layers):
        rows, cols = dims[layer + 1], dims[layer]
        matrix = schema.weights[layer]
        field = f"{name}.weights[{layer}]"
        if len(matrix) != rows or any(len(row) != cols for row in matrix):
            found = f"{len(matrix)}x{len(matrix[0]) if matrix else 0}"
            raise ModelFileError(
                f"layer {layer} must be {rows}x{cols}, found {found}", field=field
            )
        _check_finite(matrix, field)
        bias_field = f"{name}.biases[{layer}]"
        if len(schema.biases[layer]) != rows:
            raise ModelFileError(
                f"layer {layer} needs {rows} biases, found {len(schema.biases[layer])}",
                field=bias_field,
            )
        _check_finite(schema.biases[layer], bias_field)

    if dims[0] != stats.mean.size:
        raise ModelFileError(
            f"input width {dims[0]} does not match {stats.mean.size} feature stats",
            field=f"{name}.layer_dims",
        )
    return MlpModel(tuple(dims), tuple(schema.weights), tuple(schema.biases), stats)


def model_from_text(text: str) -> CascadeModel:
    """Parse and validate the contents of a model file.

    Raises:
        ModelParseError: If the text is not JSON or lacks required fields
        ModelFileError: If the version, dimensions or values are invalid
    """
    if not text.strip():
        raise ModelParseError("model file is empty")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelParseError(f"invalid JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(raw, dict):
        raise ModelParseError("model file must hold a JSON object")

    version = raw.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFileError(
            f"unsupported version {version!r}, expected {MODEL_FORMAT_VERSION}",
            field="version",
        )

    try:
        schema = ModelFileSchema.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ModelParseError(first["msg"], field=field) from e

    _check_finite(schema.feature_stats.mean, "feature_stats.mean")
    _check_finite(schema.feature_stats.std, "feature_stats.std")
    try:
        stats = FeatureStats(schema.feature_stats.mean, schema.feature_stats.std)
    except ContractError as e:
        raise ModelFileError(str(e), field="feature_stats") from e

    coarse = _network_from_schema(schema.coarse, "coarse", stats)
    fine = None
    if schema.fine is not None:
        fine = _network_from_schema(schema.fine, "fine", stats)
    try:
        return CascadeModel(
            coarse=coarse, fine=fine, refine_category=schema.refine_category
        )
    except ContractError as e:
        raise ModelFileError(str(e), field="refine_category") from e


def load_model(path: Union[str, Path]) -> CascadeModel:
    """Read and validate a cascade model file."""
    model_path = Path(path)
    cascade = model_from_text(model_path.read_text(encoding="utf-8"))
    logger.debug(f"Model loaded from {model_path}")
    return cascade
