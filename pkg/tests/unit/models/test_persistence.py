"""Tests for model files."""

import json
from pathlib import Path

import numpy as np
import pytest

from demonsonar.exceptions import ArtifactIOError, ModelFileError, ModelParseError
from demonsonar.features import FeatureStats
from demonsonar.models import (
    MODEL_FORMAT_VERSION,
    CascadeModel,
    dumps_model,
    init_mlp,
    load_model,
    save_model,
)
from demonsonar.models.persistence import model_from_text, model_to_dict


@pytest.fixture
def cascade() -> CascadeModel:
    stats = FeatureStats([1.0, 2.0, 0.1, 3.0, 0.0], [0.5, 1.5, 0.01, 2.0, 0.0])
    coarse = init_mlp((5, 20, 5), seed=0, feature_stats=stats)
    fine = init_mlp((5, 20, 10), seed=1, feature_stats=stats)
    return CascadeModel(coarse, fine, 1)


def _corrupt(cascade: CascadeModel, edit) -> str:
    data = model_to_dict(cascade)
    edit(data)
    return json.dumps(data)


class TestSaveLoad:
    """Test cases for saving and loading model files."""

    def test_round_trip_is_exact(self, temp_dir, cascade):
        """Test every parameter comes back bit for bit."""
        # Arrange
        path = Path(temp_dir) / "model.json"

        # Act
        save_model(cascade, path)
        loaded = load_model(path)

        # Assert
        assert loaded.refine_category == 1
        pairs = [(cascade.coarse, loaded.coarse), (cascade.fine, loaded.fine)]
        for original, restored in pairs:
            assert restored.layer_dims == original.layer_dims
            expected = original.weights + original.biases
            for a, b in zip(expected, restored.weights + restored.biases):
                np.testing.assert_array_equal(a, b)
        stds = (loaded.feature_stats.std, cascade.feature_stats.std)
        np.testing.assert_array_equal(*stds)
        assert dumps_model(loaded) == dumps_model(cascade)

    def test_layout(self, cascade):
        data = json.loads(dumps_model(cascade))

        assert data["version"] == MODEL_FORMAT_VERSION
        assert set(data) == {
            "version",
            "refine_category",
            "feature_stats",
            "coarse",
            "fine",
        }
        assert data["coarse"]["layer_dims"] == [5, 20, 5]
        assert len(data["fine"]["weights"][1]) == 10

    def test_without_fine_network(self, cascade):
        coarse_only = CascadeModel(cascade.coarse, None, None)

        loaded = model_from_text(dumps_model(coarse_only))

        assert loaded.fine is None and loaded.refine_category is None

    def test_unwritable_path(self, temp_dir, cascade):
        with pytest.raises(ArtifactIOError):
            save_model(cascade, Path(temp_dir) / "missing" / "model.json")

    def test_missing_file(self, temp_dir):
        with pytest.raises(OSError):
            load_model(Path(temp_dir) / "absent.json")


class TestCorruptModelFiles:
    """Test cases for rejecting damaged model files."""

    def test_empty_file(self):
        with pytest.raises(ModelParseError, match="empty"):
            model_from_text("  \n")

    def test_not_json(self):
        with pytest.raises(ModelParseError, match="invalid JSON"):
            model_from_text("{not json")

    def test_wrong_version(self, cascade):
        text = _corrupt(cascade, lambda d: d.update(version=2))

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "version"

    def test_missing_section(self, cascade):
        text = _corrupt(cascade, lambda d: d.pop("coarse"))

        with pytest.raises(ModelParseError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "coarse"

    def test_weight_shape_names_layer(self, cascade):
        """Test a truncated weight matrix names its field."""
        text = _corrupt(cascade, lambda d: d["fine"]["weights"][1].pop())

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "fine.weights[1]"
        assert "10x20" in str(excinfo.value)

    def test_non_finite_weight(self, cascade):
        def poison(data):
            data["coarse"]["weights"][0][2][3] = float("nan")

        text = _corrupt(cascade, poison)

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "coarse.weights[0][2][3]"

    def test_bias_length(self, cascade):
        text = _corrupt(cascade, lambda d: d["coarse"]["biases"][0].append(0.0))

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "coarse.biases[0]"

    def test_refine_without_fine_network(self, cascade):
        text = _corrupt(cascade, lambda d: d.update(fine=None))

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(text)

        assert excinfo.value.field == "refine_category"

    def test_input_width_mismatch(self, cascade):
        def narrow(data):
            data["feature_stats"]["mean"] = data["feature_stats"]["mean"][:4]
            data["feature_stats"]["std"] = data["feature_stats"]["std"][:4]

        with pytest.raises(ModelFileError) as excinfo:
            model_from_text(_corrupt(cascade, narrow))

        assert excinfo.value.field == "feature_stats"
