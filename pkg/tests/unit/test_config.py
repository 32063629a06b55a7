"""Tests for configuration module."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from demonsonar.config import (
    AppConfig,
    CascadeConfig,
    DemonConfig,
    FeatureConfig,
    TrainConfig,
    load_config,
    read_config_file,
    resolve_seed,
)
from demonsonar.exceptions import ContractError


class TestDemonConfig:
    """Test DEMON pipeline configuration."""

    def test_default_values(self):
        """Test default configuration values."""
        config = DemonConfig()
        assert config.carrier_taps == 129
        assert config.envelope_rate_hz == 200.0
        assert config.frame_len == 1024
        assert config.overlap_frac == 0.5
        assert config.max_line_hz == 100.0

    def test_carrier_band_defaults_follow_rate(self):
        """Test unset carrier edges resolve to 0.1 and 0.45 of the rate."""
        assert DemonConfig().carrier_band(16000.0) == pytest.approx((1600.0, 7200.0))

    def test_carrier_band_above_nyquist(self):
        config = DemonConfig(carrier_lo_hz=500.0, carrier_hi_hz=5000.0)

        with pytest.raises(ContractError, match="Nyquist"):
            config.carrier_band(8000.0)

    def test_decimation_factor(self):
        assert DemonConfig().decimation_factor(16000.0) == 80
        assert DemonConfig().decimation_factor(100.0) == 1

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"frame_len": 1000},
            {"overlap_frac": 1.0},
            {"carrier_taps": 128},
            {"carrier_taps": 9},
            {"max_line_hz": 150.0},
            {"carrier_lo_hz": 0.0},
            {"carrier_lo_hz": 900.0, "carrier_hi_hz": 800.0},
        ],
    )
    def test_invalid_values(self, kwargs):
        """Test invalid pipeline parameters are rejected."""
        with pytest.raises(ValidationError):
            DemonConfig(**kwargs)


class TestFeatureConfig:
    """Test salient feature configuration."""

    def test_default_values(self):
        config = FeatureConfig()
        assert (config.shaft_min_hz, config.shaft_max_hz) == (1.0, 15.0)
        assert (config.blade_min, config.blade_max) == (2, 7)
        assert config.n_harmonics == 5

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_harmonics": 2},
            {"shaft_min_hz": 15.0},
            {"blade_max": 8},
            {"blade_min": 5, "blade_max": 4},
            {"peak_threshold": 0.0},
        ],
    )
    def test_invalid_values(self, kwargs):
        with pytest.raises(ValidationError):
            FeatureConfig(**kwargs)


class TestCascadeConfig:
    """Test cascade and training configuration."""

    def test_default_values(self):
        config = CascadeConfig()
        assert config.coarse_classes == 5
        assert config.fine_classes == 10
        assert config.refine_category == 1
        assert config.split_ratio == 0.8
        assert config.train == TrainConfig()
        assert config.train.learning_rate == 0.05
        assert config.train.hidden_width == 20

    def test_refine_category_must_be_a_class(self):
        with pytest.raises(ValidationError, match="refine_category"):
            CascadeConfig(coarse_classes=3, refine_category=3)

    def test_coarse_only(self):
        assert CascadeConfig(refine_category=None).refine_category is None

    @pytest.mark.parametrize("ratio", [0.0, 1.0])
    def test_split_ratio_bounds(self, ratio):
        with pytest.raises(ValidationError):
            CascadeConfig(split_ratio=ratio)

    @pytest.mark.parametrize("field", ["epochs", "batch_size", "hidden_width"])
    def test_train_counts_positive(self, field):
        with pytest.raises(ValidationError):
            TrainConfig(**{field: 0})

    def test_validation_error_is_value_error(self):
        """Test CLI exit handling can treat config errors as ValueError."""
        with pytest.raises(ValueError):
            TrainConfig(learning_rate=-1.0)


class TestAppConfig:
    """Test application configuration."""

    def test_default_values(self):
        """Test default configuration values."""
        config = AppConfig()
        assert config.log_level == "INFO"
        assert config.seed is None

    def test_log_level_validation(self):
        """Test log level validation."""
        config = AppConfig(log_level="debug")
        assert config.log_level == "DEBUG"

        with pytest.raises(ValidationError):
            AppConfig(log_level="INVALID")

    @patch.dict(os.environ, {"DEMONSONAR_SEED": "7", "DEMONSONAR_LOG_LEVEL": "warning"})
    def test_environment_values(self):
        """Test DEMONSONAR_ variables feed the defaults."""
        config = AppConfig()
        assert config.seed == 7
        assert config.log_level == "WARNING"

    @patch.dict(os.environ, {"DEMONSONAR_SEED": "7"})
    def test_kwargs_override_environment(self):
        assert AppConfig(seed=3).seed == 3


class TestConfigFile:
    """Test key=value config files."""

    def test_keys_are_normalized(self, temp_dir):
        # Arrange
        path = Path(temp_dir) / "demon.conf"
        path.write_text("ENVELOPE-RATE=400\nepochs=50\n# comment\nseed=11\n")

        # Act
        values = read_config_file(path)

        # Assert
        assert values == {"envelope_rate": "400", "epochs": "50", "seed": "11"}

    def test_missing_file(self, temp_dir):
        with pytest.raises(FileNotFoundError):
            read_config_file(Path(temp_dir) / "absent.conf")

    def test_load_config(self, temp_dir):
        """Test configuration loading."""
        path = Path(temp_dir) / "demon.conf"
        path.write_text("frame_len=512\n")

        config = load_config(path)

        assert isinstance(config["app"], AppConfig)
        assert config["file"] == {"frame_len": "512"}

    def test_load_config_without_file(self):
        assert load_config()["file"] == {}


class TestResolveSeed:
    """Test seed precedence."""

    def test_default_is_zero(self):
        assert resolve_seed(None) == 0

    @patch.dict(os.environ, {"DEMONSONAR_SEED": "5"})
    def test_precedence(self):
        """Test flag beats file, file beats environment."""
        assert resolve_seed(None) == 5
        assert resolve_seed(None, {"seed": "9"}) == 9
        assert resolve_seed(2, {"seed": "9"}) == 2

    def test_empty_file_value_ignored(self):
        assert resolve_seed(None, {"seed": ""}, AppConfig(seed=4)) == 4
