"""Configuration management for demonsonar."""

import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .exceptions import ContractError

DEFAULT_SEED = 0


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


class DemonConfig(BaseModel):
    """DEMON pipeline parameters.

    Carrier band edges left as ``None`` resolve to 0.1 and 0.45 times the
    input sample rate (see :meth:`carrier_band`).
    """

    carrier_lo_hz: Optional[float] = None
    carrier_hi_hz: Optional[float] = None
    carrier_taps: int = 129
    envelope_rate_hz: float = 200.0
    frame_len: int = 1024
    overlap_frac: float = 0.5
    max_line_hz: float = 100.0

    @field_validator("frame_len")
    @classmethod
    def validate_frame_len(cls, v: int) -> int:
        """Envelope frames feed the radix-2 FFT."""
        if not _is_power_of_two(v):
            raise ValueError(f"frame_len must be a power of two, got {v}")
        return v

    @field_validator("overlap_frac")
    @classmethod
    def validate_overlap(cls, v: float) -> float:
        if not (0.0 <= v < 1.0):
            raise ValueError(f"overlap_frac must be in [0, 1), got {v}")
        return v

    @field_validator("carrier_taps")
    @classmethod
    def validate_taps(cls, v: int) -> int:
        if v < 11 or v % 2 == 0:
            raise ValueError(f"carrier_taps must be odd and >= 11, got {v}")
        return v

    @field_validator("envelope_rate_hz", "max_line_hz")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def validate_bands(self) -> "DemonConfig":
        """Check the band invariants that do not depend on the input rate."""
        if self.max_line_hz > self.envelope_rate_hz / 2:
            raise ValueError(
                f"max_line_hz ({self.max_line_hz}) exceeds envelope Nyquist "
                f"({self.envelope_rate_hz / 2})"
            )
        lo, hi = self.carrier_lo_hz, self.carrier_hi_hz
        if lo is not None and lo <= 0:
            raise ValueError(f"carrier_lo_hz must be positive, got {lo}")
        if lo is not None and hi is not None and lo >= hi:
            raise ValueError(f"carrier band [{lo}, {hi}] Hz is empty")
        return self

    def carrier_band(self, sample_rate_hz: float) -> Tuple[float, float]:
        """Resolve the carrier band against the input sample rate."""
        lo = (
            self.carrier_lo_hz
            if self.carrier_lo_hz is not None
            else 0.1 * sample_rate_hz
        )
        hi = (
            self.carrier_hi_hz
            if self.carrier_hi_hz is not None
            else 0.45 * sample_rate_hz
        )
        nyquist = sample_rate_hz / 2
        if not (0 < lo < hi < nyquist):
            raise ContractError(
                f"Carrier band [{lo}, {hi}] Hz must satisfy 0 < lo < hi < "
                f"Nyquist ({nyquist} Hz)"
            )
        return lo, hi

    def decimation_factor(self, sample_rate_hz: float) -> int:
        """Integer factor that brings the input rate to the envelope rate."""
        return max(1, int(round(sample_rate_hz / self.envelope_rate_hz)))


class FeatureConfig(BaseModel):
    """Salient feature extraction parameters."""

    shaft_min_hz: float = 1.0
    shaft_max_hz: float = 15.0
    n_harmonics: int = 5
    blade_min: int = 2
    blade_max: int = 7
    peak_threshold: float = 3.0

    @field_validator("n_harmonics")
    @classmethod
    def validate_harmonics(cls, v: int) -> int:
        if v < 3:
            raise ValueError(f"n_harmonics must be >= 3, got {v}")
        return v

    @field_validator("peak_threshold")
    @classmethod
    def validate_threshold(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"peak_threshold must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def validate_ranges(self) -> "FeatureConfig":
        if not (0 < self.shaft_min_hz < self.shaft_max_hz):
            raise ValueError(
                f"Shaft band [{self.shaft_min_hz}, {self.shaft_max_hz}] Hz is invalid"
            )
        if not (2 <= self.blade_min <= self.blade_max <= 7):
            raise ValueError(
                f"Blade range [{self.blade_min}, {self.blade_max}] must lie in [2, 7]"
            )
        return self


class TrainConfig(BaseModel):
    """Mini-batch gradient descent hyperparameters."""

    learning_rate: float = 0.05
    epochs: int = 500
    batch_size: int = 16
    seed: int = DEFAULT_SEED
    hidden_width: int = 20

    @field_validator("learning_rate")
    @classmethod
    def validate_learning_rate(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"learning_rate must be positive, got {v}")
        return v

    @field_validator("epochs", "batch_size", "hidden_width")
    @classmethod
    def validate_at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be >= 1, got {v}")
        return v


class CascadeConfig(BaseModel):
    """Two-stage cascade layout and its training protocol."""

    coarse_classes: int = 5
    fine_classes: int = 10
    refine_category: Optional[int] = 1
    split_ratio: float = 0.8
    train: TrainConfig = Field(default_factory=TrainConfig)

    @field_validator("split_ratio")
    @classmethod
    def validate_ratio(cls, v: float) -> float:
        if not (0.0 < v < 1.0):
            raise ValueError(f"split_ratio must be in (0, 1), got {v}")
        return v

    @model_validator(mode="after")
    def validate_refine(self) -> "CascadeConfig":
        if self.coarse_classes < 2 or self.fine_classes < 2:
            raise ValueError("class counts must be >= 2")
        if self.refine_category is not None and not (
            0 <= self.refine_category < self.coarse_classes
        ):
            raise ValueError(
                f"refine_category {self.refine_category} outside "
                f"[0, {self.coarse_classes})"
            )
        return self


class AppConfig(BaseModel):
    """Application configuration."""

    log_level: str = "INFO"
    seed: Optional[int] = None

    def __init__(self, **kwargs):
        # Load from environment variables with DEMONSONAR_ prefix
        env_data: Dict[str, Any] = {}
        for key in ["log_level", "seed"]:
            env_key = f"DEMONSONAR_{key.upper()}"
            if env_key in os.environ:
                env_data[key] = os.environ[env_key]

        # Override with any passed kwargs
        env_data.update(kwargs)
        super().__init__(**env_data)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        allowed_levels = ["TRACE", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in allowed_levels:
            raise ValueError(f"Log level must be one of {allowed_levels}")
        return v.upper()


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Parse a ``key=value`` config file; keys are normalized to snake case."""
    from dotenv import dotenv_values

    config_path = Path(path)
    if not config_path.is_file():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    values = dotenv_values(config_path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in values.items()
        if value is not None
    }


def load_config(config_file: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Load application configuration."""
    # Load .env file if it exists
    env_file = Path(".env")
    if env_file.exists():
        from dotenv import load_dotenv

        load_dotenv()

    file_values = read_config_file(config_file) if config_file else {}

    return {
        "app": AppConfig(),
        "file": file_values,
    }


def resolve_seed(
    flag_seed: Optional[int],
    file_values: Optional[Dict[str, str]] = None,
    app_config: Optional[AppConfig] = None,
) -> int:
    """Seed precedence: flag, then config file, then environment, then 0."""
    if flag_seed is not None:
        return int(flag_seed)
    if file_values and file_values.get("seed") not in (None, ""):
        return int(file_values["seed"])
    app = app_config or AppConfig()
    if app.seed is not None:
        return int(app.seed)
    return DEFAULT_SEED
