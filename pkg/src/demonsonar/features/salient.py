"""Five-dimensional salient feature vector."""

import math
from dataclasses import astuple, dataclass
from typing import Optional, Sequence

import numpy as np

from ..config import FeatureConfig
from ..demon import DemonSpectrum
from ..exceptions import InputValidationError
from .comb import band_bins, estimate_blade_count, estimate_shaft_frequency

FEATURE_NAMES = (
    "blade_hz",
    "shaft_hz",
    "avg_strength",
    "max_shaft_hz",
    "max_blade_hz",
)
N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class SalientFeatures:
    """Line features of one recording.

    A shaft or blade rate of 0 means no line was found.
    """

    blade_freq_hz: float
    shaft_freq_hz: float
    avg_strength: float
    max_shaft_freq_hz: float
    max_blade_freq_hz: float

    def to_vector(self) -> np.ndarray:
        return np.array(astuple(self), dtype=np.float64)

    @classmethod
    def from_vector(cls, values: Sequence[float]) -> "SalientFeatures":
        vector = np.asarray(values, dtype=np.float64).reshape(-1)
        if vector.size != N_FEATURES:
            raise InputValidationError(
                f"Expected {N_FEATURES} feature values, got {vector.size}"
            )
        if not np.all(np.isfinite(vector)):
            raise InputValidationError("Feature vector contains non-finite values")
        return cls(*(float(v) for v in vector))

    @property
    def blade_count(self) -> Optional[int]:
        """Blade count implied by the two rates, ``None`` without a detection."""
        if self.shaft_freq_hz <= 0 or self.blade_freq_hz <= 0:
            return None
        return int(round(self.blade_freq_hz / self.shaft_freq_hz))


def _argmax_frequency(spectrum: DemonSpectrum, bins: range) -> float:
    if len(bins) == 0:
        return 0.0
    values = spectrum.magnitudes[bins.start : bins.stop]
    best = int(np.argmax(values))
    if values[best] <= 0:
        return 0.0
    return (bins.start + best) * spectrum.bin_hz


def extract_salient_features(
    spectrum: DemonSpectrum, config: Optional[FeatureConfig] = None
) -> SalientFeatures:
    """Reduce a DEMON spectrum to its five salient features.

    ``max_shaft_freq_hz`` is the strongest bin of the shaft search band and
    ``max_blade_freq_hz`` the strongest bin above it, up to the analysis
    ceiling.
    """
    config = config or FeatureConfig()
    analysis = spectrum.analysis_bins
    avg_strength = float(analysis.mean()) if analysis.size else 0.0

    ceiling = spectrum.analysis_stop * spectrum.bin_hz
    shaft_max = min(config.shaft_max_hz, ceiling)
    shaft_hz = blade_hz = 0.0
    if config.shaft_min_hz < shaft_max:
        shaft_hz, _ = estimate_shaft_frequency(
            spectrum, config.shaft_min_hz, shaft_max, config.n_harmonics
        )
    if shaft_hz > 0:
        count = estimate_blade_count(
            spectrum, shaft_hz, config.blade_min, config.blade_max
        )
        blade_hz = count * shaft_hz

    shaft_band = band_bins(spectrum, config.shaft_min_hz, config.shaft_max_hz)
    blade_start = math.floor(config.shaft_max_hz / spectrum.bin_hz + 1e-9) + 1
    blade_band = range(blade_start, spectrum.analysis_stop + 1)

    return SalientFeatures(
        blade_freq_hz=blade_hz,
        shaft_freq_hz=shaft_hz,
        avg_strength=avg_strength,
        max_shaft_freq_hz=_argmax_frequency(spectrum, shaft_band),
        max_blade_freq_hz=_argmax_frequency(spectrum, blade_band),
    )
