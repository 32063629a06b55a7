"""Propeller-modulated cavitation noise with known shaft and blade rates."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..audio import SampleBuffer
from ..config import DemonConfig
from ..dsp import FilterKind, design_fir, filter_apply
from ..exceptions import ContractError

CARRIER_TAPS = 129
PEAK_LEVEL = 0.9


@dataclass(frozen=True)
class VesselParams:
    """Ground truth of one synthetic recording.

    Carrier edges left as ``None`` follow the default DEMON carrier band for
    the sample rate.
    """

    shaft_hz: float
    blade_count: int
    mod_depth: float = 0.5
    shaft_line_frac: float = 0.5
    snr_db: float = 10.0
    carrier_lo_hz: Optional[float] = None
    carrier_hi_hz: Optional[float] = None
    duration_s: float = 10.0
    sample_rate_hz: float = 16000.0
    seed: int = 0

    def __post_init__(self):
        if self.shaft_hz <= 0:
            raise ContractError(f"shaft_hz must be positive, got {self.shaft_hz}")
        if not (2 <= self.blade_count <= 7):
            raise ContractError(
                f"blade_count must be in [2, 7], got {self.blade_count}"
            )
        if not (0.0 <= self.mod_depth <= 1.0 and 0.0 <= self.shaft_line_frac <= 1.0):
            raise ContractError("mod_depth and shaft_line_frac must lie in [0, 1]")
        if self.mod_depth * (self.shaft_line_frac + 1.0) > 1.0 + 1e-12:
            raise ContractError(
                f"mod_depth * (shaft_line_frac + 1) = "
                f"{self.mod_depth * (self.shaft_line_frac + 1.0):g} exceeds 1"
            )
        ceiling = DemonConfig().envelope_rate_hz / 2
        if self.blade_rate_hz >= ceiling:
            raise ContractError(
                f"Blade rate {self.blade_rate_hz:g} Hz must stay below {ceiling:g} Hz"
            )
        if self.n_samples < CARRIER_TAPS:
            raise ContractError(
                f"{self.duration_s} s at {self.sample_rate_hz} Hz is too short "
                f"to synthesize"
            )
        self.carrier_band()

    @property
    def blade_rate_hz(self) -> float:
        return self.blade_count * self.shaft_hz

    @property
    def n_samples(self) -> int:
        return int(round(self.duration_s * self.sample_rate_hz))

    def carrier_band(self) -> Tuple[float, float]:
        defaults = DemonConfig(
            carrier_lo_hz=self.carrier_lo_hz, carrier_hi_hz=self.carrier_hi_hz
        )
        return defaults.carrier_band(self.sample_rate_hz)


def modulation(params: VesselParams) -> np.ndarray:
    """Envelope ``1 + m (s cos(w t) + cos(B w t)) / (s + 1)``; never negative."""
    t = np.arange(params.n_samples) / params.sample_rate_hz
    phase = 2.0 * np.pi * params.shaft_hz * t
    lines = params.shaft_line_frac * np.cos(phase) + np.cos(params.blade_count * phase)
    return 1.0 + params.mod_depth * lines / (params.shaft_line_frac + 1.0)


def _unit_power(x: np.ndarray) -> np.ndarray:
    return x / np.sqrt(np.mean(x * x))


def synth_components(params: VesselParams) -> Tuple[np.ndarray, np.ndarray]:
    """Modulated carrier and scaled ambient noise, before mixing and normalization."""
    rng = np.random.default_rng(params.seed)
    raw_carrier = rng.standard_normal(params.n_samples)
    ambient = _unit_power(rng.standard_normal(params.n_samples))

    lo_hz, hi_hz = params.carrier_band()
    band = design_fir(
        FilterKind.BANDPASS, lo_hz, hi_hz, params.sample_rate_hz, CARRIER_TAPS
    )
    carrier = _unit_power(filter_apply(band, raw_carrier))

    signal = modulation(params) * carrier
    noise_gain = np.sqrt(np.mean(signal * signal) / 10.0 ** (params.snr_db / 10.0))
    return signal, noise_gain * ambient


def synth_vessel_signal(params: VesselParams) -> SampleBuffer:
    """Synthesize a recording peak-normalized to 0.9."""
    signal, noise = synth_components(params)
    mixed = signal + noise
    mixed *= PEAK_LEVEL / np.max(np.abs(mixed))
    return SampleBuffer(mixed, params.sample_rate_hz)
