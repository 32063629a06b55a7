"""Signal processing primitives for DEMON analysis."""

from .envelope import square_law_envelope
from .filters import (
    FilterKind,
    FirFilter,
    decimate,
    decimation_filter,
    design_fir,
    filter_apply,
)
from .spectrum import PowerSpectrum, welch_spectrum
from .transforms import ComplexSpectrum, dft_naive, fft, is_power_of_two
from .windows import WindowKind, apply_window, hann, window

__all__ = [
    "ComplexSpectrum",
    "FilterKind",
    "FirFilter",
    "PowerSpectrum",
    "WindowKind",
    "apply_window",
    "decimate",
    "decimation_filter",
    "design_fir",
    "dft_naive",
    "fft",
    "filter_apply",
    "hann",
    "is_power_of_two",
    "square_law_envelope",
    "welch_spectrum",
    "window",
]
