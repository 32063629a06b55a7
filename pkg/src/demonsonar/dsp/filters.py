"""Linear-phase FIR design, application and decimation."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..exceptions import ContractError, InputValidationError
from .windows import hann

MIN_TAPS = 11
SYMMETRY_TOLERANCE = 1e-12


class FilterKind(str, Enum):
    """Filter response shapes."""

    LOWPASS = "lowpass"
    BANDPASS = "bandpass"


@dataclass(frozen=True)
class FirFilter:
    """Odd-length symmetric FIR filter.

    ``f_lo_hz`` is ignored for lowpass filters.
    """

    taps: np.ndarray
    kind: FilterKind
    f_hi_hz: float
    sample_rate_hz: float
    f_lo_hz: Optional[float] = None

    def __post_init__(self):
        taps = np.array(self.taps, dtype=np.float64).reshape(-1)
        if taps.size % 2 == 0:
            raise ContractError(f"FIR length must be odd, got {taps.size}")
        if not np.all(np.isfinite(taps)):
            raise InputValidationError("FIR taps contain non-finite values")
        if np.max(np.abs(taps - taps[::-1]), initial=0.0) > SYMMETRY_TOLERANCE:
            raise ContractError("FIR taps must be symmetric (linear phase)")
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "kind", FilterKind(self.kind))

    def __len__(self) -> int:
        return int(self.taps.size)

    @property
    def group_delay(self) -> int:
        """Delay in samples, ``(len - 1) / 2``."""
        return (self.taps.size - 1) // 2

    def response(self, freq_hz: float) -> complex:
        """Complex frequency response at ``freq_hz``."""
        n = np.arange(self.taps.size)
        omega = 2.0 * np.pi * freq_hz / self.sample_rate_hz
        return complex(np.sum(self.taps * np.exp(-1j * omega * n)))


def _ideal_lowpass(cutoff_hz: float, sample_rate_hz: float, n_taps: int) -> np.ndarray:
    centered = np.arange(n_taps) - (n_taps - 1) / 2
    fc = cutoff_hz / sample_rate_hz
    return 2.0 * fc * np.sinc(2.0 * fc * centered)


def _validate_design(
    kind: FilterKind,
    f_lo_hz: Optional[float],
    f_hi_hz: float,
    sample_rate_hz: float,
    n_taps: int,
) -> None:
    if n_taps < MIN_TAPS or n_taps % 2 == 0:
        raise ContractError(f"n_taps must be odd and >= {MIN_TAPS}, got {n_taps}")
    if sample_rate_hz <= 0:
        raise ContractError(f"sample_rate_hz must be positive, got {sample_rate_hz}")
    nyquist = sample_rate_hz / 2
    if kind is FilterKind.LOWPASS:
        if not (0 < f_hi_hz < nyquist):
            raise ContractError(
                f"Lowpass cutoff {f_hi_hz} Hz must lie in (0, {nyquist}) Hz"
            )
    elif f_lo_hz is None or not (0 < f_lo_hz < f_hi_hz < nyquist):
        raise ContractError(
            f"Bandpass edges [{f_lo_hz}, {f_hi_hz}] Hz must satisfy "
            f"0 < lo < hi < {nyquist} Hz"
        )


def design_fir(
    kind: FilterKind,
    f_lo_hz: Optional[float],
    f_hi_hz: float,
    sample_rate_hz: float,
    n_taps: int,
) -> FirFilter:
    """Design a Hann-windowed sinc FIR filter.

    Args:
        kind: Lowpass or bandpass
        f_lo_hz: Lower band edge (bandpass only)
        f_hi_hz: Upper band edge, or the cutoff of a lowpass
        sample_rate_hz: Rate the filter will run at
        n_taps: Odd filter length, at least 11

    Returns:
        Filter with unit DC gain (lowpass) or unit gain at the band centre
        (bandpass)

    Raises:
        ContractError: If the edges or the length are invalid
    """
    kind = FilterKind(kind)
    _validate_design(kind, f_lo_hz, f_hi_hz, sample_rate_hz, n_taps)

    taps = _ideal_lowpass(f_hi_hz, sample_rate_hz, n_taps)
    if kind is FilterKind.BANDPASS:
        taps = taps - _ideal_lowpass(f_lo_hz, sample_rate_hz, n_taps)
    taps = taps * hann(n_taps)
    taps = 0.5 * (taps + taps[::-1])

    if kind is FilterKind.LOWPASS:
        taps = taps / np.sum(taps)
        return FirFilter(taps, kind, f_hi_hz, sample_rate_hz)

    centre = FirFilter(taps, kind, f_hi_hz, sample_rate_hz, f_lo_hz).response(
        0.5 * (f_lo_hz + f_hi_hz)
    )
    return FirFilter(taps / abs(centre), kind, f_hi_hz, sample_rate_hz, f_lo_hz)


def filter_apply(fir: FirFilter, signal) -> np.ndarray:
    """Filter ``signal`` and compensate the group delay.

    The output has the input's length; samples beyond either edge are taken
    as zero.
    """
    samples = np.asarray(signal, dtype=np.float64).reshape(-1)
    if samples.size < len(fir):
        raise ContractError(
            f"Signal of {samples.size} samples is shorter than the "
            f"{len(fir)}-tap filter"
        )
    full = np.convolve(samples, fir.taps)
    delay = fir.group_delay
    return full[delay : delay + samples.size]


def decimation_filter(
    sample_rate_hz: float, factor: int, n_taps: Optional[int] = None
) -> FirFilter:
    """Anti-alias lowpass for an integer decimation.

    Defaults to ``16 * factor + 1`` taps with a cutoff at 0.45 of the output
    rate.
    """
    taps = n_taps if n_taps is not None else 16 * factor + 1
    cutoff = 0.45 * sample_rate_hz / factor
    return design_fir(FilterKind.LOWPASS, None, cutoff, sample_rate_hz, taps)


def decimate(
    signal, sample_rate_hz: float, factor: int, n_taps: Optional[int] = None
) -> Tuple[np.ndarray, float]:
    """Lowpass filter and keep every ``factor``-th sample.

    Only the retained outputs are computed; they equal
    ``filter_apply(h, signal)[::factor]``.

    Returns:
        The decimated samples and the new sample rate
    """
    if int(factor) != factor or factor < 1:
        raise ContractError(
            f"Decimation factor must be a positive integer, got {factor}"
        )
    factor = int(factor)
    samples = np.asarray(signal, dtype=np.float64).reshape(-1)
    if factor == 1:
        return samples.copy(), float(sample_rate_hz)

    fir = decimation_filter(sample_rate_hz, factor, n_taps)
    n_taps_used = len(fir)
    if samples.size < n_taps_used:
        raise ContractError(
            f"Signal of {samples.size} samples is shorter than the "
            f"{n_taps_used}-tap decimation filter"
        )

    padded = np.pad(samples, (n_taps_used - 1, n_taps_used - 1))
    n_out = -(-samples.size // factor)
    windows = sliding_window_view(padded, n_taps_used)[fir.group_delay :: factor]
    decimated = windows[:n_out] @ fir.taps[::-1]
    return decimated, sample_rate_hz / factor
