"""Averaged power spectra."""

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..exceptions import ContractError, InputValidationError
from .transforms import fft_frames, is_power_of_two
from .windows import WindowKind, window


@dataclass(frozen=True)
class PowerSpectrum:
    """One-sided power spectrum, bins ``0..frame_len/2`` spaced ``bin_hz`` apart."""

    magnitudes: np.ndarray
    bin_hz: float
    n_frames: int = 1

    def __post_init__(self):
        values = np.array(self.magnitudes, dtype=np.float64).reshape(-1)
        values.setflags(write=False)
        object.__setattr__(self, "magnitudes", values)

    @property
    def n_bins(self) -> int:
        return int(self.magnitudes.size)

    @property
    def frequencies_hz(self) -> np.ndarray:
        return np.arange(self.n_bins) * self.bin_hz


def frame_hop(frame_len: int, overlap_frac: float) -> int:
    return max(1, int(round(frame_len * (1.0 - overlap_frac))))


def welch_spectrum(
    signal,
    sample_rate_hz: float,
    frame_len: int,
    overlap_frac: float = 0.5,
    window_kind: WindowKind = WindowKind.HANN,
) -> PowerSpectrum:
    """Average windowed periodograms over overlapping frames.

    Each frame contributes ``|FFT(w * x)|^2 / (frame_len * sum(w^2))``. Only
    frames that fit entirely inside the signal are used.

    Raises:
        ContractError: If ``frame_len`` is not a power of two, exceeds the
            signal, or the overlap is outside [0, 1)
    """
    samples = np.asarray(signal, dtype=np.float64).reshape(-1)
    if not is_power_of_two(frame_len):
        raise ContractError(f"frame_len must be a power of two, got {frame_len}")
    if frame_len > samples.size:
        raise ContractError(
            f"frame_len {frame_len} exceeds signal length {samples.size}"
        )
    if not (0.0 <= overlap_frac < 1.0):
        raise ContractError(f"overlap_frac must be in [0, 1), got {overlap_frac}")
    if not np.all(np.isfinite(samples)):
        raise InputValidationError("Spectrum input contains non-finite values")

    taper = window(window_kind, frame_len)
    hop = frame_hop(frame_len, overlap_frac)
    frames = sliding_window_view(samples, frame_len)[::hop]
    bins = fft_frames(frames * taper)[:, : frame_len // 2 + 1]
    power = (bins.real**2 + bins.imag**2) / (frame_len * np.sum(taper**2))

    return PowerSpectrum(
        magnitudes=power.mean(axis=0),
        bin_hz=sample_rate_hz / frame_len,
        n_frames=int(frames.shape[0]),
    )
