"""DEMON envelope spectrum and DEMON-gram."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from ..audio import SampleBuffer
from ..config import DemonConfig
from ..dsp import (
    FilterKind,
    WindowKind,
    decimate,
    design_fir,
    filter_apply,
    square_law_envelope,
    welch_spectrum,
)
from ..exceptions import ContractError


@dataclass(frozen=True)
class DemonSpectrum:
    """Peak-normalized envelope line spectrum.

    ``magnitudes[0]`` is always 0 and the largest bin is 1 unless the whole
    spectrum is zero. ``max_line_hz`` is the ceiling of the analysis band
    used by feature extraction; ``None`` means the whole spectrum.
    """

    magnitudes: np.ndarray
    bin_hz: float
    source_duration_s: float
    max_line_hz: Optional[float] = None
    n_frames: int = 1

    def __post_init__(self):
        values = np.array(self.magnitudes, dtype=np.float64).reshape(-1)
        if values.size < 2:
            raise ContractError("A DEMON spectrum needs at least two bins")
        if self.bin_hz <= 0:
            raise ContractError(f"bin_hz must be positive, got {self.bin_hz}")
        values.setflags(write=False)
        object.__setattr__(self, "magnitudes", values)

    @property
    def n_bins(self) -> int:
        return int(self.magnitudes.size)

    @property
    def frequencies_hz(self) -> np.ndarray:
        return np.arange(self.n_bins) * self.bin_hz

    @property
    def analysis_stop(self) -> int:
        """Last bin index inside the analysis band (bins 1..stop are analyzed)."""
        last = self.n_bins - 1
        if self.max_line_hz is None:
            return last
        return max(1, min(last, int(np.floor(self.max_line_hz / self.bin_hz + 1e-9))))

    @property
    def analysis_bins(self) -> np.ndarray:
        """Magnitudes of the non-DC bins up to ``max_line_hz``."""
        return self.magnitudes[1 : self.analysis_stop + 1]


@dataclass(frozen=True)
class DemonGram:
    """DEMON spectra of consecutive time slices, one row per slice."""

    rows: np.ndarray
    slice_duration_s: float
    bin_hz: float

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise ContractError("A DEMON-gram needs at least one row")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_bins(self) -> int:
        return int(self.rows.shape[1])


def minimum_samples(config: DemonConfig, sample_rate_hz: float) -> int:
    """Shortest input that yields one full envelope frame."""
    factor = config.decimation_factor(sample_rate_hz)
    decimation_taps = 16 * factor + 1 if factor > 1 else 1
    return max(
        config.carrier_taps,
        decimation_taps,
        (config.frame_len - 1) * factor + 1,
    )


def demon_spectrum(
    buffer: SampleBuffer, config: Optional[DemonConfig] = None
) -> DemonSpectrum:
    """Compute the DEMON line spectrum of a recording.

    Bandpass to the carrier band, square-law demodulate, decimate to the
    envelope rate, remove the mean, Welch-average with a Hann window, zero
    the DC bin and normalize the peak to 1.

    Args:
        buffer: Mono recording
        config: Pipeline parameters, defaults when omitted

    Returns:
        Normalized DEMON spectrum

    Raises:
        ContractError: If the input is too short or the configuration does
            not fit the input sample rate
    """
    config = config or DemonConfig()
    buffer.require_analyzable()
    fs = buffer.sample_rate_hz
    lo_hz, hi_hz = config.carrier_band(fs)
    factor = config.decimation_factor(fs)
    envelope_rate = fs / factor
    if config.max_line_hz > envelope_rate / 2:
        raise ContractError(
            f"max_line_hz {config.max_line_hz} exceeds the envelope Nyquist "
            f"{envelope_rate / 2} Hz at input rate {fs} Hz"
        )

    needed = minimum_samples(config, fs)
    if len(buffer) < needed:
        raise ContractError(
            f"Input of {buffer.duration_s:.3f} s is too short: DEMON analysis "
            f"needs at least {needed / fs:.3f} s ({needed} samples at {fs:g} Hz)"
        )

    carrier = design_fir(FilterKind.BANDPASS, lo_hz, hi_hz, fs, config.carrier_taps)
    envelope = square_law_envelope(filter_apply(carrier, buffer.samples))
    envelope, envelope_rate = decimate(envelope, fs, factor)
    envelope = envelope - envelope.mean()

    power = welch_spectrum(
        envelope,
        envelope_rate,
        config.frame_len,
        config.overlap_frac,
        WindowKind.HANN,
    )
    magnitudes = np.array(power.magnitudes)
    magnitudes[0] = 0.0
    peak = magnitudes.max()
    if peak > 0:
        magnitudes /= peak

    logger.debug(
        f"DEMON: {buffer.duration_s:.2f} s, band [{lo_hz:g}, {hi_hz:g}] Hz, "
        f"decimation {factor}, {power.n_frames} frames, bin {power.bin_hz:.4f} Hz"
    )
    return DemonSpectrum(
        magnitudes=magnitudes,
        bin_hz=power.bin_hz,
        source_duration_s=buffer.duration_s,
        max_line_hz=config.max_line_hz,
        n_frames=power.n_frames,
    )


def demon_gram(
    buffer: SampleBuffer, config: Optional[DemonConfig] = None, slice_s: float = 10.0
) -> DemonGram:
    """DEMON spectra over consecutive non-overlapping slices.

    A trailing partial slice is discarded.

    Raises:
        ContractError: If ``slice_s`` is shorter than one envelope frame or
            the buffer is shorter than one slice
    """
    config = config or DemonConfig()
    fs = buffer.sample_rate_hz
    frame_s = config.frame_len * config.decimation_factor(fs) / fs
    if slice_s < frame_s:
        raise ContractError(
            f"Slice of {slice_s} s is shorter than one envelope frame ({frame_s:.3f} s)"
        )

    slice_len = int(round(slice_s * fs))
    n_rows = len(buffer) // slice_len
    if n_rows < 1:
        raise ContractError(
            f"Buffer of {buffer.duration_s:.3f} s is shorter than one "
            f"{slice_s} s slice"
        )

    spectra = [
        demon_spectrum(buffer.segment(i * slice_len, (i + 1) * slice_len), config)
        for i in range(n_rows)
    ]
    logger.debug(f"DEMON-gram: {n_rows} slices of {slice_s} s")
    return DemonGram(
        rows=np.vstack([s.magnitudes for s in spectra]),
        slice_duration_s=slice_len / fs,
        bin_hz=spectra[0].bin_hz,
    )
