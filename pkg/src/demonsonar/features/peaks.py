"""Spectral line detection."""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..demon import DemonSpectrum
from ..exceptions import ContractError


@dataclass(frozen=True)
class Peak:
    """A detected DEMON line."""

    freq_hz: float
    magnitude: float
    bin_index: int


def analysis_median(spectrum: DemonSpectrum) -> float:
    """Median magnitude over the non-DC analysis bins."""
    bins = spectrum.analysis_bins
    return float(np.median(bins)) if bins.size else 0.0


def detect_peaks(spectrum: DemonSpectrum, k: float = 3.0) -> List[Peak]:
    """Find strict local maxima above ``k`` times the analysis median.

    Only bins ``1..analysis_stop`` are candidates. A bin at the very end of
    the spectrum is compared with its single neighbour.

    Args:
        spectrum: Normalized DEMON spectrum
        k: Threshold multiplier on the median magnitude

    Returns:
        Peaks sorted by frequency (possibly empty)
    """
    if k <= 0:
        raise ContractError(f"Peak threshold multiplier must be positive, got {k}")

    mags = spectrum.magnitudes
    stop = spectrum.analysis_stop
    threshold = k * analysis_median(spectrum)

    idx = np.arange(1, stop + 1)
    left = mags[idx - 1]
    right = np.where(
        idx + 1 < mags.size, mags[np.minimum(idx + 1, mags.size - 1)], -np.inf
    )
    centre = mags[idx]
    hits = idx[(centre > left) & (centre > right) & (centre > threshold) & (centre > 0)]

    return [
        Peak(
            freq_hz=float(i * spectrum.bin_hz),
            magnitude=float(mags[i]),
            bin_index=int(i),
        )
        for i in hits
    ]
