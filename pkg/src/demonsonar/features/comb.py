"""Harmonic-comb estimation of shaft rate and blade count."""

import math
from typing import Tuple

import numpy as np

from ..demon import DemonSpectrum
from ..exceptions import ContractError
from .peaks import analysis_median

# Relative slack when mapping band edges to bin indices
_EDGE_EPS = 1e-9


def _window_max(mags: np.ndarray, centre: int, stop: int) -> float:
    lo = max(1, centre - 1)
    hi = min(stop, centre + 1)
    return float(mags[lo : hi + 1].max()) if lo <= hi else 0.0


def _on_bin_sum(spectrum: DemonSpectrum, f0_bin: int, n_harmonics: int) -> float:
    stop = spectrum.analysis_stop
    hits = [k * f0_bin for k in range(1, n_harmonics + 1) if k * f0_bin <= stop]
    return float(spectrum.magnitudes[hits].sum()) if hits else 0.0


def band_bins(spectrum: DemonSpectrum, f_lo_hz: float, f_hi_hz: float) -> range:
    """Grid bins inside ``[f_lo_hz, f_hi_hz]``, clipped to the analysis band."""
    first = max(1, math.ceil(f_lo_hz / spectrum.bin_hz - _EDGE_EPS))
    last = min(
        spectrum.analysis_stop, math.floor(f_hi_hz / spectrum.bin_hz + _EDGE_EPS)
    )
    return range(first, last + 1)


def comb_score(spectrum: DemonSpectrum, f0_bin: int, n_harmonics: int) -> float:
    """Average of the ±1-bin maxima at the first harmonics of ``f0_bin``.

    Harmonics beyond the analysis band are skipped.
    """
    stop = spectrum.analysis_stop
    values = [
        _window_max(spectrum.magnitudes, k * f0_bin, stop)
        for k in range(1, n_harmonics + 1)
        if k * f0_bin <= stop
    ]
    return float(np.mean(values)) if values else 0.0


def estimate_shaft_frequency(
    spectrum: DemonSpectrum,
    f_min_hz: float,
    f_max_hz: float,
    n_harmonics: int = 5,
) -> Tuple[float, float]:
    """Search the shaft band for the fundamental with the best comb score.

    Equal scores go to the candidate whose exact harmonic bins carry the
    most energy, then to the lower frequency.

    Args:
        spectrum: Normalized DEMON spectrum
        f_min_hz: Lowest candidate fundamental
        f_max_hz: Highest candidate fundamental
        n_harmonics: Harmonics per comb (at least 3)

    Returns:
        ``(shaft_freq_hz, score)``, or ``(0.0, 0.0)`` when the best score is
        below twice the median magnitude

    Raises:
        ContractError: If the band is empty or exceeds the analysis band
    """
    ceiling = spectrum.analysis_stop * spectrum.bin_hz
    if spectrum.max_line_hz is not None:
        ceiling = max(ceiling, spectrum.max_line_hz)
    if not (0 < f_min_hz < f_max_hz <= ceiling + _EDGE_EPS):
        raise ContractError(
            f"Shaft band [{f_min_hz}, {f_max_hz}] Hz must satisfy "
            f"0 < min < max <= {ceiling:g} Hz"
        )
    if n_harmonics < 3:
        raise ContractError(f"n_harmonics must be >= 3, got {n_harmonics}")

    candidates = band_bins(spectrum, f_min_hz, f_max_hz)
    if len(candidates) == 0:
        return 0.0, 0.0

    scores = np.array([comb_score(spectrum, i, n_harmonics) for i in candidates])
    best_score = float(scores.max())
    tied = np.flatnonzero(scores == best_score)
    on_bin = [_on_bin_sum(spectrum, candidates[i], n_harmonics) for i in tied]
    best = int(tied[int(np.argmax(on_bin))])
    if best_score <= 0 or best_score < 2.0 * analysis_median(spectrum):
        return 0.0, 0.0
    return candidates[best] * spectrum.bin_hz, best_score


def estimate_blade_count(
    spectrum: DemonSpectrum,
    shaft_freq_hz: float,
    b_min: int = 2,
    b_max: int = 7,
) -> int:
    """Pick the blade count whose blade-rate line is strongest.

    Candidates whose blade rate falls beyond the analysis band are skipped.
    Ties go to the smaller count; a winning line weaker than twice the
    median gives ``b_min``.

    Raises:
        ContractError: If no shaft line was detected or the range is invalid
    """
    if shaft_freq_hz <= 0:
        raise ContractError("Blade count needs a detected shaft frequency")
    if not (2 <= b_min <= b_max <= 7):
        raise ContractError(f"Blade range [{b_min}, {b_max}] must lie in [2, 7]")

    stop = spectrum.analysis_stop
    best_count, best_value = b_min, -1.0
    for count in range(b_min, b_max + 1):
        centre = int(round(count * shaft_freq_hz / spectrum.bin_hz))
        if centre > stop:
            break
        value = _window_max(spectrum.magnitudes, centre, stop)
        if value > best_value:
            best_count, best_value = count, value

    if best_value < 2.0 * analysis_median(spectrum) or best_value <= 0:
        return b_min
    return best_count
