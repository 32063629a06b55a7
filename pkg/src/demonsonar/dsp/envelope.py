"""Envelope detection."""

import numpy as np


def square_law_envelope(signal) -> np.ndarray:
    """Square-law detector: ``y[n] = x[n] ** 2``."""
    samples = np.asarray(signal, dtype=np.float64)
    return samples * samples
