"""Analysis windows."""

from enum import Enum

import numpy as np

from ..exceptions import ContractError


class WindowKind(str, Enum):
    """Supported analysis windows."""

    RECTANGULAR = "rectangular"
    HANN = "hann"


def window(kind: WindowKind, n: int) -> np.ndarray:
    """Build an ``n``-point window.

    The Hann window is the symmetric form ``0.5 * (1 - cos(2 pi k / (n - 1)))``;
    a single-point Hann window is ``[1.0]``.
    """
    if n < 1:
        raise ContractError(f"Window length must be >= 1, got {n}")
    kind = WindowKind(kind)
    if kind is WindowKind.RECTANGULAR or n == 1:
        return np.ones(n)
    k = np.arange(n)
    return 0.5 * (1.0 - np.cos(2.0 * np.pi * k / (n - 1)))


def hann(n: int) -> np.ndarray:
    return window(WindowKind.HANN, n)


def apply_window(frame, kind: WindowKind = WindowKind.HANN) -> np.ndarray:
    """Multiply a frame by a window of matching length."""
    samples = np.asarray(frame, dtype=np.float64).reshape(-1)
    if samples.size == 0:
        raise ContractError("Cannot window an empty frame")
    return samples * window(kind, samples.size)
