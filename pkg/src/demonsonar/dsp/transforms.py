"""Discrete Fourier transforms."""

import numpy as np

from ..exceptions import ContractError, InputValidationError

# Complex bins, same length as the transformed signal
ComplexSpectrum = np.ndarray


def _as_finite(signal, dtype=np.complex128) -> np.ndarray:
    values = np.asarray(signal, dtype=dtype)
    if not np.all(np.isfinite(values)):
        raise InputValidationError("Transform input contains non-finite values")
    return values


def is_power_of_two(n: int) -> bool:
    """True for 1, 2, 4, 8, ..."""
    return n >= 1 and (n & (n - 1)) == 0


def dft_naive(signal) -> ComplexSpectrum:
    """Direct O(N^2) evaluation of ``X[k] = sum_n x[n] exp(-2j pi k n / N)``."""
    x = _as_finite(signal).reshape(-1)
    n = x.size
    if n == 0:
        raise ContractError("DFT input must contain at least one sample")

    k = np.arange(n)
    # Reduce k*n modulo N before scaling so large products keep full precision
    phase = (np.outer(k, k) % n) * (-2.0 * np.pi / n)
    return np.exp(1j * phase) @ x


def _bit_reversal(n: int) -> np.ndarray:
    levels = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for bit in range(levels):
        rev |= ((idx >> bit) & 1) << (levels - 1 - bit)
    return rev


def fft_frames(frames: np.ndarray) -> np.ndarray:
    """Iterative radix-2 FFT along the last axis of a 1-D or 2-D array."""
    x = np.asarray(frames, dtype=np.complex128)
    n = x.shape[-1]
    if not is_power_of_two(n):
        raise ContractError(f"FFT length must be a power of two, got {n}")

    out = np.ascontiguousarray(x[..., _bit_reversal(n)])
    lead = out.shape[:-1]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(*lead, n // size, size)
        even = blocks[..., :half].copy()
        odd = blocks[..., half:] * twiddle
        blocks[..., :half] = even + odd
        blocks[..., half:] = even - odd
        size *= 2
    return out


def fft(signal) -> ComplexSpectrum:
    """Radix-2 FFT of a power-of-two length sequence (callers zero-pad)."""
    x = _as_finite(signal).reshape(-1)
    return fft_frames(x)
