"""DEMON analysis: envelope line spectra and their time stacks."""

from .pipeline import (
    DemonGram,
    DemonSpectrum,
    demon_gram,
    demon_spectrum,
    minimum_samples,
)
from .render import quantize_pixels, render_demon_gram, write_pgm, write_sidecar

__all__ = [
    "DemonGram",
    "DemonSpectrum",
    "demon_gram",
    "demon_spectrum",
    "minimum_samples",
    "quantize_pixels",
    "render_demon_gram",
    "write_pgm",
    "write_sidecar",
]
