"""Grayscale rendering of DEMON-grams."""

from pathlib import Path
from typing import Dict, Union

import numpy as np
from loguru import logger

from ..exceptions import ArtifactIOError, ContractError
from .pipeline import DemonGram

MAXVAL = 255


def quantize_pixels(values) -> np.ndarray:
    """Map [0, 1] intensities to 0..255 rounding half up."""
    clipped = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
    return np.floor(MAXVAL * clipped + 0.5).astype(np.uint8)


def write_pgm(pixels, path: Union[str, Path]) -> Path:
    """Write a 2-D uint8 array as a binary (P5) portable graymap."""
    image = np.asarray(pixels, dtype=np.uint8)
    if image.ndim != 2 or image.size == 0:
        raise ContractError(
            f"PGM image must be a non-empty 2-D array, got {image.shape}"
        )
    height, width = image.shape
    header = f"P5\n{width} {height}\n{MAXVAL}\n".encode("ascii")

    pgm_path = Path(path)
    try:
        pgm_path.write_bytes(header + image.tobytes())
    except OSError as e:
        raise ArtifactIOError(pgm_path, f"cannot write image: {e.strerror or e}") from e
    return pgm_path


def write_sidecar(values: Dict[str, object], path: Union[str, Path]) -> Path:
    """Write ``key=value`` metadata lines."""
    sidecar = Path(path)
    text = "".join(f"{key}={value}\n" for key, value in values.items())
    try:
        sidecar.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ArtifactIOError(
            sidecar, f"cannot write metadata: {e.strerror or e}"
        ) from e
    return sidecar


def render_demon_gram(gram: DemonGram, path: Union[str, Path]) -> Path:
    """Render a DEMON-gram as a PGM image plus a ``.txt`` sidecar.

    One image row per time slice, one column per frequency bin.

    Returns:
        Path of the written sidecar
    """
    image_path = Path(path)
    write_pgm(quantize_pixels(gram.rows), image_path)
    sidecar = write_sidecar(
        {
            "bin_hz": repr(float(gram.bin_hz)),
            "slice_duration_s": repr(float(gram.slice_duration_s)),
            "rows": gram.n_rows,
            "bins": gram.n_bins,
        },
        image_path.with_suffix(".txt"),
    )
    logger.info(f"DEMON-gram written to {image_path} ({gram.n_rows}x{gram.n_bins})")
    return sidecar
