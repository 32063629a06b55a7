"""Pytest configuration and fixtures."""

import os
import struct
import tempfile
from typing import Callable, Dict, Generator

import numpy as np
import pandas as pd
import pytest

from demonsonar.audio import SampleBuffer
from demonsonar.config import DemonConfig
from demonsonar.demon import DemonSpectrum
from demonsonar.features import FEATURE_NAMES, build_feature_table
from demonsonar.synth import VesselParams, synth_vessel_signal

# Fast analysis setup: 4 kHz input, 200 Hz envelope, 256-point frames
FAST_RATE = 4000.0


@pytest.fixture
def temp_dir() -> Generator[str, None, None]:
    """Create temporary directory for tests."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield temp_dir


@pytest.fixture(autouse=True)
def clean_env():
    """Keep DEMONSONAR_* variables from leaking into tests."""
    names = [k for k in os.environ if k.startswith("DEMONSONAR_")]
    saved = {k: os.environ.pop(k) for k in names}
    yield
    for key in [k for k in os.environ if k.startswith("DEMONSONAR_")]:
        os.environ.pop(key)
    os.environ.update(saved)


@pytest.fixture
def fast_demon_config() -> DemonConfig:
    """DEMON parameters that keep test signals short."""
    return DemonConfig(frame_len=256)


@pytest.fixture
def make_vessel() -> Callable[..., SampleBuffer]:
    """Factory for synthetic vessel recordings."""

    def make(
        shaft_hz: float = 5.0,
        blade_count: int = 3,
        duration_s: float = 6.0,
        sample_rate_hz: float = FAST_RATE,
        seed: int = 0,
        **kwargs,
    ) -> SampleBuffer:
        params = VesselParams(
            shaft_hz=shaft_hz,
            blade_count=blade_count,
            duration_s=duration_s,
            sample_rate_hz=sample_rate_hz,
            seed=seed,
            **kwargs,
        )
        return synth_vessel_signal(params)

    return make


@pytest.fixture
def make_spectrum() -> Callable[..., DemonSpectrum]:
    """Factory for constructed DEMON spectra with lines at chosen bins."""

    def make(
        lines: Dict[int, float],
        n_bins: int = 129,
        bin_hz: float = 0.5,
        floor: float = 0.01,
        max_line_hz=None,
    ) -> DemonSpectrum:
        magnitudes = np.full(n_bins, floor)
        magnitudes[0] = 0.0
        for index, value in lines.items():
            magnitudes[index] = value
        return DemonSpectrum(
            magnitudes=magnitudes,
            bin_hz=bin_hz,
            source_duration_s=10.0,
            max_line_hz=max_line_hz,
        )

    return make


@pytest.fixture
def blob_table() -> pd.DataFrame:
    """Separable feature blobs: 5 coarse classes x 40, 10 fine types in class 1."""
    rng = np.random.default_rng(1234)
    rows = []
    for coarse in range(5):
        for i in range(40):
            fine = i % 10 if coarse == 1 else -1
            centre = np.zeros(len(FEATURE_NAMES))
            centre[0] = 10.0 * coarse
            centre[1] = 10.0 * fine if coarse == 1 else 0.0
            values = centre + rng.normal(0.0, 0.3, len(FEATURE_NAMES))
            row = {
                "path": f"c{coarse}_{i:04d}.wav",
                "label_coarse": coarse,
                "label_fine": fine,
            }
            row.update(zip(FEATURE_NAMES, values.tolist()))
            rows.append(row)
    return build_feature_table(rows)


def _wav_bytes(
    payload: bytes,
    tag: int = 1,
    channels: int = 1,
    rate: int = 8000,
    bits: int = 16,
    fmt_extra: bytes = b"",
) -> bytes:
    """Assemble a RIFF/WAVE byte string around a raw data payload."""
    block_align = channels * bits // 8
    fmt = struct.pack(
        "<HHIIHH", tag, channels, rate, rate * block_align, block_align, bits
    )
    fmt += fmt_extra
    body = b"WAVE"
    body += b"fmt " + struct.pack("<I", len(fmt)) + fmt
    body += b"data" + struct.pack("<I", len(payload)) + payload
    if len(payload) % 2:
        body += b"\x00"
    return b"RIFF" + struct.pack("<I", len(body)) + body


@pytest.fixture
def wav_bytes() -> Callable[..., bytes]:
    """Builder for hand-made WAV files."""
    return _wav_bytes
