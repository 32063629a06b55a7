"""RIFF/WAVE reader and writer."""

import struct
from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np
from loguru import logger

from ..exceptions import (
    ArtifactIOError,
    AudioFormatError,
    EmptyAudioError,
    InputValidationError,
    UnsupportedFormatError,
)
from .buffer import SampleBuffer

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IEEE_FLOAT = 0x0003
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

PCM_WIDTHS = (8, 16, 24, 32)
WRITE_SCALE = 32767


def _parse_chunks(data: bytes) -> Dict[str, bytes]:
    """Split a RIFF/WAVE byte string into its top-level chunks."""
    if len(data) < 12:
        raise AudioFormatError("File too short for a RIFF header", chunk="RIFF")
    riff_id, _, wave_id = struct.unpack("<4sI4s", data[:12])
    if riff_id != b"RIFF":
        raise AudioFormatError(f"Expected 'RIFF' tag, found {riff_id!r}", chunk="RIFF")
    if wave_id != b"WAVE":
        raise AudioFormatError(f"Expected 'WAVE' form, found {wave_id!r}", chunk="RIFF")

    chunks: Dict[str, bytes] = {}
    offset = 12
    while offset + 8 <= len(data):
        chunk_id, size = struct.unpack("<4sI", data[offset : offset + 8])
        name = chunk_id.decode("latin-1")
        body = data[offset + 8 : offset + 8 + size]
        if len(body) < size:
            if name == "data":
                # Truncated recordings keep their whole frames
                logger.warning(f"data chunk truncated: {len(body)} of {size} bytes")
            else:
                raise AudioFormatError(
                    f"Chunk declares {size} bytes but only {len(body)} remain",
                    chunk=name,
                )
        chunks.setdefault(name, body)
        offset += 8 + size + (size % 2)
    return chunks


def _parse_format(fmt: bytes) -> Tuple[int, int, int, int]:
    """Return (format tag, channels, sample rate, bits per sample)."""
    if len(fmt) < 16:
        raise AudioFormatError(f"fmt chunk is {len(fmt)} bytes, need 16", chunk="fmt ")
    tag, channels, rate, _, block_align, bits = struct.unpack("<HHIIHH", fmt[:16])
    if tag == WAVE_FORMAT_EXTENSIBLE:
        if len(fmt) < 26:
            raise AudioFormatError(
                "Extensible fmt chunk lacks sub-format", chunk="fmt "
            )
        (tag,) = struct.unpack("<H", fmt[24:26])
    if channels < 1:
        raise AudioFormatError("Channel count is zero", chunk="fmt ")
    if rate < 1:
        raise AudioFormatError("Sample rate is zero", chunk="fmt ")
    if bits == 0:
        raise AudioFormatError("Bits per sample is zero", chunk="fmt ")
    if bits % 8 != 0 or block_align != channels * bits // 8:
        raise AudioFormatError(
            f"Inconsistent block align {block_align} for {channels} x {bits} bits",
            chunk="fmt ",
        )
    return tag, channels, rate, bits


def _decode_frames(raw: bytes, tag: int, channels: int, bits: int) -> np.ndarray:
    """Decode interleaved frames into a (frames, channels) float64 array."""
    width = bits // 8
    n_frames = len(raw) // (width * channels)
    raw = raw[: n_frames * width * channels]

    if tag == WAVE_FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise UnsupportedFormatError(
                f"Only 32-bit float is supported, got {bits}-bit", chunk="fmt "
            )
        values = np.frombuffer(raw, dtype="<f4").astype(np.float64)
    elif tag == WAVE_FORMAT_PCM:
        if bits not in PCM_WIDTHS:
            raise UnsupportedFormatError(
                f"Unsupported PCM width {bits} bits", chunk="fmt "
            )
        if bits == 8:
            unsigned = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
            values = (unsigned - 128.0) / 128.0
        elif bits == 24:
            triplets = (
                np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
            )
            ints = triplets[:, 0] | (triplets[:, 1] << 8) | (triplets[:, 2] << 16)
            ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
            values = ints.astype(np.float64) / float(1 << 23)
        else:
            dtype = "<i2" if bits == 16 else "<i4"
            values = np.frombuffer(raw, dtype=dtype).astype(np.float64)
            values /= float(1 << (bits - 1))
    else:
        raise UnsupportedFormatError(f"Unsupported codec tag 0x{tag:04X}", chunk="fmt ")

    return values.reshape(n_frames, channels)


def read_wav(path: Union[str, Path]) -> SampleBuffer:
    """Read a WAV file as a mono buffer, averaging its channels.

    Args:
        path: WAV file to read

    Returns:
        Mono buffer with samples scaled to [-1, 1]

    Raises:
        AudioFormatError: If the header or a chunk is malformed
        UnsupportedFormatError: If the codec is not PCM or 32-bit float
        EmptyAudioError: If the data chunk holds no samples
    """
    wav_path = Path(path)
    data = wav_path.read_bytes()
    chunks = _parse_chunks(data)

    if "fmt " not in chunks:
        raise AudioFormatError("Missing fmt chunk", chunk="fmt ")
    if "data" not in chunks:
        raise AudioFormatError("Missing data chunk", chunk="data")

    tag, channels, rate, bits = _parse_format(chunks["fmt "])
    frames = _decode_frames(chunks["data"], tag, channels, bits)
    if frames.shape[0] == 0:
        raise EmptyAudioError("Data chunk contains no samples", chunk="data")

    logger.debug(
        f"Read {wav_path.name}: {frames.shape[0]} frames x {channels} ch "
        f"@ {rate} Hz, {bits}-bit"
    )
    return SampleBuffer(frames.mean(axis=1), float(rate))


def encode_wav(buffer: SampleBuffer) -> bytes:
    """Encode a buffer as a canonical 16-bit PCM mono WAV byte string."""
    samples = buffer.samples
    if not np.all(np.isfinite(samples)):
        raise InputValidationError("Cannot write non-finite samples")

    quantized = np.rint(np.clip(samples, -1.0, 1.0) * WRITE_SCALE).astype("<i2")
    payload = quantized.tobytes()
    rate = int(round(buffer.sample_rate_hz))
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        WAVE_FORMAT_PCM,
        1,
        rate,
        rate * 2,
        2,
        16,
        b"data",
        len(payload),
    )
    return header + payload


def write_wav(buffer: SampleBuffer, path: Union[str, Path]) -> None:
    """Write a buffer as 16-bit PCM mono WAV.

    Samples are clamped to [-1, 1] and quantized as ``round(x * 32767)``.

    Raises:
        InputValidationError: If any sample is not finite
        ArtifactIOError: If the file cannot be written
    """
    content = encode_wav(buffer)
    wav_path = Path(path)
    try:
        wav_path.write_bytes(content)
    except OSError as e:
        raise ArtifactIOError(wav_path, f"cannot write WAV: {e.strerror or e}") from e


def wav_duration(path: Union[str, Path]) -> float:
    """Duration in seconds from the header and data size, without decoding."""
    chunks = _parse_chunks(Path(path).read_bytes())
    if "fmt " not in chunks or "data" not in chunks:
        raise AudioFormatError("Missing fmt or data chunk", chunk="fmt ")
    _, channels, rate, bits = _parse_format(chunks["fmt "])
    return (len(chunks["data"]) // (channels * bits // 8)) / rate
