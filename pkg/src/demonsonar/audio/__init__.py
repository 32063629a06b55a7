"""Audio ingestion and emission."""

from .buffer import SampleBuffer
from .wav import encode_wav, read_wav, wav_duration, write_wav

__all__ = [
    "SampleBuffer",
    "encode_wav",
    "read_wav",
    "wav_duration",
    "write_wav",
]
