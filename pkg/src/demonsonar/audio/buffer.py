"""Sampled mono signal container."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ContractError, InputValidationError


@dataclass(frozen=True)
class SampleBuffer:
    """Mono PCM samples with their sample rate.

    The sample array is copied to float64 and marked read-only, so a buffer
    can be shared freely between threads.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        if not self.sample_rate_hz > 0:
            raise ContractError(
                f"sample_rate_hz must be positive, got {self.sample_rate_hz}"
            )
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        """Length of the buffer in seconds."""
        return self.samples.size / self.sample_rate_hz

    def require_analyzable(self) -> None:
        """Raise unless the buffer can enter the analysis pipeline."""
        if self.samples.size == 0:
            raise ContractError("Buffer is empty")
        if not np.all(np.isfinite(self.samples)):
            raise InputValidationError("Buffer contains non-finite samples")

    def segment(self, start: int, stop: int) -> "SampleBuffer":
        """Sub-buffer over sample indices ``[start, stop)``."""
        return SampleBuffer(self.samples[start:stop], self.sample_rate_hz)

    def scaled(self, gain: float) -> "SampleBuffer":
        """Copy of the buffer multiplied by ``gain``."""
        return SampleBuffer(self.samples * gain, self.sample_rate_hz)
