"""Error hierarchy shared by every demonsonar module."""


class DemonSonarError(Exception):
    """Base class for all demonsonar errors."""


class ContractError(DemonSonarError, ValueError):
    """A precondition of an operation was violated."""


class InputValidationError(ContractError):
    """Input data contains values an operation cannot accept (NaN, inf)."""


class AudioFormatError(DemonSonarError):
    """A WAV file could not be parsed."""

    def __init__(self, message: str, chunk: str = ""):
        self.chunk = chunk
        prefix = f"[{chunk}] " if chunk else ""
        super().__init__(f"{prefix}{message}")


class UnsupportedFormatError(AudioFormatError):
    """The WAV codec tag or sample width is not supported."""


class EmptyAudioError(AudioFormatError):
    """The WAV data chunk holds no samples."""


class ModelFileError(ContractError):
    """A model file is structurally invalid."""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        prefix = f"{field}: " if field else ""
        super().__init__(f"{prefix}{message}")


class ModelParseError(ModelFileError):
    """A model file is not a JSON document."""


class ArtifactIOError(DemonSonarError, OSError):
    """An output artifact could not be written (or an input read)."""

    def __init__(self, path, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {reason}")
