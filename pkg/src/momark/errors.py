"""Exception hierarchy.

Configuration problems map to CLI exit code 1, everything raised while a
benchmark is executing maps to exit code 2.
"""


class MomarkError(Exception):
    """Base class for all harness errors."""

    exit_code = 2


class ConfigurationError(MomarkError):
    exit_code = 1


class NotFoundError(ConfigurationError, LookupError):
    """Unknown problem or solver name."""


class DimensionError(MomarkError, ValueError):
    """Vectors of mismatched or unsupported length."""


class UnsupportedDimensionError(DimensionError):
    pass


class DomainError(MomarkError, ValueError):
    """Decision vector outside the problem box, or of the wrong length."""


class DegenerateFrameError(MomarkError, ValueError):
    """Normalization frame with ideal == nadir in a coordinate that is actually used."""


class ProtocolError(MomarkError):
    """Out-of-order evaluations or a malformed ask-tell exchange."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
