"""Exception types for the training pipeline."""


class TrainerError(Exception):
    """Base class for all trainer errors."""


class FormatError(TrainerError):
    """Malformed feature CSV; carries the offending file and line when known."""

    def __init__(self, message, path=None, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class SingleClassError(TrainerError):
    """Training rows all carry the same label; a classifier fit would be vacuous."""
