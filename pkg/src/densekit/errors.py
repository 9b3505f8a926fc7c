"""Exception types shared across the toolkit."""


class DensekitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DensekitError):
    """Malformed edge-list or CSV input; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractViolation(DensekitError):
    """An operation was called outside its documented preconditions."""


class EmptySetError(DensekitError):
    """Density of the empty set is undefined; callers must pass non-empty sets."""


class NoEdgesError(DensekitError):
    """Solvers that maximize density require at least one edge."""


class RefusedError(DensekitError):
    """Instance exceeds the hard size limit of an exhaustive solver."""


class EmptyPredictionError(DensekitError):
    """A prediction file thresholded to the empty set; augmentation needs a seed set."""


class UnknownNodeError(DensekitError):
    """A node token does not exist in the graph's label map."""
