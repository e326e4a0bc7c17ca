"""Exception hierarchy shared by all modules.

The CLI maps each class onto a distinct exit status.
"""


class TensorBoundsError(Exception):
    """Base class for every error raised by this package."""


class InputError(TensorBoundsError, ValueError):
    """Malformed input: parse failures, dimension mismatches, bad vectors."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(TensorBoundsError):
    """Well-formed input that violates an operation's hypotheses
    (reducible tensor, nonzero diagonal, isolated vertex, ...)."""


class ResourceError(PreconditionError):
    """Materializing a tensor would exceed the configured entry cap."""


class ConvergenceError(TensorBoundsError):
    """The power iteration did not close its bracket within ``max_iter``."""

    def __init__(self, message, bracket, iterations):
        super().__init__(message)
        self.bracket = bracket
        self.iterations = iterations
