"""Exception types shared across the package.

The CLI maps these onto exit codes: edge-list problems exit 1, numerical
failures exit 2, enumeration guards exit 3.
"""


class EdgeListError(ValueError):
    """Malformed edge-list input; ``line`` is the offending 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConvergenceError(RuntimeError):
    """An eigensolve failed to converge or missed its accuracy contract."""


class EnumerationGuardError(RuntimeError):
    """A subset enumeration would exceed its configured budget."""
