"""Exception types shared across banachlab.

The CLI maps these onto exit codes: precondition violations exit 2,
search/conditioning failures exit 3.
"""


class BanachLabError(Exception):
    """Base class for all library errors."""


class PreconditionError(BanachLabError, ValueError):
    """An operation was called outside its documented domain."""


class ResidualError(PreconditionError):
    """A vector does not lie in the span it was claimed to lie in."""


class _Diagnosed(BanachLabError):
    """An error carrying keyword diagnostics shown in its message."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        items = sorted(self.diagnostics.items())
        extra = ", ".join(f"{k}={getattr(v, 'item', lambda: v)()!r}" for k, v in items)
        return f"{base} ({extra})"


class SearchExhaustedError(_Diagnosed):
    """A budgeted search finished without finding an admissible object."""


class ConditioningError(_Diagnosed):
    """A numerically constructed object failed its post-checks."""


class ConvergenceError(ConditioningError):
    """An iterative solver hit its iteration cap."""
