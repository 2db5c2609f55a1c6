"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A caller-supplied parameter is outside the supported domain."""


class PreconditionError(ValueError):
    """An operation was invoked on data violating its stated precondition."""


class StructuralError(RuntimeError):
    """An internal consistency guarantee failed; indicates a bug, not bad input."""
