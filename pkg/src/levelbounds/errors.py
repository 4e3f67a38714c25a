"""Exception types shared across the package."""


class UsageError(ValueError):
    """An operation was invoked with arguments outside its contract."""


class UnsupportedInputError(UsageError):
    """The input is valid mathematics but outside the supported fragment."""


class InternalInconsistencyError(RuntimeError):
    """A certified lower bound exceeded a certified upper bound.

    This must never happen; it indicates a bug in the engine, so it is
    reported loudly instead of being folded into a normal result.
    """
