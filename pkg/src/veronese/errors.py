"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration exceeds the configured face cap."""


class ConsistencyError(AssertionError):
    """Raised when a computed result contradicts a structural theorem.

    This always signals a bug in the engine, never bad user input.
    """
