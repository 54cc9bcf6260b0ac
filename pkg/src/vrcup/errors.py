"""Exception types shared across the package."""


class VrcupError(Exception):
    """Base class for all package-specific errors."""


class InputError(VrcupError):
    """Malformed or invalid user input (files, matrices, parameters)."""


class ResourceLimitError(VrcupError):
    """A construction would exceed the configured resource guard."""


class InsufficientSkeletonError(VrcupError):
    """The complex lacks the skeleton needed for the requested degree."""


class InternalConsistencyError(VrcupError):
    """An invariant the implementation relies on was violated."""
