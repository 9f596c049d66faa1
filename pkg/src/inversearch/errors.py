"""Exception types shared across the package."""


class InversearchError(Exception):
    """Base class for all package-specific errors."""


class InputFormatError(InversearchError):
    """A price input file is malformed or violates a data invariant."""


class CalendarError(InversearchError):
    """No usable trading calendar could be built from the inputs."""


class DegenerateSliceError(InversearchError):
    """A slice training set is too small to train a tree on."""


class BuildError(InversearchError):
    """The end-to-end build cannot proceed (empty inputs, no usable slices)."""


class StoreError(InversearchError):
    """Problem reading or writing a classification store."""


class StoreCorruptError(StoreError):
    """Store files fail checksum or internal consistency checks."""


class UnknownSymbolError(InversearchError):
    """Queried symbol is not part of the store's instrument universe."""


class UnknownNodeError(InversearchError):
    """Requested (slice, node) pair does not exist in the store."""
