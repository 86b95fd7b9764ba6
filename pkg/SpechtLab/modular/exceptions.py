class SpechtError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidPartitionError(SpechtError, ValueError):
    pass


class SingularPartitionError(SpechtError):
    """A p-regular partition was required."""


class ResourceGuardError(SpechtError):
    pass


class DimensionMismatchError(SpechtError, ValueError):
    pass


class RegionError(SpechtError):
    """Raised outside the fundamental alcove regime (n >= p, or lambda not in C0)."""


class NotPrimeError(SpechtError, ValueError):
    pass


class CacheFormatError(SpechtError):
    pass
