"""Exception hierarchy shared by the counting modules and the CLI."""


class AlmostPrimeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(AlmostPrimeError, ValueError):
    """An argument violates an operation's precondition."""


class OutOfRangeError(AlmostPrimeError, ValueError):
    """A value lies outside the range the current configuration supports."""


class ResourceLimitError(AlmostPrimeError):
    """A request would exceed the configured memory budget."""
