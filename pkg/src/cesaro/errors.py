"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter is outside its documented range (alpha <= 1, s outside [0,1], ...)."""


class DomainError(ValueError):
    """A sequence was evaluated outside its index domain (n < 1, past end of a table)."""


class HorizonError(OverflowError):
    """A block boundary or index no longer fits the supported 64-bit range."""
