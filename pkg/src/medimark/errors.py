"""Exception types shared across the package."""


class MedimarkError(Exception):
    """Base class for all errors raised by medimark."""


class DimensionMismatch(MedimarkError, ValueError):
    """Two operands (or an operand and a requested size) disagree in shape."""


class DegenerateInput(MedimarkError, ValueError):
    """A statistic is undefined for the input, e.g. zero variance."""


class RegionOutOfBounds(MedimarkError, ValueError):
    """A tamper region does not fit inside the image."""


class SizeError(MedimarkError, ValueError):
    """A key or cipher block has the wrong byte length."""
