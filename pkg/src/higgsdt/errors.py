"""Exception types raised by the pipeline."""


class HiggsDTError(Exception):
    """Base class for all errors raised by :mod:`higgsdt`."""


class IntegralityViolation(HiggsDTError, ArithmeticError):
    """A fraction expected to be a Laurent polynomial with integer
    coefficients was not one."""


class ZeroRank(HiggsDTError, ValueError):
    pass


class BoxMismatch(HiggsDTError, ValueError):
    pass


class BadConstantTerm(HiggsDTError, ValueError):
    pass


class DimVectorParseError(HiggsDTError, ValueError):
    pass
