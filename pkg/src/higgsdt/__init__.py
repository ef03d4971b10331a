"""Exact motivic DT invariants of twisted Higgs bundles over P^1."""

from .errors import (
    BadConstantTerm,
    BoxMismatch,
    DimVectorParseError,
    HiggsDTError,
    IntegralityViolation,
    ZeroRank,
)
from .invariants import omega_L, omega_L_table, omega_Q
from .quiver import DimVector
from .ring import LaurentPoly, PochFraction

__version__ = "0.1.0"
