"""Random inputs shared by the property tests."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from higgsdt.quiver import DimVector
from higgsdt.ring import LaurentPoly, PochFraction
from higgsdt.series import BigradedSeries

small_ints = st.integers(min_value=-4, max_value=4)

laurent = st.dictionaries(st.integers(-5, 5), small_ints, max_size=5).map(LaurentPoly)

rational_laurent = st.dictionaries(
    st.integers(-4, 4),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    max_size=4,
).map(LaurentPoly)

dens = st.lists(st.integers(1, 3), max_size=3)

fractions_ = st.builds(PochFraction, laurent, dens)

dimvecs = st.dictionaries(st.integers(-3, 4), st.integers(0, 3), max_size=4).map(DimVector)


def random_laurent(rng: random.Random, terms: int = 3, span: int = 3) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.randint(-3, 3) for _ in range(terms)})


def random_fraction(rng: random.Random) -> PochFraction:
    den = [rng.randint(1, 3) for _ in range(rng.randint(0, 2))]
    num = random_laurent(rng)
    if rng.random() < 0.2:
        num = num.scale(Fraction(1, rng.randint(2, 3)))
    return PochFraction(num, den)


def random_series(rng: random.Random, box=(3, 3), grades: int = 4, constant=1) -> BigradedSeries:
    """Series on ``box`` with at most ``grades`` random coefficients of rank >= 1."""
    rmax, dmax = box
    coeffs = {}
    for _ in range(grades):
        g = (rng.randint(1, rmax), rng.randint(0, dmax))
        coeffs[g] = random_fraction(rng)
    if constant:
        coeffs[(0, 0)] = constant
    return BigradedSeries(box, coeffs)
