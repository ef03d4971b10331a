"""Truncated generating series with :class:`~higgsdt.ring.PochFraction`
coefficients, and the plethystic calculus on them.

Two gradings are supported:

* :class:`BigradedSeries` -- grades ``(r, d)`` in the box
  ``0 <= r <= rmax, 0 <= d <= dmax``;
* :class:`DimGradedSeries` -- grades are dimension vectors bounded pointwise
  by a fixed ``bound``.

Every operation discards grades that leave the box.  Because grades only ever
add up, a coefficient inside the box never depends on anything outside it, so
all coefficients that survive truncation are exact.

Adams operations act on coefficients by ``v -> -(-v)^n``: the variable that
behaves as a line element in the lambda-ring is ``-v``, not ``v``.  With the
naive ``v -> v^n`` the invariants at non-coprime ``(r, d)`` stop being Laurent
polynomials; ``twisted=False`` is kept for comparison.

The classical ``log``/``exp`` are computed through the rank derivation
``D(z^g) = r(g) z^g``: from ``D A = A * D(log A)`` one solves for the
coefficients of ``log A`` grade by grade in increasing rank.  This gives the
same truncated series as the power sum ``sum (-1)^(k+1) (A-1)^k / k`` at a
fraction of the cost.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import BadConstantTerm, BoxMismatch
from .quiver import DimVector
from .ring import (
    LaurentPoly,
    PochFraction,
    frac_adams,
    frac_mul,
    frac_scale,
    frac_sum,
    mobius,
)

__all__ = [
    "BigradedSeries",
    "DimGradedSeries",
    "ser_mul",
    "ser_log",
    "ser_exp",
    "ser_adams",
    "pleth_log",
    "pleth_exp",
    "ray_restrict",
    "rays",
    "slope_factor",
]


def _as_frac(c) -> PochFraction:
    if isinstance(c, PochFraction):
        return c
    return PochFraction(c)


class _Series:
    """Shared machinery; subclasses fix the grading."""

    __slots__ = ("_coeffs",)

    # -- grading hooks ----------------------------------------------------

    def _box(self):
        raise NotImplementedError

    def _with(self, coeffs: dict) -> "_Series":
        raise NotImplementedError

    def _grades(self) -> Iterable[tuple]:
        """Every grade in the box."""
        raise NotImplementedError

    def _in_box(self, g: tuple) -> bool:
        raise NotImplementedError

    @staticmethod
    def _weight(g: tuple) -> int:
        raise NotImplementedError

    def _zero_grade(self) -> tuple:
        raise NotImplementedError

    @staticmethod
    def _add(g: tuple, h: tuple) -> tuple:
        return tuple(a + b for a, b in zip(g, h))

    @staticmethod
    def _sub(g: tuple, h: tuple) -> tuple | None:
        out = tuple(a - b for a, b in zip(g, h))
        return out if min(out, default=0) >= 0 else None

    def _key(self, grade) -> tuple:
        return tuple(grade)

    def _public(self, g: tuple):
        return g

    def max_weight(self) -> int:
        return max((self._weight(g) for g in self._grades()), default=0)

    # -- generic interface --------------------------------------------------

    def __getitem__(self, grade) -> PochFraction:
        return self._coeffs.get(self._key(grade), PochFraction.zero())

    coefficient = __getitem__

    def items(self) -> Iterator[tuple[object, PochFraction]]:
        for g in sorted(self._coeffs):
            yield self._public(g), self._coeffs[g]

    def support(self) -> list:
        return [self._public(g) for g in sorted(self._coeffs)]

    def __len__(self) -> int:
        return len(self._coeffs)

    def constant_term(self) -> PochFraction:
        return self._coeffs.get(self._zero_grade(), PochFraction.zero())

    def _check(self, other: "_Series"):
        if type(self) is not type(other) or self._box() != other._box():
            raise BoxMismatch(f"cannot combine series on {self._box()} and {other._box()}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Series):
            return NotImplemented
        if type(self) is not type(other) or self._box() != other._box():
            return False
        zero = PochFraction.zero()
        for g in set(self._coeffs) | set(other._coeffs):
            if self._coeffs.get(g, zero) != other._coeffs.get(g, zero):
                return False
        return True

    __hash__ = None

    def __add__(self, other: "_Series") -> "_Series":
        self._check(other)
        out = dict(self._coeffs)
        for g, c in other._coeffs.items():
            out[g] = out[g] + c if g in out else c
        return self._with(out)

    def __neg__(self) -> "_Series":
        return self._with({g: -c for g, c in self._coeffs.items()})

    def __sub__(self, other: "_Series") -> "_Series":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _Series):
            return ser_mul(self, other)
        return self.scale(other)

    def scale(self, c) -> "_Series":
        return self._with({g: frac_scale(f, c) for g, f in self._coeffs.items()})

    def one(self) -> "_Series":
        return self._with({self._zero_grade(): PochFraction.one()})

    def zero(self) -> "_Series":
        return self._with({})

    def __repr__(self) -> str:
        body = ", ".join(f"{self._public(g)}: {c}" for g, c in sorted(self._coeffs.items()))
        return f"{type(self).__name__}({self._box()}, {{{body}}})"


class BigradedSeries(_Series):
    """Series in ``z^r t^d`` truncated to ``r <= rmax``, ``d <= dmax``.

    >>> s = BigradedSeries((2, 2), {(0, 0): 1, (1, 1): 1})
    >>> (s * s)[2, 2]
    PochFraction(LaurentPoly({0: 1}), ())
    """

    __slots__ = ("rmax", "dmax")

    def __init__(self, box: tuple[int, int], coeffs: Mapping | None = None):
        rmax, dmax = box
        if rmax < 0 or dmax < 0:
            raise ValueError("box bounds must be nonnegative")
        self.rmax, self.dmax = int(rmax), int(dmax)
        self._coeffs = {}
        for (r, d), c in (coeffs or {}).items():
            c = _as_frac(c)
            if c and 0 <= r <= self.rmax and 0 <= d <= self.dmax:
                self._coeffs[(int(r), int(d))] = c

    @property
    def box(self) -> tuple[int, int]:
        return (self.rmax, self.dmax)

    def _box(self):
        return self.box

    def _with(self, coeffs: dict) -> "BigradedSeries":
        s = object.__new__(BigradedSeries)
        s.rmax, s.dmax = self.rmax, self.dmax
        s._coeffs = {g: c for g, c in coeffs.items() if c}
        return s

    def _grades(self):
        return product(range(self.rmax + 1), range(self.dmax + 1))

    def _in_box(self, g) -> bool:
        return g[0] <= self.rmax and g[1] <= self.dmax

    @staticmethod
    def _weight(g) -> int:
        return g[0]

    def _zero_grade(self):
        return (0, 0)

    def max_weight(self) -> int:
        return self.rmax

    def __getitem__(self, grade) -> PochFraction:
        return self._coeffs.get(tuple(grade), PochFraction.zero())

    coefficient = __getitem__


class DimGradedSeries(_Series):
    """Series in ``z^m`` for dimension vectors ``m <= bound`` pointwise."""

    __slots__ = ("bound", "_support")

    def __init__(self, bound: DimVector, coeffs: Mapping | None = None):
        self.bound = bound
        self._support = bound.support()
        self._coeffs = {}
        for m, c in (coeffs or {}).items():
            c = _as_frac(c)
            g = self._key(m)
            if c and g is not None and self._in_box(g):
                self._coeffs[g] = c

    def _key(self, m) -> tuple | None:
        if not isinstance(m, DimVector):
            m = DimVector(m)
        if any(i not in self._support for i in m):
            return None
        return tuple(m[i] for i in self._support)

    def __getitem__(self, m) -> PochFraction:
        g = self._key(m)
        if g is None:
            return PochFraction.zero()
        return self._coeffs.get(g, PochFraction.zero())

    coefficient = __getitem__

    def _public(self, g) -> DimVector:
        return DimVector(dict(zip(self._support, g)))

    def _box(self):
        return self.bound

    def _with(self, coeffs: dict) -> "DimGradedSeries":
        s = object.__new__(DimGradedSeries)
        s.bound, s._support = self.bound, self._support
        s._coeffs = {g: c for g, c in coeffs.items() if c}
        return s

    def _grades(self):
        return product(*(range(self.bound[i] + 1) for i in self._support))

    def _in_box(self, g) -> bool:
        return all(a <= self.bound[i] for a, i in zip(g, self._support))

    @staticmethod
    def _weight(g) -> int:
        return sum(g)

    def _zero_grade(self):
        return tuple(0 for _ in self._support)

    def max_weight(self) -> int:
        return self.bound.rank


# -- products, log, exp -------------------------------------------------------


def ser_mul(a: _Series, b: _Series) -> _Series:
    """Truncated Cauchy product."""
    a._check(b)
    acc: dict[tuple, list] = defaultdict(list)
    for g, x in a._coeffs.items():
        for h, y in b._coeffs.items():
            s = a._add(g, h)
            if a._in_box(s):
                acc[s].append(frac_mul(x, y))
    return a._with({s: frac_sum(terms) for s, terms in acc.items()})


def _require_constant(a: _Series, value: int):
    zero = a._zero_grade()
    if a._coeffs.get(zero, PochFraction.zero()) != value:
        raise BadConstantTerm(f"constant term must be {value}, got {a.constant_term()}")
    for g, c in a._coeffs.items():
        if g != zero and a._weight(g) == 0:
            raise BadConstantTerm(f"rank-zero grade {a._public(g)} must vanish")


def _by_weight(s: _Series) -> list[tuple]:
    return sorted((g for g in s._grades() if s._weight(g) > 0), key=lambda g: (s._weight(g), g))


def ser_log(a: _Series) -> _Series:
    """Classical logarithm of a series with constant term 1."""
    _require_constant(a, 1)
    zero = a._zero_grade()
    av = {g: c for g, c in a._coeffs.items() if g != zero}
    out: dict[tuple, PochFraction] = {}
    for g in _by_weight(a):
        w = a._weight(g)
        terms = []
        for h, b in out.items():
            k = a._sub(g, h)
            if k is not None and k in av:
                terms.append(frac_scale(frac_mul(b, av[k]), a._weight(h)))
        val = av.get(g, PochFraction.zero())
        if terms:
            val = frac_sum([val, frac_scale(frac_sum(terms), Fraction(-1, w))])
        if val:
            out[g] = val
    return a._with(out)


def ser_exp(f: _Series) -> _Series:
    """Classical exponential of a series with zero constant term."""
    _require_constant(f, 0)
    zero = f._zero_grade()
    out: dict[tuple, PochFraction] = {zero: PochFraction.one()}
    for g in _by_weight(f):
        terms = []
        for h, x in f._coeffs.items():
            k = f._sub(g, h)
            if k is not None and k in out:
                terms.append(frac_scale(frac_mul(x, out[k]), f._weight(h)))
        if terms:
            val = frac_scale(frac_sum(terms), Fraction(1, f._weight(g)))
            if val:
                out[g] = val
    return f._with(out)


def ser_adams(a: _Series, n: int, twisted: bool = True) -> _Series:
    """Adams operation: grade ``g -> n*g``; coefficients ``v -> -(-v)^n``
    (or ``v -> v^n`` with ``twisted=False``)."""
    if n < 1:
        raise ValueError("Adams operations need n >= 1")
    if n == 1:
        return a
    out = {}
    for g, c in a._coeffs.items():
        s = tuple(n * x for x in g)
        if a._in_box(s):
            out[s] = frac_adams(c, n, twisted)
    return a._with(out)


def pleth_log(a: _Series, twisted: bool = True) -> _Series:
    """Plethystic logarithm ``sum_n mu(n)/n * psi_n(log A)``."""
    la = ser_log(a)
    parts = []
    for n in range(1, a.max_weight() + 1):
        mu = mobius(n)
        if mu:
            parts.append(ser_adams(la, n, twisted).scale(Fraction(mu, n)))
    return _sum_series(a, parts)


def pleth_exp(f: _Series, twisted: bool = True) -> _Series:
    """Plethystic exponential ``exp(sum_n psi_n(F)/n)``."""
    _require_constant(f, 0)
    parts = [ser_adams(f, n, twisted).scale(Fraction(1, n)) for n in range(1, f.max_weight() + 1)]
    return ser_exp(_sum_series(f, parts))


def _sum_series(like: _Series, parts: list[_Series]) -> _Series:
    acc: dict[tuple, list] = defaultdict(list)
    for p in parts:
        for g, c in p._coeffs.items():
            acc[g].append(c)
    return like._with({g: frac_sum(cs) for g, cs in acc.items()})


# -- slope rays -----------------------------------------------------------------


def ray_restrict(f: BigradedSeries, theta) -> BigradedSeries:
    """Keep only the grades ``(r, d)`` with ``r > 0`` and ``d / r == theta``."""
    theta = Fraction(theta)
    return f._with({(r, d): c for (r, d), c in f._coeffs.items()
                    if r > 0 and Fraction(d, r) == theta})


def rays(box: tuple[int, int]) -> list[Fraction]:
    """All slopes ``d/r`` realised by grades of the box with ``r >= 1``."""
    rmax, dmax = box
    return sorted({Fraction(d, r) for r in range(1, rmax + 1) for d in range(dmax + 1)})


def slope_factor(a: BigradedSeries, theta) -> BigradedSeries:
    """The factor of ``A`` supported on the ray of slope ``theta``."""
    _require_constant(a, 1)
    return pleth_exp(ray_restrict(pleth_log(a), theta))
