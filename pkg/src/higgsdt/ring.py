"""Exact Laurent polynomials in ``v`` and Pochhammer-type fractions.

``v`` plays the role of the square root of the Lefschetz motive.  Every
coefficient is a Python ``int`` or a :class:`fractions.Fraction`; nothing is
ever evaluated in floating point.

A :class:`PochFraction` is a numerator over a product of atomic factors
``(v^(2i) - 1)``, stored as a multiset of the indices ``i``.  Denominators are
never expanded or reduced; reduction happens once, in :func:`frac_to_laurent`.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

from .errors import IntegralityViolation

__all__ = [
    "LaurentPoly",
    "PochFraction",
    "lp_mul",
    "lp_adams",
    "poch_factor_product",
    "poch_denominator",
    "frac_add",
    "frac_mul",
    "frac_scale",
    "frac_sum",
    "frac_adams",
    "frac_to_laurent",
    "mobius",
]

# products with fewer term pairs than this use the schoolbook loop
_KRONECKER_THRESHOLD = 48


def _norm(c):
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _schoolbook(a: Mapping[int, object], b: Mapping[int, object]) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return out


def _kronecker(a: Mapping[int, int], b: Mapping[int, int]) -> dict:
    """Integer polynomial product by packing both factors into big integers."""
    alo, blo = min(a), min(b)
    step = 0
    for e in a:
        step = gcd(step, e - alo)
    for e in b:
        step = gcd(step, e - blo)
    step = step or 1
    na = (max(a) - alo) // step + 1
    nb = (max(b) - blo) // step + 1
    bound = max(map(abs, a.values())) * max(map(abs, b.values())) * min(na, nb)
    k = bound.bit_length() + 2
    base = 1 << k
    half = base >> 1
    mask = base - 1

    def pack(p, lo, n):
        x = 0
        get = p.get
        for idx in range(n - 1, -1, -1):
            x = (x << k) + get(lo + idx * step, 0)
        return x

    x = pack(a, alo, na) * pack(b, blo, nb)
    out = {}
    lo = alo + blo
    for idx in range(na + nb - 1):
        if not x:
            break
        d = x & mask
        if d >= half:
            d -= base
        x = (x - d) >> k
        if d:
            out[lo + idx * step] = d
    return out


def _mul_terms(a: Mapping[int, object], b: Mapping[int, object]) -> dict:
    if not a or not b:
        return {}
    if len(a) * len(b) < _KRONECKER_THRESHOLD:
        return _schoolbook(a, b)
    da = lcm(*(c.denominator for c in a.values() if type(c) is not int)) if any(
        type(c) is not int for c in a.values()) else 1
    db = lcm(*(c.denominator for c in b.values() if type(c) is not int)) if any(
        type(c) is not int for c in b.values()) else 1
    if da == 1 and db == 1:
        return _kronecker(a, b)
    ai = {e: int(c * da) for e, c in a.items()}
    bi = {e: int(c * db) for e, c in b.items()}
    scale = da * db
    return {e: Fraction(c, scale) for e, c in _kronecker(ai, bi).items()}


class LaurentPoly:
    """Sparse Laurent polynomial in ``v`` with exact rational coefficients.

    Instances are immutable.  Zero coefficients are never stored, so two
    polynomials are equal exactly when their term maps are equal.

    >>> v = LaurentPoly.monomial(1)
    >>> (v + v**-1) * (v - v**-1)
    LaurentPoly({2: 1, -2: -1})
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _norm(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPoly":
        # trusted constructor: only drops zeros and collapses integral Fractions
        p = object.__new__(cls)
        clean = {}
        for e, c in terms.items():
            if c:
                if type(c) is not int and c.denominator == 1:
                    c = c.numerator
                clean[e] = c
        p._terms = clean
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._wrap({0: 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: int):
        return self._terms.get(exponent, 0)

    __getitem__ = coefficient

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def leading_coefficient(self):
        return self._terms[self.degree()]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    def descending(self) -> list[tuple[int, object]]:
        return sorted(self._terms.items(), reverse=True)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, Rational):
            return self._terms == ({0: _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Rational):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        get = out.get
        for e, c in other._terms.items():
            out[e] = get(e, 0) + c
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly._wrap(_mul_terms(self._terms, other._terms))
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: Fraction(c) ** n})
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly._wrap({e: a * c for e, a in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k``."""
        if not k:
            return self
        return LaurentPoly._wrap({e + k: c for e, c in self._terms.items()})

    def adams(self, n: int, twisted: bool = False) -> "LaurentPoly":
        """Substitute ``v -> v^n``, or ``v -> -(-v)^n`` when ``twisted``.

        The twisted operation treats ``-v`` as a line element; it is the
        Adams operation used by the plethystic calculus.
        """
        if n < 1:
            raise ValueError("Adams operations need n >= 1")
        if n == 1:
            return self
        if twisted and n % 2 == 0:
            # (-(-v)^n)^e = (-1)^e v^(ne) for even n
            return LaurentPoly._wrap({e * n: (-c if e & 1 else c) for e, c in self._terms.items()})
        return LaurentPoly._wrap({e * n: c for e, c in self._terms.items()})

    def mul_poch_factor(self, i: int) -> "LaurentPoly":
        """Multiply by ``v^(2i) - 1``."""
        s = 2 * i
        out = {e + s: c for e, c in self._terms.items()}
        get = out.get
        for e, c in self._terms.items():
            out[e] = get(e, 0) - c
        return LaurentPoly._wrap(out)

    def div_poch_factor(self, i: int) -> "LaurentPoly":
        """Exact division by ``v^(2i) - 1``.

        Raises :class:`IntegralityViolation` if a remainder is left.
        """
        if not self._terms:
            return self
        s = 2 * i
        rem = dict(self._terms)
        lo = min(rem)
        quot = {}
        # peel the top term each time: c v^e = c v^(e-s) (v^s - 1) + c v^(e-s)
        for e in range(max(rem), lo + s - 1, -1):
            c = rem.pop(e, 0)
            if c:
                quot[e - s] = c
                rem[e - s] = rem.get(e - s, 0) + c
        if any(rem.values()):
            raise IntegralityViolation(f"{self} is not divisible by v^{s} - 1")
        return LaurentPoly._wrap(quot)

    # -- display ----------------------------------------------------------

    def to_string(self, var: str = "v") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.descending():
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.descending())!r})"


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_adams(p: LaurentPoly, n: int, twisted: bool = False) -> LaurentPoly:
    return p.adams(n, twisted)


# -- Pochhammer denominators ------------------------------------------------


def _den_key(den: Iterable[int]) -> tuple[int, ...]:
    key = tuple(sorted(den))
    if key and key[0] < 1:
        raise ValueError(f"denominator indices must be >= 1, got {key[0]}")
    return key


@lru_cache(maxsize=4096)
def _factor_product(key: tuple[int, ...]) -> LaurentPoly:
    p = LaurentPoly.one()
    for i in key:
        p = p.mul_poch_factor(i)
    return p


def poch_factor_product(den: Iterable[int]) -> LaurentPoly:
    """Return the expanded product of ``v^(2i) - 1`` over the multiset ``den``."""
    return _factor_product(_den_key(den))


def poch_denominator(m) -> tuple[LaurentPoly, tuple[int, ...]]:
    """Split ``(v^-2)_m`` into a unit monomial and atomic factors.

    ``m`` is anything exposing the multiplicities through ``values()`` (a
    :class:`~higgsdt.quiver.DimVector` or a plain mapping).  Since
    ``1 - v^(-2k) = v^(-2k) (v^(2k) - 1)`` the unit is ``v^(-sum m_i (m_i+1))``.
    """
    den: list[int] = []
    weight = 0
    for k in m.values():
        den.extend(range(1, k + 1))
        weight += k * (k + 1)
    return LaurentPoly.monomial(-weight), tuple(sorted(den))


class PochFraction:
    """``num / prod_{i in den} (v^(2i) - 1)`` with ``den`` a sorted multiset."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly | Rational = 1, den: Iterable[int] = ()):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        self.num = num
        self.den = _den_key(den) if num else ()

    @classmethod
    def _make(cls, num: LaurentPoly, den: tuple[int, ...]) -> "PochFraction":
        f = object.__new__(cls)
        f.num = num
        f.den = den if num else ()
        return f

    @classmethod
    def zero(cls) -> "PochFraction":
        return cls._make(LaurentPoly.zero(), ())

    @classmethod
    def one(cls) -> "PochFraction":
        return cls._make(LaurentPoly.one(), ())

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentPoly, Rational)):
            other = PochFraction(other)
        if not isinstance(other, PochFraction):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * _factor_product(other.den) == other.num * _factor_product(self.den)

    __hash__ = None  # equality is by value across representatives

    def __add__(self, other):
        if isinstance(other, (LaurentPoly, Rational)):
            other = PochFraction(other)
        if not isinstance(other, PochFraction):
            return NotImplemented
        return frac_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return PochFraction._make(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (LaurentPoly, Rational)):
            other = PochFraction(other)
        if not isinstance(other, PochFraction):
            return NotImplemented
        return frac_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, PochFraction):
            return frac_mul(self, other)
        if isinstance(other, LaurentPoly):
            return PochFraction._make(self.num * other, self.den)
        if isinstance(other, Rational):
            return frac_scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def adams(self, n: int, twisted: bool = True) -> "PochFraction":
        return frac_adams(self, n, twisted)

    def to_laurent(self) -> LaurentPoly:
        return frac_to_laurent(self)

    def __repr__(self) -> str:
        return f"PochFraction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        den = " ".join(f"(v^{2 * i} - 1)" + (f"^{k}" if k > 1 else "")
                       for i, k in sorted(Counter(self.den).items()))
        return f"({self.num}) / {den}"


def _pad(f: PochFraction, target: Counter) -> LaurentPoly:
    have = Counter(f.den)
    num = f.num
    for i, k in target.items():
        for _ in range(k - have.get(i, 0)):
            num = num.mul_poch_factor(i)
    return num


def _den_from_counter(c: Counter) -> tuple[int, ...]:
    return tuple(sorted(c.elements()))


def frac_add(a: PochFraction, b: PochFraction) -> PochFraction:
    """Sum over the per-index maximum of the two denominators."""
    if not a.num:
        return b
    if not b.num:
        return a
    if a.den == b.den:
        return PochFraction._make(a.num + b.num, a.den)
    target = Counter(a.den) | Counter(b.den)
    return PochFraction._make(_pad(a, target) + _pad(b, target), _den_from_counter(target))


def frac_sum(fracs: Iterable[PochFraction]) -> PochFraction:
    """Sum many fractions, padding each numerator only once."""
    fracs = [f for f in fracs if f.num]
    if not fracs:
        return PochFraction.zero()
    if len(fracs) == 1:
        return fracs[0]
    groups: dict[tuple[int, ...], dict] = {}
    for f in fracs:
        acc = groups.setdefault(f.den, {})
        get = acc.get
        for e, c in f.num.items():
            acc[e] = get(e, 0) + c
    if len(groups) == 1:
        (den, acc), = groups.items()
        return PochFraction._make(LaurentPoly._wrap(acc), den)
    target = Counter()
    for den in groups:
        target |= Counter(den)
    total: dict = {}
    get = total.get
    for den, acc in groups.items():
        num = _pad(PochFraction._make(LaurentPoly._wrap(acc), den), target)
        for e, c in num.items():
            total[e] = get(e, 0) + c
    return PochFraction._make(LaurentPoly._wrap(total), _den_from_counter(target))


def frac_mul(a: PochFraction, b: PochFraction) -> PochFraction:
    if not a.num or not b.num:
        return PochFraction.zero()
    den = tuple(sorted(a.den + b.den)) if a.den and b.den else (a.den or b.den)
    return PochFraction._make(a.num * b.num, den)


def frac_scale(a: PochFraction, c) -> PochFraction:
    if isinstance(c, PochFraction):
        return frac_mul(a, c)
    if isinstance(c, LaurentPoly):
        return PochFraction._make(a.num * c, a.den)
    return PochFraction._make(a.num.scale(c), a.den)


def frac_adams(a: PochFraction, n: int, twisted: bool = True) -> PochFraction:
    """Adams operation on a fraction; denominator indices scale by ``n``.

    ``(v^(2i) - 1)`` maps to ``(v^(2ni) - 1)`` under either sign convention.
    """
    if n == 1:
        return a
    return PochFraction._make(a.num.adams(n, twisted), tuple(n * i for i in a.den))


def frac_to_laurent(a: PochFraction) -> LaurentPoly:
    """Cancel every denominator factor exactly; the result must have integer
    coefficients, otherwise :class:`IntegralityViolation` is raised."""
    num = a.num
    for i in sorted(a.den, reverse=True):
        num = num.div_poch_factor(i)
    if not num.is_integral():
        raise IntegralityViolation(f"non-integer coefficients in {num}")
    return num


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result
