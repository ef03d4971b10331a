"""Dimension vectors of the infinite symmetric quiver attached to ``deg L = ell``.

The quiver has vertex set Z and ``max(ell + 1 - |i - j|, 0)`` arrows from
``i`` to ``j``.  A dimension vector ``m`` also records the splitting type
``E = sum O(i)^{m_i}`` of a vector bundle on the projective line, with
``r(m) = sum m_i`` and ``d(m) = sum i * m_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import DimVectorParseError, ZeroRank

__all__ = [
    "DimVector",
    "QuiverConfig",
    "arrows",
    "euler_form",
    "enumerate_dimvecs",
    "iter_dimvecs",
    "slope",
    "shift",
]


class DimVector(Mapping[int, int]):
    """Finitely supported map from vertices (integers) to multiplicities.

    Immutable and hashable; zero multiplicities are dropped on construction.
    Behaves as a read-only mapping, so ``m[i]`` is 0 off the support.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Mapping[int, int] | None = None):
        items = []
        if entries:
            for i, k in entries.items():
                if int(k) != k or k < 0:
                    raise ValueError(f"multiplicity at vertex {i} must be a nonnegative integer")
                if k:
                    items.append((int(i), int(k)))
        items.sort()
        self._items = tuple(items)
        self._hash = hash(self._items)

    @classmethod
    def delta(cls, i: int, k: int = 1) -> "DimVector":
        return cls({i: k})

    @classmethod
    def from_parts(cls, parts) -> "DimVector":
        """Build from a sequence of vertex indices, one per unit of rank."""
        counts: dict[int, int] = {}
        for i in parts:
            counts[i] = counts.get(i, 0) + 1
        return cls(counts)

    @classmethod
    def parse(cls, text: str) -> "DimVector":
        """Parse ``"i:k,j:l,..."``; an empty string is the zero vector."""
        counts: dict[int, int] = {}
        text = text.strip()
        if not text:
            return cls()
        for chunk in text.split(","):
            idx, sep, mult = chunk.strip().partition(":")
            if not sep:
                raise DimVectorParseError(f"expected 'index:multiplicity', got {chunk!r}")
            try:
                i, k = int(idx), int(mult)
            except ValueError:
                raise DimVectorParseError(f"non-integer entry in {chunk!r}") from None
            if k < 0:
                raise DimVectorParseError(f"negative multiplicity in {chunk!r}")
            if i in counts:
                raise DimVectorParseError(f"vertex {i} listed twice")
            counts[i] = k
        return cls(counts)

    def __getitem__(self, i: int) -> int:
        for j, k in self._items:
            if j == i:
                return k
        return 0

    def __iter__(self) -> Iterator[int]:
        return (i for i, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, i) -> bool:
        return any(j == i for j, _ in self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, DimVector):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == DimVector(other)
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "DimVector") -> bool:
        return self._items < other._items

    def items(self):
        return self._items

    def values(self):
        return tuple(k for _, k in self._items)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._items)

    @property
    def rank(self) -> int:
        return sum(k for _, k in self._items)

    @property
    def degree(self) -> int:
        return sum(i * k for i, k in self._items)

    def __add__(self, other: "DimVector") -> "DimVector":
        counts = dict(self._items)
        for i, k in other.items():
            counts[i] = counts.get(i, 0) + k
        return DimVector(counts)

    def __mul__(self, n: int) -> "DimVector":
        return DimVector({i: n * k for i, k in self._items})

    __rmul__ = __mul__

    def leq(self, other: "DimVector") -> bool:
        """Pointwise comparison."""
        return all(k <= other[i] for i, k in self._items)

    def __str__(self) -> str:
        return ",".join(f"{i}:{k}" for i, k in self._items)

    def __repr__(self) -> str:
        return f"DimVector({{{', '.join(f'{i}: {k}' for i, k in self._items)}}})"


@dataclass(frozen=True)
class QuiverConfig:
    ell: int

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")

    def arrows(self, i: int, j: int) -> int:
        return arrows(self.ell, i, j)

    def euler_form(self, m: DimVector, m2: DimVector) -> int:
        return euler_form(self.ell, m, m2)


def _ell(cfg) -> int:
    return cfg.ell if hasattr(cfg, "ell") else int(cfg)


def arrows(cfg, i: int, j: int) -> int:
    """Number of arrows ``i -> j``; ``cfg`` is a config or the integer ``ell``."""
    return max(_ell(cfg) + 1 - abs(i - j), 0)


def euler_form(cfg, m: DimVector, m2: DimVector) -> int:
    """Euler-Ringel form ``sum m_i m2_i - sum_{i,j} a(i,j) m_i m2_j``."""
    ell = _ell(cfg)
    total = 0
    for i, a in m.items():
        total += a * m2[i]
        for j, b in m2.items():
            n = ell + 1 - abs(i - j)
            if n > 0:
                total -= n * a * b
    return total


def iter_dimvecs(r: int, d: int, window: tuple[int, int]) -> Iterator[DimVector]:
    """Yield dimension vectors with support in ``window`` of rank ``r`` and
    degree ``d``, ordered lexicographically by their sorted list of parts."""
    lo, hi = window
    if r < 0 or lo > hi:
        return
    parts: list[int] = []

    def rec(remaining: int, total: int, smallest: int):
        if remaining == 0:
            if total == 0:
                yield DimVector.from_parts(parts)
            return
        # next part p, then remaining-1 parts each in [p, hi]
        start = max(smallest, total - (remaining - 1) * hi)
        for p in range(start, hi + 1):
            if p * remaining > total:
                break
            parts.append(p)
            yield from rec(remaining - 1, total - p, p)
            parts.pop()

    yield from rec(r, d, lo)


def enumerate_dimvecs(r: int, d: int, window: tuple[int, int]) -> list[DimVector]:
    return list(iter_dimvecs(r, d, window))


def slope(m: DimVector) -> Fraction:
    r = m.rank
    if r == 0:
        raise ZeroRank("slope of the zero dimension vector")
    return Fraction(m.degree, r)


def shift(m: DimVector, k: int = 1) -> DimVector:
    """Translate the support ``k`` steps to the right (``m[k]_i = m_{i-k}``)."""
    return DimVector({i + k: n for i, n in m.items()})

