"""Serialisable result records and their text / JSON / LaTeX renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ring import LaurentPoly

__all__ = ["OutputRecord", "dumps", "poly_to_pairs", "pairs_to_poly", "latex_poly"]


def poly_to_pairs(p: LaurentPoly) -> list[list[int]]:
    if not p.is_integral():
        raise ValueError("only integer polynomials are serialised")
    return [[e, c] for e, c in p.descending()]


def pairs_to_poly(pairs) -> LaurentPoly:
    return LaurentPoly({int(e): int(c) for e, c in pairs})


def latex_poly(p: LaurentPoly, var: str = "w") -> str:
    if not p:
        return "0"
    out = []
    for e, c in p.descending():
        mono = "1" if e == 0 else (var if e == 1 else f"{var}^{{{e}}}")
        a = abs(c)
        body = mono if a == 1 and e != 0 else (str(a) if e == 0 else f"{a}\\,{mono}")
        sign = "-" if c < 0 else ("+" if out else "")
        out.append(f"{sign}{body}")
    return "".join(out)


@dataclass
class OutputRecord:
    ell: int
    r: int
    d: int
    kind: str
    poly: LaurentPoly
    ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "ell": self.ell,
            "r": self.r,
            "d": self.d,
            "kind": self.kind,
            "poly": poly_to_pairs(self.poly),
            "ms": round(self.ms, 3),
        }
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OutputRecord":
        data = dict(data)
        core = {k: data.pop(k) for k in ("ell", "r", "d", "kind")}
        poly = pairs_to_poly(data.pop("poly"))
        ms = float(data.pop("ms", 0.0))
        return cls(poly=poly, ms=ms, extra=data, **core)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls.from_dict(json.loads(text))

    def text(self) -> str:
        return self.poly.to_string("w")

    def label(self) -> str:
        if self.kind == "omega_Q":
            return f"Omega_Q({self.extra.get('dimvec', '')})"
        return f"Omega_{self.ell}({self.r})"

    def latex(self) -> str:
        if self.kind == "omega_Q":
            head = f"\\Omega_Q({self.extra.get('dimvec', '')})"
        else:
            head = f"\\Omega_{{{self.ell}}}({self.r})"
        return f"{head} &= {latex_poly(self.poly)}\\\\"


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no insignificant whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
