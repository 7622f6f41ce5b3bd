"""Formal linear combinations of projective matrices."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from ..mat2 import ProjMat
from .coeffs import Poly

_ID = ProjMat.identity()


class GroupRingElem:
    """Finite sum of Poly * ProjMat.  Keys are canonical, zeros are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ProjMat, Poly] | Iterable[tuple] | None = None):
        out: dict[ProjMat, Poly] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or [])
        for m, c in items:
            if not isinstance(m, ProjMat):
                m, c = c, m
            out[m] = out.get(m, Poly()) + Poly.coerce(c)
        self.terms = {m: c for m, c in out.items() if c}

    @classmethod
    def of(cls, m: ProjMat, coeff=1) -> "GroupRingElem":
        return cls({m: Poly.coerce(coeff)})

    @classmethod
    def scalar(cls, coeff) -> "GroupRingElem":
        return cls({_ID: Poly.coerce(coeff)})

    @staticmethod
    def _coerce(x) -> "GroupRingElem":
        if isinstance(x, GroupRingElem):
            return x
        if isinstance(x, ProjMat):
            return GroupRingElem.of(x)
        return GroupRingElem.scalar(x)

    def __add__(self, o) -> "GroupRingElem":
        o = self._coerce(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, Poly()) + c
        return GroupRingElem(out)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, o) -> "GroupRingElem":
        return self + (-self._coerce(o))

    def __rsub__(self, o) -> "GroupRingElem":
        return self._coerce(o) - self

    def __mul__(self, o) -> "GroupRingElem":
        o = self._coerce(o)
        out: dict[ProjMat, Poly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = m1 * m2
                out[m] = out.get(m, Poly()) + c1 * c2
        return GroupRingElem(out)

    def __rmul__(self, o) -> "GroupRingElem":
        return self._coerce(o) * self

    def __eq__(self, o) -> bool:
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, m: ProjMat) -> Poly:
        return self.terms.get(m, Poly())

    def sorted_terms(self) -> list[tuple[ProjMat, Poly]]:
        return sorted(self.terms.items(), key=lambda t: t[0].entries)

    def first_difference(self, other: "GroupRingElem") -> Optional[tuple[ProjMat, Poly, Poly]]:
        """(matrix, our coefficient, their coefficient) at the first disagreement."""
        keys = sorted(set(self.terms) | set(other.terms), key=lambda m: m.entries)
        for m in keys:
            a, b = self.coeff(m), other.coeff(m)
            if a != b:
                return m, a, b
        return None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})[{m}]" for m, c in self.sorted_terms())

    def to_json(self) -> list:
        return [[c.to_json(), str(m)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "GroupRingElem":
        if not isinstance(data, list):
            raise ValueError(f"expected a list of [coefficient, matrix] pairs, got {data!r}")
        out = []
        for i, pair in enumerate(data):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError(f"entry {i}: expected [coefficient, matrix]")
            out.append((ProjMat.parse(pair[1]), Poly.from_json(pair[0])))
        return cls(out)


def gr_mul(x: GroupRingElem, y: GroupRingElem) -> GroupRingElem:
    return x * y
