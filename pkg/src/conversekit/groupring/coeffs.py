"""Sparse polynomials with Gaussian-rational coefficients in named symbols."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[tuple[str, int], ...]
Number = Union[int, Fraction, "GaussQ"]


class GaussQ:
    """Exact element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact coefficients")
        return cls(x)

    def __add__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussQ.coerce(o))

    def __mul__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, o):
        try:
            o = GaussQ.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


I = GaussQ(0, 1)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in d.items() if e))


def _mono_str(m: Monomial) -> str:
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)


class Poly:
    """Immutable sparse polynomial; zero terms are never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, GaussQ] | None = None):
        self.terms: dict[Monomial, GaussQ] = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, x) -> "Poly":
        return cls({(): GaussQ.coerce(x)})

    @classmethod
    def symbol(cls, name: str, exp: int = 1) -> "Poly":
        return cls({((name, exp),): GaussQ(1)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, str):
            return cls.symbol(x)
        return cls.const(x)

    def __add__(self, o) -> "Poly":
        o = Poly.coerce(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, GaussQ()) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o) -> "Poly":
        return self + (-Poly.coerce(o))

    def __rsub__(self, o) -> "Poly":
        return Poly.coerce(o) - self

    def __mul__(self, o) -> "Poly":
        o = Poly.coerce(o)
        out: dict[Monomial, GaussQ] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, GaussQ()) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, o) -> bool:
        try:
            o = Poly.coerce(o)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, GaussQ]]:
        return sorted(self.terms.items())

    @property
    def symbols(self) -> set[str]:
        return {s for m in self.terms for s, _ in m}

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for s, e in m:
                t *= complex(values[s]) ** e
            total += t
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(repr(c))
            elif c == 1:
                parts.append(_mono_str(m))
            elif c == -1:
                parts.append("-" + _mono_str(m))
            else:
                parts.append(f"{c!r}*{_mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    # serialization: {terms: [{monomial: {sym: exp}, re: "p/q", im: "p/q"}]}
    def to_json(self) -> dict:
        return {
            "terms": [
                {"monomial": dict(m), "re": str(c.re), "im": str(c.im)} for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data) -> "Poly":
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            # shorthand: bare number or symbol name
            try:
                return cls.const(Fraction(data))
            except ValueError:
                return cls.symbol(str(data))
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError(f"malformed coefficient: {data!r}")
        out: dict[Monomial, GaussQ] = {}
        for t in data["terms"]:
            mono = tuple(sorted((str(s), int(e)) for s, e in t.get("monomial", {}).items() if int(e)))
            c = GaussQ(Fraction(t.get("re", "0")), Fraction(t.get("im", "0")))
            out[mono] = out.get(mono, GaussQ()) + c
        return cls(out)


ZERO = Poly()
ONE = Poly.const(1)


def poly_sum(items: Iterable[Poly]) -> Poly:
    out = ZERO
    for p in items:
        out = out + p
    return out
