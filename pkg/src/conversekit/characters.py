"""Dirichlet characters, Gauss sums, additive twists and the special-prime search."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .mat2 import ProjMat
from .modgroup import Flavor, Gamma1, is_member, verify_generates
from .numtheory import crt_pair, euler_phi, factorize, is_prime, prime_divisors, primitive_root

TWO_PI_I = 2j * math.pi


def _e(x: Fraction) -> complex:
    # e^{2 pi i x}, exact at quarter turns so trivial values stay exact
    x = x % 1
    if 4 % x.denominator == 0:
        return {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}[x]
    return cmath.exp(TWO_PI_I * x.numerator / x.denominator)


# --------------------------------------------------------------------------
# unit group structure


@dataclass(frozen=True)
class UnitGroup:
    """(Z/q)^x as a product of cyclic groups with generators lifted by CRT."""

    modulus: int
    gens: tuple[int, ...]
    orders: tuple[int, ...]

    @cached_property
    def dlog(self) -> dict[int, tuple[int, ...]]:
        q = self.modulus
        table: dict[int, tuple[int, ...]] = {}
        for exps in itertools.product(*(range(o) for o in self.orders)):
            n = 1
            for g, e in zip(self.gens, exps):
                n = n * pow(g, e, q) % q
            table[n % q] = exps
        if len(table) != euler_phi(q):
            raise AssertionError(f"unit group of Z/{q} mis-generated")
        return table


def _prime_power_gens(p: int, e: int) -> list[tuple[int, int]]:
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(pe - 1, 2)]
        return [(pe - 1, 2), (5, 2 ** (e - 2))]
    g = primitive_root(p)
    # a primitive root mod p lifts to one mod p^2 (hence all p^e) unless g^(p-1) = 1 mod p^2
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return [(g, pe // p * (p - 1))]


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise ValueError("modulus must be positive")
    gens, orders = [], []
    for p, e in sorted(factorize(q).items()) if q > 1 else []:
        pe = p**e
        rest = q // pe
        for g, o in _prime_power_gens(p, e):
            # lift: g mod p^e, 1 mod the rest
            if rest == 1:
                lifted = g % q
            else:
                r, _ = crt_pair(g, pe, 1, rest)
                lifted = r
            gens.append(lifted)
            orders.append(o)
    return UnitGroup(q, tuple(gens), tuple(orders))


# --------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class DirichletChar:
    modulus: int
    exponents: tuple[int, ...]
    index: int = 0

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    def phase(self, n: int) -> Optional[Fraction]:
        """psi(n) = e(phase), or None when gcd(n, modulus) > 1."""
        q = self.modulus
        if math.gcd(n, q) != 1:
            return None
        if q == 1:
            return Fraction(0)
        logs = self.group.dlog[n % q]
        return sum((Fraction(k * x, o) for k, x, o in zip(self.exponents, logs, self.group.orders)), Fraction(0)) % 1

    @cached_property
    def values(self) -> tuple[complex, ...]:
        """psi(0), ..., psi(q-1)."""
        out = []
        for n in range(self.modulus):
            ph = self.phase(n)
            out.append(0 if ph is None else _e(ph))
        return tuple(out)

    def __call__(self, n: int) -> complex:
        return self.values[n % self.modulus]

    def conj(self) -> "DirichletChar":
        exps = tuple((-k) % o for k, o in zip(self.exponents, self.group.orders))
        return DirichletChar(self.modulus, exps)

    @property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        return 1 if self.phase(-1) == 0 else -1

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def conductor(self) -> int:
        q = self.modulus
        for d in sorted(d for d in range(1, q + 1) if q % d == 0):
            if all(self.phase(n) == 0 for n in range(1, q, d) if math.gcd(n, q) == 1):
                return d
        return q

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def designation(self) -> str:
        return f"{self.modulus}:{self.index}"

    def __str__(self) -> str:
        return f"chi[{self.designation}] parity {self.parity:+d} conductor {self.conductor}"


def enumerate_chars(q: int) -> list[DirichletChar]:
    """All characters mod q, ordered lexicographically by exponent vector."""
    G = unit_group(q)
    return [
        DirichletChar(q, exps, i)
        for i, exps in enumerate(itertools.product(*(range(o) for o in G.orders)))
    ]


@lru_cache(maxsize=256)
def _chars(q: int) -> tuple[DirichletChar, ...]:
    return tuple(enumerate_chars(q))


def primitive_chars(q: int) -> list[DirichletChar]:
    return [c for c in _chars(q) if c.is_primitive]


def char_from_designation(text: str) -> DirichletChar:
    """Parse "q:index" into the index-th character of enumerate_chars(q)."""
    try:
        q_s, i_s = text.split(":")
        q, i = int(q_s), int(i_s)
    except ValueError as exc:
        raise ValueError(f"bad character designation {text!r}; expected q:index") from exc
    chars = enumerate_chars(q)
    if not 0 <= i < len(chars):
        raise ValueError(f"index {i} out of range: there are {len(chars)} characters mod {q}")
    return chars[i]


def gauss_sum(psi: DirichletChar) -> complex:
    q = psi.modulus
    if q == 1:
        return 1.0 + 0j
    terms = [psi(a) * cmath.exp(TWO_PI_I * a / q) for a in range(1, q) if math.gcd(a, q) == 1]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


# --------------------------------------------------------------------------
# additive twists


@dataclass(frozen=True)
class TwistSpec:
    q: int
    a: int
    m: int

    @property
    def sign(self) -> str:
        return "+" if self.m % 2 == 0 else "-"


def cos_derivative(m: int, x: float) -> float:
    return math.cos(x + m * math.pi / 2)


@lru_cache(maxsize=256)
def _twist_terms(q: int, odd: int) -> tuple[tuple[complex, DirichletChar], ...]:
    want = -1 if odd else 1
    return tuple((gauss_sum(psi.conj()), psi) for psi in primitive_chars(q) if psi.parity == want)


def additive_twist_sides(spec: TwistSpec, n: int) -> tuple[complex, complex]:
    """Both sides of the expansion of cos^(m)(2 pi n a / q) in primitive characters.

    The principal-character part collapses to a correction that depends only on
    whether q divides n.
    """
    q, a, m = spec.q, spec.a, spec.m
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if a % q == 0:
        raise ValueError("a must be a unit mod q")
    if m < 0:
        raise ValueError("m must be >= 0")
    lhs = cos_derivative(m, 2 * math.pi * n * a / q)
    acc = 0j
    for tau_bar, psi in _twist_terms(q, m % 2):
        acc += tau_bar * psi(a) * psi(n)
    rhs = (1j**m) / (q - 1) * acc
    if m % 2 == 0:
        rhs += (-1) ** (m // 2) * (1 - (q / (q - 1) if n % q != 0 else 0))
    return lhs, rhs


def additive_twist_residual(spec: TwistSpec, n: int) -> float:
    lhs, rhs = additive_twist_sides(spec, n)
    return abs(lhs - rhs)


def theta1(q: int, r: int) -> dict[int, int]:
    """+1 at r, -1 at -r, 0 on the other units mod q."""
    if q == 2:
        raise ValueError("q = 2 is degenerate: r = -r mod 2")
    if math.gcd(r, q) != 1:
        raise ValueError(f"r = {r} is not a unit mod {q}")
    table = {a: 0 for a in range(1, q) if math.gcd(a, q) == 1}
    table[r % q] = 1
    table[(-r) % q] = -1
    if sum(table.values()) != 0:
        raise AssertionError("theta1 is not in the span of primitive characters")
    return table


def primitive_span_rank(q: int) -> int:
    """Rank of the matrix of primitive character values on (Z/q)^x."""
    units = [a for a in range(1, q) if math.gcd(a, q) == 1]
    rows = np.array([[psi(a) for a in units] for psi in primitive_chars(q)], dtype=complex)
    if rows.size == 0:
        return 0
    return int(np.linalg.matrix_rank(rows @ rows.conj().T))


# --------------------------------------------------------------------------
# special prime


MODULUS_RULES = ("nC", "literal")


@dataclass(frozen=True)
class Congruence:
    generator: ProjMat
    residue: int  # A_j
    C: int  # lower-left / N

    def modulus(self, N: int) -> int:
        return N * abs(self.C)

    def holds(self, q: int, N: int, rule: str = "nC") -> bool:
        if self.C == 0:
            return True
        m = N * abs(self.C) if rule == "nC" else q * abs(self.C)
        return (q - self.residue) % m == 0

    def __str__(self) -> str:
        return f"q = {self.residue} mod |C|={abs(self.C)} from {self.generator}"


@dataclass
class SpecialPrimeResult:
    status: str  # found | infeasible | not-found
    q: Optional[int] = None
    residue: Optional[int] = None
    modulus: Optional[int] = None
    conflict: Optional[tuple[Congruence, Congruence]] = None
    generators: list[ProjMat] = field(default_factory=list)
    congruences: list[Congruence] = field(default_factory=list)
    rule: str = "nC"
    adapted: bool = False
    notes: list[str] = field(default_factory=list)


def gamma1_lift(M: ProjMat, N: int) -> tuple[int, int, int, int]:
    """Sign of M with a = 1 (mod N); the stored sign when N <= 2."""
    if N > 2 and M.a % N != 1:
        return tuple(-x for x in M.entries)  # type: ignore[return-value]
    return M.entries


def congruences_for(gens: Sequence[ProjMat], N: int) -> list[Congruence]:
    out = []
    for g in gens:
        if not is_member(g, Gamma1(N)):
            raise ValueError(f"generator {g} is not in Gamma1({N})")
        a, _, c, _ = gamma1_lift(g, N)
        out.append(Congruence(g, a, c // N))
    return out


def _merge(cons: Sequence[Congruence], N: int):
    """CRT-merge the nC-rule congruences; (residue, modulus) or the conflicting pair."""
    r, m = 0, 1
    seen: list[Congruence] = []
    for c in cons:
        if c.C == 0:
            continue
        merged = crt_pair(r, m, c.residue, c.modulus(N))
        if merged is None:
            for prev in seen:
                if crt_pair(prev.residue, prev.modulus(N), c.residue, c.modulus(N)) is None:
                    return None, (prev, c)
            raise AssertionError("pairwise-compatible congruences failed to merge")
        r, m = merged
        seen.append(c)
    return (r, m), None


def _admissible(q: int, N: int) -> bool:
    return q > 2 and is_prime(q) and N % q != 0


def special_prime(
    N: int,
    gens: Sequence[ProjMat],
    modulus_rule: str = "nC",
    bound: int = 10**6,
    adapt: bool = False,
) -> SpecialPrimeResult:
    """Smallest admissible prime q with q = A_j mod (N|C_j|) for every generator.

    With ``adapt`` the generating set may be changed by Nielsen moves (each
    generator replaced by its inverse or a short product with the others) until
    some prime q = 1 mod N works; the new set is re-certified to generate.
    """
    if modulus_rule not in MODULUS_RULES:
        raise ValueError(f"modulus_rule must be one of {MODULUS_RULES}")
    if bound < 2:
        raise ValueError("bound must be >= 2")
    gens = list(gens)
    cons = congruences_for(gens, N)
    res = SpecialPrimeResult("not-found", generators=gens, congruences=cons, rule=modulus_rule)

    if modulus_rule == "literal":
        # self-referential modulus q|C_j|: checked per candidate
        for q in range(3, bound + 1):
            if _admissible(q, N) and all(c.holds(q, N, "literal") for c in cons):
                res.status, res.q = "found", q
                return res
        return res

    merged, conflict = _merge(cons, N)
    if merged is not None:
        r, m = merged
        res.residue, res.modulus = r, m
        if math.gcd(r, m) == 1 or m == 1:
            q = r if r > 0 else m
            while q <= bound:
                if _admissible(q, N):
                    res.status, res.q = "found", q
                    return res
                q += m
        else:
            res.notes.append(f"residue {r} shares a factor with modulus {m}")
        if not adapt:
            return res
    else:
        res.status, res.conflict = "infeasible", conflict
        if not adapt:
            return res
    return _adapted_search(N, gens, bound, res)


def _ok(g: ProjMat, q: int, N: int) -> bool:
    a, _, c, _ = gamma1_lift(g, N)
    C = c // N
    return C == 0 or (a - q) % (N * abs(C)) == 0


def adapt_generators(gens: Sequence[ProjMat], q: int, N: int) -> Optional[list[ProjMat]]:
    """Nielsen-move each offending generator until it satisfies the congruence for q."""
    G = list(gens)
    for j, g in enumerate(G):
        if _ok(g, q, N):
            continue
        others: list[ProjMat] = []
        for i, h in enumerate(G):
            if i != j and h.c != 0:
                others += [h, h.inverse()]
        ginv = g.inverse()
        cands = [ginv]
        for x in others:
            cands += [x * g, g * x, x * ginv, ginv * x]
        cands += [x * g * y for x in others for y in others]
        for c in cands:
            if not c.is_pm_identity() and c not in G and _ok(c, q, N):
                G[j] = c
                break
        else:
            return None
    return G


def _adapted_search(N: int, gens: list[ProjMat], bound: int, res: SpecialPrimeResult) -> SpecialPrimeResult:
    step = N if N > 2 else 1
    q = 1 + step
    while q <= bound:
        if _admissible(q, N):
            G = adapt_generators(gens, q, N)
            if G is not None and verify_generates(N, G, flavor=Flavor.GAMMA1).generates:
                out = SpecialPrimeResult(
                    "found",
                    q=q,
                    generators=G,
                    congruences=congruences_for(G, N),
                    adapted=True,
                    notes=res.notes + [f"original list: {res.status}"],
                    conflict=res.conflict,
                )
                return out
        q += step
    res.notes.append("no adapted generating set found")
    return res


def check_special_prime(q: int, gens: Sequence[ProjMat], N: int, rule: str = "nC") -> list[Congruence]:
    """Congruences violated by q (empty when q works)."""
    return [c for c in congruences_for(gens, N) if not c.holds(q, N, rule)]
