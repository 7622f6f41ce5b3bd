"""SL2(Z) structure: Gamma0/Gamma1 membership, indices, words in s and t,
Schreier generators and Todd-Coxeter certification of generating sets.

Conventions: s = [[0,-1],[1,0]], t = [[1,1],[0,1]].  PSL2(Z) is presented as
<s, t | s^2, (st)^3>; SL2(Z) as <s, t | s^4, s^2 (st)^-3>.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence, Union

from .cosets import CosetCapExceeded, CosetTable, todd_coxeter
from .mat2 import ProjMat, _mul
from .numtheory import prime_divisors

S_MAT = (0, -1, 1, 0)
T_MAT = (1, 1, 0, 1)
_GEN_MATS = {"s": S_MAT, "t": T_MAT}
_LETTER = {"s": 0, "t": 2}

PSL2_RELATORS = ([0, 0], [0, 2, 0, 2, 0, 2])
SL2_RELATORS = ([0, 0, 0, 0], [0, 0, 3, 1, 3, 1, 3, 1])

INDEX_GUARD = 10**6


class Flavor(enum.Enum):
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"


@dataclass(frozen=True)
class SubgroupFlavor:
    kind: Flavor
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("level must be >= 1")

    def __str__(self) -> str:
        return f"Gamma{0 if self.kind is Flavor.GAMMA0 else 1}({self.N})"


def Gamma0(N: int) -> SubgroupFlavor:
    return SubgroupFlavor(Flavor.GAMMA0, N)


def Gamma1(N: int) -> SubgroupFlavor:
    return SubgroupFlavor(Flavor.GAMMA1, N)


class NotUnimodularError(ValueError):
    """Matrix has no lift in SL2(Z)."""


# --------------------------------------------------------------------------
# P^1(Z/N) and indices


def _units(N: int) -> list[int]:
    return [u for u in range(1, N + 1) if gcd(u, N) == 1] if N > 1 else [0]


def p1_canonical(c: int, d: int, N: int, units: Sequence[int] | None = None) -> tuple[int, int]:
    if N == 1:
        return (0, 0)
    units = units if units is not None else _units(N)
    return min(((u * c) % N, (u * d) % N) for u in units)


def p1_points(N: int) -> list[tuple[int, int]]:
    """All points of P^1(Z/N), by brute-force enumeration of bottom rows."""
    if N == 1:
        return [(0, 0)]
    units = _units(N)
    pts = {
        p1_canonical(c, d, N, units)
        for c in range(N)
        for d in range(N)
        if gcd(gcd(c, d), N) == 1
    }
    return sorted(pts)


def index_formula(N: int) -> int:
    out = N
    for p in prime_divisors(N) if N > 1 else []:
        out = out // p * (p + 1)
    return out


def index_gamma0(N: int) -> int:
    """[SL2(Z) : Gamma0(N)], enumerated and checked against the product formula."""
    if N < 1:
        raise ValueError("level must be >= 1")
    n = len(p1_points(N))
    f = index_formula(N)
    if n != f:
        raise AssertionError(f"P^1(Z/{N}) enumeration gave {n}, formula {f}")
    return n


def index_gamma1_projective(N: int) -> int:
    """[PSL2(Z) : image of Gamma1(N)]: bottom rows up to sign."""
    pairs = sum(1 for c in range(N) for d in range(N) if gcd(gcd(c, d), N) == 1) if N > 1 else 1
    return pairs // 2 if N > 2 else pairs


def expected_index(flavor: SubgroupFlavor) -> int:
    if flavor.kind is Flavor.GAMMA0:
        return index_gamma0(flavor.N)
    return index_gamma1_projective(flavor.N)


# --------------------------------------------------------------------------
# membership


def is_member(M: ProjMat, flavor: SubgroupFlavor) -> bool:
    """True iff a real scalar multiple of M lies in the subgroup.

    The canonical representative is primitive, so the only candidate lifts are
    +M and -M; for Gamma1 either sign may satisfy a = d = 1 (mod N).
    """
    N = flavor.N
    if M.det != 1 or M.c % N:
        return False
    if flavor.kind is Flavor.GAMMA0:
        return True
    return (M.a % N == 1 % N and M.d % N == 1 % N) or ((-M.a) % N == 1 % N and (-M.d) % N == 1 % N)


# --------------------------------------------------------------------------
# words in s, t

Letter = tuple[str, int]


def _simplify(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g:
            e += out.pop()[1]
        if g == "s":
            e %= 4
            if e == 3:
                e = -1
        if e:
            out.append((g, e))
    return out


def sl2_word(M: ProjMat) -> list[Letter]:
    """Word in s, t whose product is exactly M (M must have det 1).

    Euclidean reduction on the left column; deterministic.
    """
    if M.det != 1:
        raise NotUnimodularError(f"{M} is not in SL2(Z) (det {M.det})")
    a, b, c, d = M.entries
    ops: list[Letter] = []
    while c != 0:
        q = a // c
        if q:
            # X = t^q X'
            a, b = a - q * c, b - q * d
            ops.append(("t", q))
        # X = s X'
        a, b, c, d = c, d, -a, -b
        ops.append(("s", 1))
    # now X = a * t^(a*b) with a = +-1
    ops.append(("t", a * b))
    if a == -1:
        ops.append(("s", 2))
    return _simplify(ops)


def psl2_word(M: ProjMat) -> list[Letter]:
    """Word in s, t whose product is +-M."""
    w = sl2_word(M)
    return _simplify([(g, e % 2 if g == "s" else e) for g, e in w])


def word_to_str(word: Sequence[Letter]) -> str:
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word) or "1"


def word_matrix(word: Sequence[Letter]) -> ProjMat:
    out = (1, 0, 0, 1)
    for g, e in word:
        m = _GEN_MATS[g]
        step = m if e > 0 else (m[3], -m[1], -m[2], m[0])
        for _ in range(abs(e)):
            out = _mul(out, step)
    return ProjMat._raw(out)


def word_letters(word: Sequence[Letter]) -> list[int]:
    out: list[int] = []
    for g, e in word:
        x = _LETTER[g] | (0 if e > 0 else 1)
        out.extend([x] * abs(e))
    return out


# --------------------------------------------------------------------------
# Schreier generators


def _act_row(pt: tuple[int, int], g: str, N: int) -> tuple[int, int]:
    c, d = pt
    if g == "s":
        return (d % N, (-c) % N)
    return (c % N, (c + d) % N)


def coset_action(flavor: SubgroupFlavor) -> tuple[list[tuple[int, int]], dict[str, list[int]]]:
    """Points of the coset space (orbit of (0,1)) and the right action of s, t."""
    N = flavor.N
    if flavor.kind is Flavor.GAMMA0:
        units = _units(N)
        canon = lambda p: p1_canonical(p[0], p[1], N, units)  # noqa: E731
    else:
        canon = lambda p: min(p, ((-p[0]) % N, (-p[1]) % N)) if N > 1 else (0, 0)  # noqa: E731
    start = canon((0, 1 % N))
    idx = {start: 0}
    pts = [start]
    perms: dict[str, list[int]] = {"s": [], "t": []}
    i = 0
    while i < len(pts):
        if len(pts) > INDEX_GUARD:
            raise MemoryError(f"coset space of {flavor} exceeds {INDEX_GUARD} points")
        for g in ("s", "t"):
            q = canon(_act_row(pts[i], g, N))
            if q not in idx:
                idx[q] = len(pts)
                pts.append(q)
            perms[g].append(idx[q])
        i += 1
    return pts, perms


def schreier_generators(flavor: SubgroupFlavor) -> list[ProjMat]:
    """Schreier generators of the subgroup from the action of s, t on cosets.

    Every output is a genuine element of the subgroup (for Gamma1 the sign is
    chosen so that a = d = 1 mod N).
    """
    N = flavor.N
    if expected_index(flavor) > INDEX_GUARD:
        raise MemoryError(f"index of {flavor} exceeds guard {INDEX_GUARD}")
    pts, perms = coset_action(flavor)
    reps: list[tuple | None] = [None] * len(pts)
    reps[0] = (1, 0, 0, 1)
    order = [0]
    tree: set[tuple[int, str]] = set()
    for p in order:
        for g in ("s", "t"):
            q = perms[g][p]
            if reps[q] is None:
                reps[q] = _mul(reps[p], _GEN_MATS[g])
                tree.add((p, g))
                order.append(q)
    gens: list[ProjMat] = []
    seen = set()
    for p in range(len(pts)):
        for g in ("s", "t"):
            if (p, g) in tree:
                continue
            q = perms[g][p]
            r = reps[q]
            m = _mul(_mul(reps[p], _GEN_MATS[g]), (r[3], -r[1], -r[2], r[0]))
            if m in ((1, 0, 0, 1), (-1, 0, 0, -1)) and flavor.kind is Flavor.GAMMA1:
                continue
            if m == (1, 0, 0, 1):
                continue
            if flavor.kind is Flavor.GAMMA1 and N > 2 and m[0] % N != 1:
                m = tuple(-x for x in m)
            if m not in seen:
                seen.add(m)
                gens.append(ProjMat._raw(m))
    for g in gens:
        assert is_member(g, flavor), g
    return gens


# --------------------------------------------------------------------------
# generation certificate


@dataclass
class GenerationResult:
    generates: bool
    index_found: Union[int, str, None]
    expected_index: int
    minus_identity: str = ""
    diagnostics: list[str] = field(default_factory=list)


def coset_table_for(mats: Sequence[ProjMat], cap: int, exact_sign: bool = False) -> CosetTable:
    """Coset table of <mats> in PSL2(Z), or in SL2(Z) when ``exact_sign``."""
    if exact_sign:
        words = [word_letters(sl2_word(m)) for m in mats]
        return todd_coxeter(2, SL2_RELATORS, words, cap)
    words = [word_letters(psl2_word(m)) for m in mats]
    return todd_coxeter(2, PSL2_RELATORS, words, cap)


def verify_generates(
    N: int,
    mats: Sequence[ProjMat],
    cap: int | None = None,
    flavor: Flavor = Flavor.GAMMA0,
) -> GenerationResult:
    """Certify that ``mats`` generate Gamma0(N) (or the image of Gamma1(N)).

    Runs Todd-Coxeter in PSL2(Z); for Gamma0 the -I question is settled either
    by Q being in the list or by a second enumeration in SL2(Z).
    """
    sub = SubgroupFlavor(flavor, N)
    expected = expected_index(sub)
    cap = cap if cap is not None else 10 * expected
    res = GenerationResult(False, None, expected)
    bad = [str(m) for m in mats if not is_member(m, sub)]
    if bad:
        res.diagnostics.append(f"not in {sub}: " + ", ".join(bad))
        return res
    try:
        table = coset_table_for(mats, cap)
    except CosetCapExceeded:
        res.index_found = "exceeded-cap"
        res.diagnostics.append(f"coset cap {cap} exceeded (subgroup may have infinite index)")
        return res
    res.index_found = table.index
    if table.index != expected:
        res.diagnostics.append(f"PSL2 index {table.index} != expected {expected}")
        return res
    if flavor is Flavor.GAMMA1:
        res.minus_identity = "not applicable (projective image)"
        res.generates = True
        return res
    if any(m.entries == (-1, 0, 0, -1) for m in mats):
        res.minus_identity = "Q in list"
        res.generates = True
        return res
    try:
        sl2 = coset_table_for(mats, cap, exact_sign=True)
    except CosetCapExceeded:
        res.minus_identity = "SL2 enumeration exceeded cap"
        res.diagnostics.append("could not decide whether -I is generated")
        return res
    if sl2.index == expected:
        res.minus_identity = "-I generated (SL2 index matches)"
        res.generates = True
    else:
        res.minus_identity = f"-I not generated (SL2 index {sl2.index})"
        res.diagnostics.append(res.minus_identity)
    return res
