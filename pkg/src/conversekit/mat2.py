"""Exact 2x2 matrices modulo positive scalars, special matrices and words.

Every matrix is stored by its canonical integer representative: denominators
cleared, entries divided by their gcd, sign untouched.  So ``-M`` and ``M`` are
different values while ``2M`` and ``M`` are the same.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

SPECIAL_NAMES = ("P", "H", "Q", "W", "J", "L", "A", "B", "C", "D", "LIT")


class InvalidTokenError(ValueError):
    """A special-matrix token violates its parameter constraints."""


class MatrixParseError(ValueError):
    pass


def _canon(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    g = gcd(gcd(a, b), gcd(c, d))
    if g == 0:
        raise ValueError("zero matrix")
    if g == 1:
        return a, b, c, d
    return a // g, b // g, c // g, d // g


def _mul(x: tuple, y: tuple) -> tuple[int, int, int, int]:
    a, b, c, d = x
    e, f, g, h = y
    return _canon(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _adj(x: tuple) -> tuple[int, int, int, int]:
    a, b, c, d = x
    return d, -b, -c, a


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"non-exact matrix entry {x!r}")


@dataclass(frozen=True, slots=True)
class ProjMat:
    """Class of a real 2x2 matrix with positive determinant up to t > 0.

    The constructor accepts integers, Fractions or fraction strings and stores
    the canonical integer representative.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        ents = (self.a, self.b, self.c, self.d)
        if not all(type(e) is int for e in ents):
            fr = [_to_fraction(e) for e in ents]
            m = lcm(*(f.denominator for f in fr))
            ents = tuple(int(f * m) for f in fr)
        ents = _canon(*ents)
        if ents[0] * ents[3] - ents[1] * ents[2] <= 0:
            raise ValueError(f"determinant must be positive: {ents}")
        for name, v in zip("abcd", ents):
            object.__setattr__(self, name, v)

    @classmethod
    def _raw(cls, t: tuple) -> "ProjMat":
        # t is already canonical with positive determinant
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", t[0])
        object.__setattr__(obj, "b", t[1])
        object.__setattr__(obj, "c", t[2])
        object.__setattr__(obj, "d", t[3])
        return obj

    @classmethod
    def identity(cls) -> "ProjMat":
        return cls._raw((1, 0, 0, 1))

    @classmethod
    def parse(cls, text: str) -> "ProjMat":
        """Parse the ``"a,b;c,d"`` text format (entries may be ``p/q``)."""
        rows = text.strip().split(";")
        if len(rows) != 2:
            raise MatrixParseError(f"expected 'a,b;c,d', got {text!r}")
        try:
            ents = [Fraction(e.strip()) for row in rows for e in row.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixParseError(f"bad matrix entry in {text!r}: {exc}") from None
        if len(ents) != 4:
            raise MatrixParseError(f"expected 4 entries in {text!r}")
        try:
            return cls(*ents)
        except ValueError as exc:
            raise MatrixParseError(f"{text!r}: {exc}") from None

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __mul__(self, other: "ProjMat") -> "ProjMat":
        if not isinstance(other, ProjMat):
            return NotImplemented
        return ProjMat._raw(_mul(self.entries, other.entries))

    def inverse(self) -> "ProjMat":
        return ProjMat._raw(_adj(self.entries))

    def __pow__(self, n: int) -> "ProjMat":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = (1, 0, 0, 1)
        b = base.entries
        while n:
            if n & 1:
                out = _mul(out, b)
            b = _mul(b, b)
            n >>= 1
        return ProjMat._raw(out)

    def __neg__(self) -> "ProjMat":
        return ProjMat._raw((-self.a, -self.b, -self.c, -self.d))

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def is_pm_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __str__(self) -> str:
        return f"{self.a},{self.b};{self.c},{self.d}"

    def __repr__(self) -> str:
        return f"ProjMat({self})"


def canonicalize(m: ProjMat) -> ProjMat:
    """Idempotent by construction; kept as an explicit operation."""
    return ProjMat._raw(_canon(*m.entries))


# --------------------------------------------------------------------------
# special matrices

A18 = ProjMat(7, -1, 36, -5)
B18 = ProjMat(13, -8, 18, -11)
C20 = ProjMat(13, -2, 20, -3)
D24 = ProjMat(19, -4, 24, -5)
_FIXED = {"A": A18, "B": B18, "C": C20, "D": D24, "Q": ProjMat(-1, 0, 0, -1)}
_FIXED_LEVEL = {"A": 18, "B": 18, "C": 20, "D": 24}


@dataclass(frozen=True, slots=True)
class Token:
    """One letter of a special word: ``name`` with parameter and exponent."""

    name: str
    param: Union[Fraction, int, ProjMat, None] = None
    exp: int = 1

    def base(self) -> "Token":
        return Token(self.name, self.param, 1)

    def __pow__(self, n: int) -> "Token":
        return Token(self.name, self.param, self.exp * n)

    def __str__(self) -> str:
        if self.name == "LIT":
            s = f"M[{self.param}]"
        elif self.name == "P":
            s = f"P{self.param}"
        elif self.name in ("H", "W", "J", "L"):
            s = f"{self.name}{self.param}"
        else:
            s = self.name
        return s if self.exp == 1 else f"{s}^{self.exp}"


def P(r: Rational) -> Token:
    return Token("P", Fraction(r))


def H(n: int) -> Token:
    return Token("H", n)


def W(n: int) -> Token:
    return Token("W", n)


def J(n: int) -> Token:
    return Token("J", n)


def L(n: int) -> Token:
    return Token("L", n)


def LIT(m: ProjMat) -> Token:
    return Token("LIT", m)


Q = Token("Q")
A = Token("A")
B = Token("B")
C = Token("C")
D = Token("D")


def _special_base(tok: Token) -> ProjMat:
    name, p = tok.name, tok.param
    if name == "P":
        if not isinstance(p, (int, Fraction)):
            raise InvalidTokenError(f"{tok}: P needs a rational parameter")
        return ProjMat(1, Fraction(p), 0, 1)
    if name in ("H", "W", "J", "L"):
        if type(p) is not int or p < 1:
            raise InvalidTokenError(f"{tok}: {name} needs a positive integer level")
        if name == "H":
            return ProjMat(0, -1, p, 0)
        if name == "W":
            return ProjMat(1, 0, p, 1)
        if name == "J":
            if p % 2:
                raise InvalidTokenError(f"{tok}: J_N requires N even")
            # the 1/sqrt(2) prefactor is a positive scalar
            return ProjMat(-2, 1, p, -(p + 2) // 2)
        if p % 4:
            raise InvalidTokenError(f"{tok}: L_N requires 4 | N")
        return ProjMat(Fraction(p, 4) - 1, Fraction(-1, 2), Fraction(p, 2), -1)
    if name in _FIXED:
        if p is not None and name in _FIXED_LEVEL and p != _FIXED_LEVEL[name]:
            raise InvalidTokenError(f"{tok}: {name} only exists at level {_FIXED_LEVEL[name]}")
        return _FIXED[name]
    if name == "LIT":
        if not isinstance(p, ProjMat):
            raise InvalidTokenError(f"{tok}: literal token needs a matrix")
        return p
    raise InvalidTokenError(f"unknown token name {name!r}")


def make_special(tok: Token) -> ProjMat:
    """Canonical matrix of a token, exponent included."""
    if tok.exp == 0:
        raise InvalidTokenError(f"{tok}: exponent must be nonzero")
    return _special_base(tok) ** tok.exp


@dataclass(frozen=True)
class Word:
    tokens: tuple[Token, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.tokens + other.tokens)

    def inverse(self) -> "Word":
        return Word(tuple(t ** -1 for t in reversed(self.tokens)))

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.tokens)

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)


def eval_word(w: Union[Word, Iterable[Token]]) -> ProjMat:
    out = (1, 0, 0, 1)
    for tok in w:
        out = _mul(out, make_special(tok).entries)
    return ProjMat._raw(out)


# --------------------------------------------------------------------------
# word text format

_TOKEN_RE = re.compile(
    r"""
    (?P<lit>M\[(?P<mat>[^\]]*)\])
    | (?P<p>P_?(?P<r>-?\d+(?:/\d+)?)?)
    | (?P<lev>[HWJL])_?(?P<n>\d+)
    | (?P<fixed>[QABCD])
    """,
    re.VERBOSE,
)
_EXP_RE = re.compile(r"\^\(?(-?\d+)\)?")


def parse_token(text: str) -> Token:
    w = parse_word(text)
    if len(w) != 1:
        raise MatrixParseError(f"expected a single token, got {text!r}")
    return w.tokens[0]


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens; ``(...)^n`` groups are expanded.

    A bare ``P`` is read as ``P1``.
    """
    toks, pos = _parse_seq(text, 0, top=True)
    return Word(tuple(toks))


def _parse_seq(text: str, pos: int, top: bool) -> tuple[list[Token], int]:
    out: list[Token] = []
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch == "*" or ch == "·":
            pos += 1
            continue
        if ch == ")":
            if top:
                raise MatrixParseError(f"unbalanced ')' at {pos} in {text!r}")
            return out, pos + 1
        if ch == "(":
            inner, pos = _parse_seq(text, pos + 1, top=False)
            e, pos = _parse_exp(text, pos)
            block = inner if e > 0 else [t ** -1 for t in reversed(inner)]
            out.extend(block * abs(e))
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise MatrixParseError(f"bad token at {pos} in {text!r}")
        pos = m.end()
        if m.group("lit"):
            tok = Token("LIT", ProjMat.parse(m.group("mat")))
        elif m.group("p"):
            r = m.group("r")
            tok = Token("P", Fraction(r) if r is not None else Fraction(1))
        elif m.group("lev"):
            tok = Token(m.group("lev"), int(m.group("n")))
        else:
            tok = Token(m.group("fixed"))
        e, pos = _parse_exp(text, pos)
        tok = tok ** e
        _special_base(tok)  # validate parameters early
        out.append(tok)
    if not top:
        raise MatrixParseError(f"unbalanced '(' in {text!r}")
    return out, pos


def _parse_exp(text: str, pos: int) -> tuple[int, int]:
    m = _EXP_RE.match(text, pos)
    if not m:
        return 1, pos
    e = int(m.group(1))
    if e == 0:
        raise MatrixParseError(f"zero exponent at {pos} in {text!r}")
    return e, m.end()


# --------------------------------------------------------------------------
# bounded word search


def find_word(target: ProjMat, alphabet: Sequence[Token], max_len: int) -> Word | None:
    """Shortest (then alphabet-lexicographic) word over ``alphabet`` and inverses.

    Iterative deepening DFS; a per-iteration table of the smallest depth at
    which each canonical matrix was reached prunes repeated prefixes.  Returns
    None when no word of length <= max_len evaluates to ``target``.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    ident = (1, 0, 0, 1)
    goal = target.entries
    if goal == ident:
        return Word()

    letters: list[Token] = []
    mats: list[tuple] = []
    for tok in alphabet:
        for cand in (tok, tok ** -1):
            m = make_special(cand).entries
            if m not in mats:
                letters.append(cand)
                mats.append(m)
    inv_mats = [_adj(m) for m in mats]
    # prefix matrix X finishes in one step iff X == goal * letter^-1
    finish: dict[tuple, int] = {}
    for i, im in enumerate(inv_mats):
        finish.setdefault(_mul(goal, im), i)
    nl = len(letters)

    for depth in range(1, max_len + 1):
        seen: dict[tuple, int] = {ident: 0}
        path: list[int] = []

        def dfs(m: tuple, d: int) -> bool:
            if d == depth - 1:
                i = finish.get(m)
                if i is not None:
                    path.append(i)
                    return True
                return False
            for i in range(nl):
                child = _mul(m, mats[i])
                prev = seen.get(child)
                if prev is not None and prev <= d + 1:
                    continue
                seen[child] = d + 1
                path.append(i)
                if dfs(child, d + 1):
                    return True
                path.pop()
            return False

        if dfs(ident, 0):
            return Word(tuple(letters[i] for i in path))
    return None


# --------------------------------------------------------------------------
# matrix list files


def parse_matrix_list(text: str, where: str = "<list>") -> list[ProjMat]:
    """One "a,b;c,d" matrix per line; '#' starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(ProjMat.parse(line))
        except MatrixParseError as exc:
            raise MatrixParseError(f"{where}:{lineno}: {exc}") from None
    return out


def load_matrix_list(path) -> list[ProjMat]:
    from pathlib import Path

    p = Path(path)
    return parse_matrix_list(p.read_text(), str(p))
