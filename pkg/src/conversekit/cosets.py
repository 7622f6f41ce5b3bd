"""Todd-Coxeter coset enumeration (HLT strategy, no lookahead).

Letters are small integers; letter ``x`` has inverse ``x ^ 1``, so generator
``g`` is letter ``2g`` and its inverse ``2g + 1``.  Words are lists of letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class CosetCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"coset enumeration exceeded cap of {cap} live cosets")
        self.cap = cap


@dataclass(frozen=True)
class CosetTable:
    """Complete coset table; ``table[c][x]`` is the image of coset c under letter x.

    Coset 0 is the subgroup itself.
    """

    table: tuple[tuple[int, ...], ...]
    ngens: int

    @property
    def index(self) -> int:
        return len(self.table)

    def act(self, coset: int, word: Sequence[int]) -> int:
        for x in word:
            coset = self.table[coset][x]
        return coset

    def permutation(self, letter: int) -> tuple[int, ...]:
        return tuple(row[letter] for row in self.table)


class _Enumerator:
    def __init__(self, ngens: int, cap: int):
        self.nl = 2 * ngens
        self.ngens = ngens
        self.cap = cap
        self.table: list[list[int | None]] = [[None] * self.nl]
        self.parent: list[int] = [0]
        self.live = 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise CosetCapExceeded(self.cap)
        d = len(self.table)
        self.table.append([None] * self.nl)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        return d

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        tab = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.nl):
                f = tab[e][x]
                if f is None:
                    continue
                tab[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if tab[e1][x] is not None:
                    self._merge(f1, tab[e1][x], queue)
                elif tab[f1][x ^ 1] is not None:
                    self._merge(e1, tab[f1][x ^ 1], queue)
                else:
                    tab[e1][x] = f1
                    tab[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        tab = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and tab[f][word[i]] is not None:
                f = tab[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and tab[b][word[j] ^ 1] is not None:
                b = tab[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f][word[i]] = b
                tab[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def run(self, relators: Sequence[Sequence[int]], subgens: Sequence[Sequence[int]]) -> CosetTable:
        for w in subgens:
            if w:
                self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
            if self.alive(c):
                for x in range(self.nl):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1
        return self._compact()

    def _compact(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        renum = {c: i for i, c in enumerate(live)}
        rows = tuple(tuple(renum[self.rep(self.table[c][x])] for x in range(self.nl)) for c in live)
        return CosetTable(rows, self.ngens)


def todd_coxeter(
    ngens: int,
    relators: Sequence[Sequence[int]],
    subgroup_gens: Sequence[Sequence[int]],
    cap: int,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup_gens``.

    Raises CosetCapExceeded when more than ``cap`` cosets are live at once.
    """
    return _Enumerator(ngens, cap).run(relators, subgroup_gens)
