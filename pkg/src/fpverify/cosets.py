"""Todd-Coxeter coset enumeration and operations on complete coset tables.

Cosets are right cosets ``Hg`` and words act on the right.  Column ``2*g``
holds the action of generator ``g`` and column ``2*g + 1`` that of its
inverse.  Completed tables are always standardized: cosets are renumbered in
order of first appearance when the rows are read top to bottom and each row
left to right.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

from .perms import Permutation
from .presentation import Presentation
from .words import Word, cyclic_reduce, letter_of

log = logging.getLogger(__name__)

Strategy = Literal["hlt", "felsch"]


class EnumerationLimitExceeded(RuntimeError):
    """The enumeration needed more than ``max_cosets`` live cosets."""


class _Full(Exception):
    pass


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = 1_000_000
    strategy: Strategy = "hlt"

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")
        if self.strategy not in ("hlt", "felsch"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


@dataclass(frozen=True)
class CosetTable:
    n_generators: int
    rows: tuple[tuple[int, ...], ...]
    subgroup_generators: tuple[Word, ...] = ()
    status: Literal["partial", "complete"] = "complete"

    @property
    def index(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def trace(self, start: int, w: Word) -> int:
        rows = self.rows
        c = start
        for gen, sign in w.letters:
            c = rows[c][2 * gen + (0 if sign > 0 else 1)]
        return c

    def contains(self, w: Word) -> bool:
        return self.trace(0, w) == 0

    def coset_action(self) -> list[Permutation]:
        return [Permutation(tuple(row[2 * g] for row in self.rows)) for g in range(self.n_generators)]

    def representatives(self) -> list[Word]:
        reps: list[Word | None] = [None] * self.index
        reps[0] = Word()
        for c, row in enumerate(self.rows):
            for x, d in enumerate(row):
                if reps[d] is None:
                    reps[d] = Word(reps[c].letters + (letter_of(x),))
        return reps

    def is_normal(self) -> bool:
        return all(self.trace(i, h) == i for h in self.subgroup_generators for i in range(self.index))

    def standardized(self, order: Literal["lenlex", "semilenlex"] = "lenlex") -> CosetTable:
        rows = standardize([list(r) for r in self.rows], 0, order)
        return CosetTable(self.n_generators, rows, self.subgroup_generators, self.status)

    def flat(self) -> tuple[int, ...]:
        return tuple(e for row in self.rows for e in row)

    def column_names(self, names: tuple[str, ...] | list[str] | None = None) -> list[str]:
        names = names or [f"g{g + 1}" for g in range(self.n_generators)]
        return [n + s for n in names for s in ("", "'")]

    def export_text(self, names: tuple[str, ...] | list[str] | None = None) -> str:
        lines = ["# " + " ".join(self.column_names(names))]
        lines += [" ".join(map(str, row)) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_dict(self, names: tuple[str, ...] | list[str] | None = None) -> dict:
        return {
            "index": self.index,
            "columns": self.column_names(names),
            "rows": [list(r) for r in self.rows],
        }

    def check(self, relators: tuple[Word, ...] | list[Word] = ()) -> None:
        """Raise ``AssertionError`` unless the table is complete and valid."""
        n = self.index
        for i, row in enumerate(self.rows):
            assert len(row) == 2 * self.n_generators
            for x, j in enumerate(row):
                assert 0 <= j < n, f"undefined entry ({i}, {x})"
                assert self.rows[j][x ^ 1] == i, f"inconsistent entry ({i}, {x})"
        for r in relators:
            for i in range(n):
                assert self.trace(i, r) == i, f"relator open at coset {i}"
        for h in self.subgroup_generators:
            assert self.trace(0, h) == 0, "subgroup generator moves coset 0"


def trace(t: CosetTable, start: int, w: Word) -> int:
    return t.trace(start, w)


def contains(t: CosetTable, w: Word) -> bool:
    return t.contains(w)


def coset_action(t: CosetTable) -> list[Permutation]:
    return t.coset_action()


def representatives(t: CosetTable) -> list[Word]:
    return t.representatives()


def is_normal(t: CosetTable) -> bool:
    return t.is_normal()


def standardize(rows: list[list[int]], start: int = 0,
                order: Literal["lenlex", "semilenlex"] = "lenlex") -> tuple[tuple[int, ...], ...]:
    """Renumber the cosets reachable from ``start`` in first-appearance order.

    ``lenlex`` scans the columns g1, g1^-1, g2, g2^-1, ...; ``semilenlex``
    scans only g1, g2, ..., which reaches every coset of a complete table.
    """
    step = 1 if order == "lenlex" else 2
    label = {start: 0}
    seen = [start]
    for c in seen:
        for d in rows[c][::step]:
            if d not in label:
                label[d] = len(seen)
                seen.append(d)
    return tuple(tuple(label[d] for d in rows[c]) for c in seen)


def table_from_permutations(perms: list[Permutation], subgroup_generators=()) -> CosetTable:
    """Coset table of a transitive action, standardized from point 0."""
    n = perms[0].degree if perms else 1
    inverses = [p.inverse() for p in perms]
    rows = [[x for p, q in zip(perms, inverses) for x in (p[i], q[i])] for i in range(n)]
    std = standardize(rows)
    if len(std) != n:
        raise ValueError("action is not transitive")
    return CosetTable(len(perms), std, tuple(subgroup_generators))


class _Enumeration:
    def __init__(self, p: Presentation, subgens: list[Word], limits: EnumerationLimits):
        self.ncols = 2 * p.n_generators
        self.relators = [cyclic_reduce(r).columns() for r in p.relators]
        self.relators = [r for r in self.relators if r]
        self.subgens = [w.columns() for w in subgens]
        self.max_cosets = limits.max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.deductions: list[tuple[int, int]] = []
        self.collapsed = False

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.max_cosets:
            raise _Full
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.deductions.append((c, x))
        return d

    def scan(self, c: int, w: tuple[int, ...], fill: bool) -> None:
        t = self.table
        f, i = c, 0
        b, j = c, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            self.live -= 1
            queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        self.collapsed = True
        t = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            row = t[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] >= 0:
                    self.merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] >= 0:
                    self.merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1
                    self.deductions.append((e1, x))

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for r in self.relators:
                self.scan(c, r, fill=False)
                if not self.is_live(c):
                    break

    # -- strategies --------------------------------------------------------

    def run_hlt(self) -> None:
        for w in self.subgens:
            self._with_lookahead(lambda: self.scan(0, w, fill=True))
        c = 0
        while c < len(self.table):
            if self.is_live(c):
                try:
                    self._hlt_step(c)
                except _Full:
                    self._lookahead_or_fail()
                    continue
            c += 1
            if c % 4096 == 0:
                self.deductions.clear()

    def _hlt_step(self, c: int) -> None:
        for r in self.relators:
            self.scan(c, r, fill=True)
            if not self.is_live(c):
                return
        row = self.table[c]
        for x in range(self.ncols):
            if row[x] < 0:
                self.define(c, x)

    def _with_lookahead(self, action) -> None:
        while True:
            try:
                action()
                return
            except _Full:
                self._lookahead_or_fail()

    def _lookahead_or_fail(self) -> None:
        before = self.live
        self.lookahead()
        log.debug("lookahead: %d -> %d live cosets", before, self.live)
        if self.live >= self.max_cosets:
            raise EnumerationLimitExceeded(
                f"coset enumeration exceeded {self.max_cosets} live cosets")

    def run_felsch(self) -> None:
        conjugates: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in self.relators:
            inv = tuple(x ^ 1 for x in reversed(r))
            for w in (r, inv):
                for k in range(len(w)):
                    rot = w[k:] + w[:k]
                    if rot not in seen:
                        seen.add(rot)
                        conjugates[rot[0]].append(rot)
        self.conjugates = conjugates
        try:
            for w in self.subgens:
                self.scan(0, w, fill=True)
                self._process_deductions()
            c = 0
            while c < len(self.table):
                for x in range(self.ncols):
                    if not self.is_live(c):
                        break
                    if self.table[c][x] < 0:
                        self.define(c, x)
                        self._process_deductions()
                c += 1
        except _Full:
            raise EnumerationLimitExceeded(
                f"coset enumeration exceeded {self.max_cosets} live cosets") from None

    def _process_deductions(self) -> None:
        while self.deductions:
            if self.collapsed:
                self.deductions.clear()
                self.collapsed = False
                self._full_scan()
                continue
            a, x = self.deductions.pop()
            if not self.is_live(a):
                continue
            for w in self.conjugates[x]:
                self.scan(a, w, fill=False)
                if not self.is_live(a):
                    break
            b = self.table[a][x]
            if b >= 0 and self.is_live(b):
                for w in self.conjugates[x ^ 1]:
                    self.scan(b, w, fill=False)
                    if not self.is_live(b):
                        break

    def _full_scan(self) -> None:
        while True:
            self.deductions.clear()
            self.collapsed = False
            self.lookahead()
            if not self.deductions and not self.collapsed:
                return

    def result(self) -> tuple[tuple[int, ...], ...]:
        return standardize(self.table)


def todd_coxeter(p: Presentation, subgens: list[Word] | tuple[Word, ...] = (),
                 limits: EnumerationLimits | None = None) -> CosetTable:
    """Enumerate the right cosets of ``<subgens>`` in the group ``p``."""
    limits = limits or EnumerationLimits()
    subgens = tuple(subgens)
    for w in subgens:
        if w.max_generator() >= p.n_generators:
            raise ValueError("subgroup generator refers to an unknown generator")
    e = _Enumeration(p, list(subgens), limits)
    if limits.strategy == "hlt":
        e.run_hlt()
    else:
        e.run_felsch()
    table = CosetTable(p.n_generators, e.result(), subgens)
    table.check(p.relators)
    log.debug("enumeration finished: index %d, %d cosets defined", table.index, len(e.table))
    return table
