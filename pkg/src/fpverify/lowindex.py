"""Low-index subgroups: one coset table per conjugacy class of subgroups of
bounded index, found by backtracking over partial coset tables."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import gcd

from .cosets import CosetTable, table_from_permutations
from .homology import relation_matrix, schreier_generators, smith_decomposition
from .perms import Permutation
from .presentation import Presentation
from .words import Word, cyclic_reduce

log = logging.getLogger(__name__)


class SearchBudgetExhausted(RuntimeError):
    """Raised when the node budget runs out; ``partial`` holds what was found."""

    def __init__(self, partial: list[CosetTable], nodes: int):
        super().__init__(f"node budget exhausted after {nodes} nodes ({len(partial)} classes found)")
        self.partial = partial
        self.nodes = nodes


@dataclass(frozen=True)
class SubgroupSearchOptions:
    max_index: int
    exact_index: int | None = None
    normal_only: bool = False
    node_budget: int | None = None

    def __post_init__(self):
        if self.max_index < 1:
            raise ValueError("max_index must be at least 1")
        if self.exact_index is not None and not 1 <= self.exact_index <= self.max_index:
            raise ValueError("exact_index must lie in 1..max_index")


# Long relators rarely close a cycle before the table is nearly complete, and
# scanning them dominates the cost of each node.  They are only checked on
# complete tables.
DEDUCTION_LENGTH = 16


class _Search:
    def __init__(self, p: Presentation, opts: SubgroupSearchOptions):
        self.ngens = p.n_generators
        self.ncols = 2 * self.ngens
        self.limit = opts.exact_index or opts.max_index
        self.opts = opts
        rels = [c for c in (cyclic_reduce(r).columns() for r in p.relators) if c]
        self.relators = sorted(set(rels), key=lambda r: (len(r), r))
        conj: list[set[tuple[int, ...]]] = [set() for _ in range(self.ncols)]
        for r in self.relators:
            if len(r) > DEDUCTION_LENGTH:
                break
            inv = tuple(x ^ 1 for x in reversed(r))
            for w in (r, inv):
                for k in range(len(w)):
                    rot = w[k:] + w[:k]
                    conj[rot[0]].add(rot)
        self.conjugates = [sorted(c, key=lambda w: (len(w), w)) for c in conj]
        self.table = [[-1] * self.ncols for _ in range(self.limit)]
        self.n = 1
        self.trail: list[tuple[int, int]] = []
        self.nodes = 0
        self.found: list[tuple[tuple[int, ...], ...]] = []

    def assign(self, c: int, x: int, d: int) -> None:
        t = self.table
        t[c][x] = d
        t[d][x ^ 1] = c
        self.trail.append((c, x))
        self.trail.append((d, x ^ 1))

    def undo(self, mark: int) -> None:
        t = self.table
        trail = self.trail
        while len(trail) > mark:
            c, x = trail.pop()
            t[c][x] = -1

    def scan(self, c: int, w: tuple[int, ...], queue: list[tuple[int, int]]) -> bool:
        t = self.table
        f, i = c, 0
        b, j = c, len(w) - 1
        while i <= j and t[f][w[i]] >= 0:
            f = t[f][w[i]]
            i += 1
        if i > j:
            return f == c
        while j >= i and t[b][w[j] ^ 1] >= 0:
            b = t[b][w[j] ^ 1]
            j -= 1
        if j < i:
            return f == b
        if i == j:
            self.assign(f, w[i], b)
            queue.append((f, w[i]))
        return True

    def deduce(self, queue: list[tuple[int, int]]) -> bool:
        t = self.table
        while queue:
            a, x = queue.pop()
            for w in self.conjugates[x]:
                if not self.scan(a, w, queue):
                    return False
            b = t[a][x]
            for w in self.conjugates[x ^ 1]:
                if not self.scan(b, w, queue):
                    return False
        return True

    def canonical(self) -> bool:
        """False when renumbering from some other coset gives a smaller table,
        i.e. a conjugate subgroup comes first in the search order.

        In normal-only mode any definite difference is fatal: a normal
        subgroup's table is unchanged by renumbering from every coset.
        """
        strict = self.opts.normal_only
        t = self.table
        n = self.n
        ncols = self.ncols
        for alpha in range(1, n):
            label = {alpha: 0}
            order = [alpha]
            verdict = 0
            for row in range(n):
                if row >= len(order):
                    break
                src = t[order[row]]
                own = t[row]
                for x in range(ncols):
                    d, e = src[x], own[x]
                    if d < 0 or e < 0:
                        verdict = 2
                        break
                    if d not in label:
                        label[d] = len(order)
                        order.append(d)
                    ld = label[d]
                    if ld != e:
                        verdict = -1 if ld < e else 1
                        break
                if verdict:
                    break
            if verdict == -1 or (strict and verdict == 1):
                return False
        return True

    def first_gap(self) -> tuple[int, int] | None:
        t = self.table
        for c in range(self.n):
            row = t[c]
            for x in range(self.ncols):
                if row[x] < 0:
                    return c, x
        return None

    def run(self) -> None:
        self.visit()

    def visit(self) -> None:
        gap = self.first_gap()
        if gap is None:
            self.record()
            return
        c, x = gap
        t = self.table
        targets = [d for d in range(self.n) if t[d][x ^ 1] < 0]
        if self.n < self.limit:
            targets.append(self.n)
        for d in targets:
            self.nodes += 1
            budget = self.opts.node_budget
            if budget is not None and self.nodes > budget:
                raise SearchBudgetExhausted(self.sorted_found(), self.nodes)
            mark = len(self.trail)
            n_saved = self.n
            if d == self.n:
                self.n += 1
            self.assign(c, x, d)
            if self.deduce([(c, x)]) and self.canonical():
                self.visit()
            self.undo(mark)
            self.n = n_saved

    def record(self) -> None:
        n = self.n
        if self.opts.exact_index is not None and n != self.opts.exact_index:
            return
        t = self.table
        for r in self.relators:
            for c in range(n):
                f = c
                for x in r:
                    f = t[f][x]
                if f != c:
                    return
        rows = tuple(tuple(t[c]) for c in range(n))
        if self.opts.normal_only and not _regular(rows):
            return
        self.found.append(rows)

    def sorted_found(self) -> list[CosetTable]:
        return [self.make_table(rows) for rows in sorted(self.found, key=lambda r: (len(r), r))]

    def make_table(self, rows) -> CosetTable:
        return _with_schreier_generators(self.ngens, rows)


def _regular(rows) -> bool:
    from .cosets import standardize
    return all(standardize([list(r) for r in rows], a) == rows for a in range(1, len(rows)))


def _with_schreier_generators(ngens: int, rows) -> CosetTable:
    bare = CosetTable(ngens, rows)
    gens = tuple(s.word for s in schreier_generators(_dummy(ngens), bare) if not s.trivial)
    return CosetTable(ngens, rows, gens)


def _dummy(ngens: int) -> Presentation:
    return Presentation(tuple(f"x{i}" for i in range(ngens)))


def low_index_subgroups(p: Presentation, opts: SubgroupSearchOptions) -> list[CosetTable]:
    """Conjugacy classes of subgroups of index at most ``opts.max_index``.

    Each class is represented by its least standardized table; the list is
    sorted by index and then by the flattened table.  Subgroup generators of
    each returned table are its nontrivial Schreier generators.
    """
    s = _Search(p, opts)
    s.run()
    log.debug("low-index search: %d nodes, %d classes", s.nodes, len(s.found))
    return s.sorted_found()


def classes_containing(p: Presentation, classes: list[CosetTable], gens: list[Word]) -> list[int]:
    for w in gens:
        if w.max_generator() >= p.n_generators:
            raise ValueError("word refers to an unknown generator")
    return [i for i, t in enumerate(classes) if all(t.contains(w) for w in gens)]


# --- normal subgroups with abelian quotient --------------------------------

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def every_group_abelian(n: int) -> bool:
    """True iff every group of order ``n`` is abelian: ``n`` is cube-free and
    no prime factor p divides q^k - 1 for a prime power q^k dividing n."""
    f = _factorize(n)
    if any(a > 2 for a in f.values()):
        return False
    for p in f:
        for q, a in f.items():
            if any((q ** k - 1) % p == 0 for k in range(1, a + 1)):
                return False
    return True


def _hermite_forms(k: int, det: int):
    """Row-style Hermite normal forms of full-rank k x k integer matrices
    with the given determinant; each is one sublattice of Z^k of that index."""
    def diagonals(k, n):
        if k == 0:
            if n == 1:
                yield ()
            return
        for d in range(1, n + 1):
            if n % d == 0:
                for rest in diagonals(k - 1, n // d):
                    yield (d,) + rest

    for diag in diagonals(k, det):
        slots = [(i, j) for j in range(k) for i in range(j)]
        ranges = [range(diag[j]) for i, j in slots]
        for vals in itertools.product(*ranges):
            h = [[0] * k for _ in range(k)]
            for i in range(k):
                h[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                h[i][j] = v
            yield h


def _reduce(v: list[int], h: list[list[int]]) -> tuple[int, ...]:
    v = list(v)
    for j, row in enumerate(h):
        q = v[j] // row[j]
        if q:
            for l in range(j, len(v)):
                v[l] -= q * row[l]
    return tuple(v)


def abelian_quotient_subgroups(p: Presentation, index: int) -> list[CosetTable]:
    """All normal subgroups of the given index whose quotient is abelian,
    as pullbacks of index-``index`` subgroups of the abelianization."""
    diag, v = smith_decomposition(relation_matrix(p))
    n = p.n_generators
    moduli = [diag[j] if j < len(diag) else 0 for j in range(n)]
    keep = [j for j in range(n) if gcd(moduli[j], index) > 1]
    mods = [gcd(moduli[j], index) for j in keep]
    images = [[v[g][j] for j in keep] for g in range(n)]
    k = len(keep)
    tables = []
    for h in _hermite_forms(k, index):
        # the lattice must contain every relation m_j e_j of the mod-index quotient
        if any(any(_reduce([m if l == j else 0 for l in range(k)], h)) for j, m in enumerate(mods)):
            continue
        points = sorted(set(_cosets(h)))
        pos = {pt: i for i, pt in enumerate(points)}
        perms = []
        for g in range(n):
            img = [pos[_reduce([a + b for a, b in zip(pt, images[g])], h)] for pt in points]
            perms.append(Permutation(tuple(img)))
        t = table_from_permutations(perms)
        tables.append(_with_schreier_generators(n, t.rows))
    tables.sort(key=lambda t: t.flat())
    return tables


def _cosets(h):
    return itertools.product(*(range(row[j]) for j, row in enumerate(h)))


def normal_subgroups_of_index(p: Presentation, index: int, method: str = "abelian",
                              node_budget: int | None = None) -> list[CosetTable]:
    """Normal subgroups of exactly ``index``.

    ``method="abelian"`` is only complete when every group of that order is
    abelian; ``method="backtrack"`` runs the general search.
    """
    if method == "abelian":
        if not every_group_abelian(index):
            raise ValueError(f"groups of order {index} need not be abelian")
        return abelian_quotient_subgroups(p, index)
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")
    opts = SubgroupSearchOptions(index, exact_index=index, normal_only=True, node_budget=node_budget)
    return low_index_subgroups(p, opts)
