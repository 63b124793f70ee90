"""Reidemeister-Schreier rewriting, integer Smith normal form, and
abelianization of finitely presented groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import NamedTuple, Sequence

from .cosets import CosetTable
from .presentation import Presentation
from .words import Word, concat, cyclic_canonical, cyclic_reduce, exponent_sums, invert, substitute

IntMatrix = list[list[int]]


class NotInSubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(self.torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in torsion):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"{torsion} is not a divisibility chain")
        object.__setattr__(self, "torsion", torsion)

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# --- Smith normal form -----------------------------------------------------

def smith_decomposition(m: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix]:
    """Diagonalize ``m`` by unimodular row and column operations.

    Returns the nonzero diagonal ``d_1 | d_2 | ...`` and the accumulated column
    transform ``V`` so that ``U * m * V`` is diagonal for some unimodular ``U``.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]
    a = [row for row in a if any(row)]
    rows = len(a)
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = _min_entry(a, t, rows, cols)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    q = _round_div(x, p)
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            rt = a[t]
            for j in range(t + 1, cols):
                x = rt[j]
                if x:
                    q = _round_div(x, p)
                    if q:
                        for row in a:
                            if row[t]:
                                row[j] -= q * row[t]
                        for row in v:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                bad = _non_multiple(a, t, rows, cols, p)
                if bad is None:
                    break
                # pull the offending row into the pivot row and retry
                rb, rt = a[bad], a[t]
                for j in range(t, cols):
                    rt[j] += rb[j]
                continue
            pivot = _min_entry(a, t, rows, cols)
            pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
            for row in v:
                row[t] = -row[t]
        diag.append(a[t][t])
        t += 1
        # drop rows that became zero to keep later sweeps short
        keep = a[:t] + [row for row in a[t:] if any(row[t:])]
        a, rows = keep, len(keep)
    return diag, v


def _round_div(x: int, p: int) -> int:
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1 if (r > 0) == (p > 0) else -1
    return q


def _min_entry(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


def _non_multiple(a, t, rows, cols, p):
    for i in range(t + 1, rows):
        row = a[i]
        for j in range(t + 1, cols):
            if row[j] % p:
                return i
    return None


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    return smith_decomposition(m)[0]


def relation_matrix(p: Presentation) -> IntMatrix:
    return [exponent_sums(r, p.n_generators) for r in p.relators]


def format_matrix(m: IntMatrix) -> str:
    """Row-major integer text: a ``rows cols`` header, then one row per line."""
    cols = len(m[0]) if m else 0
    return "\n".join([f"{len(m)} {cols}"] + [" ".join(map(str, row)) for row in m]) + "\n"


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    diag = smith_normal_form(relation_matrix(p))
    return AbelianInvariants(p.n_generators - len(diag), tuple(d for d in diag if d > 1))


# --- Reidemeister-Schreier -------------------------------------------------

class SchreierGenerator(NamedTuple):
    coset: int
    generator: int
    word: Word
    trivial: bool


def schreier_generators(p: Presentation, t: CosetTable) -> list[SchreierGenerator]:
    """All ``r_i g r_{ig}^-1``, ordered by coset then generator.

    With a Schreier transversal exactly the ``index - 1`` spanning-tree edges
    reduce to the empty word.
    """
    reps = t.representatives()
    out = []
    for i in range(t.index):
        for g in range(p.n_generators):
            j = t.rows[i][2 * g]
            w = concat(reps[i], Word.generator(g), invert(reps[j]))
            out.append(SchreierGenerator(i, g, w, not w))
    return out


class Rewriter:
    """Rewrites words of the subgroup into its Schreier generators."""

    def __init__(self, p: Presentation, t: CosetTable):
        self.presentation = p
        self.table = t
        self.generators = schreier_generators(p, t)
        self.nontrivial = [s for s in self.generators if not s.trivial]
        self.label: dict[tuple[int, int], int] = {}
        for k, s in enumerate(self.nontrivial):
            self.label[(s.coset, s.generator)] = k
        self.names = tuple(f"{p.generator_names[s.generator]}_{s.coset}" for s in self.nontrivial)

    def rewrite_from(self, start: int, w: Word) -> tuple[Word, int]:
        rows = self.table.rows
        label = self.label
        out = []
        c = start
        for g, sign in w.letters:
            if sign > 0:
                k = label.get((c, g))
                if k is not None:
                    out.append((k, 1))
                c = rows[c][2 * g]
            else:
                c = rows[c][2 * g + 1]
                k = label.get((c, g))
                if k is not None:
                    out.append((k, -1))
        return Word.from_letters(out), c

    def rewrite(self, w: Word) -> Word:
        out, end = self.rewrite_from(0, w)
        if end != 0:
            raise NotInSubgroupError("word is not in the subgroup")
        return out

    def expand(self, w: Word) -> Word:
        """Map a word in Schreier generators back to the ambient group."""
        return substitute(w, [s.word for s in self.nontrivial])

    def presentation_relators(self) -> list[Word]:
        rels = []
        for r in self.presentation.relators:
            for i in range(self.table.index):
                w, end = self.rewrite_from(i, r)
                assert end == i
                rels.append(w)
        return rels

    def subgroup_presentation(self) -> Presentation:
        return Presentation(self.names, tuple(_dedupe(self.presentation_relators())))


def _dedupe(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = cyclic_canonical(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def subgroup_presentation(p: Presentation, t: CosetTable) -> Presentation:
    return Rewriter(p, t).subgroup_presentation()


def rewrite_word(p: Presentation, t: CosetTable, w: Word) -> Word:
    return Rewriter(p, t).rewrite(w)


# --- light Tietze simplification ------------------------------------------

@dataclass(frozen=True)
class Simplification:
    presentation: Presentation
    images: tuple[Word, ...]

    def map_word(self, w: Word) -> Word:
        """Carry a word over the original generators to the simplified ones."""
        return substitute(w, self.images)


def simplify_presentation(p: Presentation, max_relator_length: int = 12) -> Simplification:
    """Drop duplicate relators and eliminate generators that occur exactly
    once in some relator of length at most ``max_relator_length``.

    Shortest relators are used first; no search over alternatives.
    """
    n = p.n_generators
    images = [Word.generator(g) for g in range(n)]
    alive = list(range(n))
    rels = _dedupe(list(p.relators))
    while True:
        choice = None
        for r in rels:
            if len(r) > max_relator_length or (choice and len(r) >= len(choice[0])):
                continue
            counts: dict[int, int] = {}
            for g, _ in r.letters:
                counts[g] = counts.get(g, 0) + 1
            single = [g for g, k in counts.items() if k == 1]
            if single:
                choice = (r, min(single))
        if choice is None:
            break
        r, g = choice
        letters = r.letters
        k = next(i for i, (h, _) in enumerate(letters) if h == g)
        sign = letters[k][1]
        rest = Word(letters[k + 1:] + letters[:k])
        # g^sign * rest = 1
        value = invert(rest) if sign > 0 else rest
        sub = [Word.generator(h) for h in range(n)]
        sub[g] = value
        rels = _dedupe([substitute(x, sub) for x in rels if x is not r])
        images = [substitute(img, sub) for img in images]
        alive.remove(g)
    renumber = {g: i for i, g in enumerate(alive)}
    relabel = [Word.generator(renumber[h]) if h in renumber else Word() for h in range(n)]
    new = Presentation(tuple(p.generator_names[g] for g in alive),
                       tuple(substitute(r, relabel) for r in rels))
    return Simplification(new, tuple(substitute(img, relabel) for img in images))


@dataclass(frozen=True)
class SubgroupPresentation:
    """A simplified presentation of a subgroup plus the map taking subgroup
    elements (as ambient words) to words in its generators."""

    rewriter: Rewriter
    simplification: Simplification

    @property
    def presentation(self) -> Presentation:
        return self.simplification.presentation

    def rewrite(self, w: Word) -> Word:
        return self.simplification.map_word(self.rewriter.rewrite(w))


def presentation_of_subgroup(p: Presentation, t: CosetTable,
                             max_relator_length: int = 40) -> SubgroupPresentation:
    r = Rewriter(p, t)
    return SubgroupPresentation(r, simplify_presentation(r.subgroup_presentation(), max_relator_length))
