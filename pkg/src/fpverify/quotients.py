"""Quotients read off coset tables, and identification of small groups.

For a subgroup ``H`` the cosets fixed by ``H`` are exactly the cosets of
``N_G(H)``, and ``N_G(H)/H`` acts regularly on them.  That gives both the
normalizer index and a multiplication table of ``N_G(H)/H`` without ever
solving the word problem.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import NamedTuple

from .cosets import CosetTable
from .presentation import Presentation


class ConsistencyError(AssertionError):
    """A result contradicts group theory; the input table must be broken."""


@dataclass(frozen=True)
class CayleyTable:
    order: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        table = tuple(tuple(r) for r in self.table)
        n = self.order
        if len(table) != n or any(len(r) != n for r in table):
            raise ValueError("table shape does not match order")
        full = set(range(n))
        for r in table:
            if set(r) != full:
                raise ValueError("rows are not permutations of the labels")
        for j in range(n):
            if {table[i][j] for i in range(n)} != full:
                raise ValueError("columns are not permutations of the labels")
        if table[0] != tuple(range(n)) or any(table[i][0] != i for i in range(n)):
            raise ValueError("label 0 is not the identity")
        object.__setattr__(self, "table", table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def is_associative(self) -> bool:
        t = self.table
        r = range(self.order)
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def centralizer(self, a: int) -> list[int]:
        t = self.table
        return [b for b in range(self.order) if t[a][b] == t[b][a]]

    def center(self) -> list[int]:
        return [a for a in range(self.order) if len(self.centralizer(a)) == self.order]

    def closure(self, gens) -> list[int]:
        """Subgroup generated by ``gens``."""
        t = self.table
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = t[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(elems)

    def commutator(self, a: int, b: int) -> int:
        t = self.table
        return t[t[self.inverse(a)][self.inverse(b)]][t[a][b]]

    def derived_subgroup(self) -> list[int]:
        r = range(self.order)
        return self.closure({self.commutator(a, b) for a in r for b in r})

    def abelianization_order(self) -> int:
        return self.order // len(self.derived_subgroup())

    def relabel(self, perm: list[int]) -> CayleyTable:
        """Rename label ``a`` to ``perm[a]``; ``perm[0]`` must be 0."""
        n = self.order
        inv = [0] * n
        for a, b in enumerate(perm):
            inv[b] = a
        t = self.table
        return CayleyTable(n, tuple(tuple(perm[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n)))

    def export_text(self) -> str:
        return "\n".join([str(self.order)] + [" ".join(map(str, r)) for r in self.table]) + "\n"


class Fingerprint(NamedTuple):
    order: int
    abelian: bool
    element_orders: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    exponent: int
    squares: int
    centralizer_profile: tuple[tuple[int, int, int], ...]


def fingerprint(c: CayleyTable) -> Fingerprint:
    orders = [c.element_order(a) for a in range(c.order)]
    cent = [len(c.centralizer(a)) for a in range(c.order)]
    profile = Counter(zip(orders, cent))
    return Fingerprint(
        order=c.order,
        abelian=c.is_abelian(),
        element_orders=tuple(sorted(Counter(orders).items())),
        center_order=len(c.center()),
        derived_order=len(c.derived_subgroup()),
        exponent=lcm(*orders),
        squares=len({c.mul(a, a) for a in range(c.order)}),
        centralizer_profile=tuple(sorted((o, z, k) for (o, z), k in profile.items())),
    )


@dataclass(frozen=True)
class IsoClass:
    order: int
    name: str
    fingerprint: Fingerprint

    def to_dict(self) -> dict:
        fp = self.fingerprint._asdict()
        fp["element_orders"] = {str(o): k for o, k in self.fingerprint.element_orders}
        fp["centralizer_profile"] = [list(x) for x in self.fingerprint.centralizer_profile]
        return {"order": self.order, "name": self.name, "fingerprint": fp}


class UnknownGroupError(ValueError):
    pass


def identify(c: CayleyTable) -> IsoClass:
    from .smallgroups import MAX_ORDER, catalog

    if not 1 <= c.order <= MAX_ORDER:
        raise UnknownGroupError(f"order {c.order} is outside the catalog (1..{MAX_ORDER})")
    fp = fingerprint(c)
    for entry in catalog():
        if entry.fingerprint == fp:
            return IsoClass(c.order, entry.name, fp)
    raise UnknownGroupError("no catalog group matches; the table is not a group of this order")


def is_normal_in(c: CayleyTable, subset) -> bool:
    s = set(subset)
    if 0 not in s or any(c.mul(a, b) not in s for a in s for b in s):
        raise ValueError("subset is not a subgroup")
    t = c.table
    return all(t[t[c.inverse(g)][h]][g] in s for g in range(c.order) for h in s)


# --- normalizers via fixed cosets -----------------------------------------

def fixed_cosets(t: CosetTable) -> list[int]:
    return [i for i in range(t.index) if all(t.trace(i, h) == i for h in t.subgroup_generators)]


def normalizer_index(t: CosetTable) -> tuple[int, int]:
    """``(|N(H):H|, |G:N(H)|)``."""
    k = len(fixed_cosets(t))
    if t.index % k:
        raise ConsistencyError(f"{k} fixed cosets do not divide index {t.index}")
    return k, t.index // k


def quotient_on_fixed(p: Presentation, t: CosetTable) -> CayleyTable:
    """Multiplication table of ``N_G(H)/H``; label ``k`` is the ``k``-th fixed
    coset, so label 0 is ``H`` itself."""
    if p.n_generators != t.n_generators:
        raise ValueError("table and presentation disagree on the generators")
    fixed = fixed_cosets(t)
    pos = {f: k for k, f in enumerate(fixed)}
    reps = t.representatives()
    rows = []
    for i in fixed:
        row = []
        for j in fixed:
            prod = t.trace(i, reps[j])
            if prod not in pos:
                raise ConsistencyError(f"coset {i}*{j} = {prod} left the fixed cosets")
            row.append(pos[prod])
        rows.append(tuple(row))
    return CayleyTable(len(fixed), tuple(rows))


def cayley_table(p: Presentation, t: CosetTable) -> CayleyTable:
    """The quotient ``G/H`` of a normal subgroup table."""
    if not t.is_normal():
        raise ValueError("subgroup is not normal")
    return quotient_on_fixed(p, t)
