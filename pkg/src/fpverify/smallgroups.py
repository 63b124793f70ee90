"""Catalog of all groups of order at most 24, built from presentations.

Abelian groups are generated from their invariant factors; the nonabelian
ones are listed by hand.  Each entry is enumerated once, on first use, to get
its multiplication table and fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .cosets import todd_coxeter
from .presentation import Presentation, parse_presentation

MAX_ORDER = 24

# number of isomorphism classes of groups of order n (OEIS A000001)
GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15,
}


def _comm(x: str, y: str) -> str:
    return f"{x}*{y}*{x}^-1*{y}^-1"


def _dihedral(n: int) -> str:
    return f"< a, b | a^{n // 2}, b^2, (a*b)^2 >"


def _times(rels: str, gens: str, extra: str, new: str, order: int) -> str:
    """Direct product of ``<gens | rels>`` with a cyclic group ``<new>``."""
    comms = ", ".join(_comm(g, new) for g in gens.split(", "))
    return f"< {gens}, {new} | {rels}, {new}^{order}, {comms}{extra} >"


_D8 = "a^4, b^2, (a*b)^2"
_Q8 = "a^4, b^2*a^-2, b^-1*a*b*a"
_S3 = "a^3, b^2, (a*b)^2"

NONABELIAN = [
    ("S3", _dihedral(6)),
    ("D8", _dihedral(8)),
    ("Q8", f"< a, b | {_Q8} >"),
    ("D10", _dihedral(10)),
    ("A4", "< a, b | a^2, b^3, (a*b)^3 >"),
    ("D12", _dihedral(12)),
    ("Dic3", "< a, b | a^3, b^4, b^-1*a*b*a >"),
    ("D14", _dihedral(14)),
    ("Z2^2:Z4", f"< a, b, c | a^4, b^2, c^2, {_comm('a', 'b')}, {_comm('b', 'c')}, c*a*c^-1*b^-1*a^-1 >"),
    ("Z4:Z4", "< a, b | a^4, b^4, b^-1*a*b*a >"),
    ("M16", "< a, b | a^8, b^2, b*a*b^-1*a^-5 >"),
    ("D16", _dihedral(16)),
    ("SD16", "< a, b | a^8, b^2, b*a*b^-1*a^-3 >"),
    ("Q16", "< a, b | a^8, b^2*a^-4, b^-1*a*b*a >"),
    ("D8xZ2", _times(_D8, "a, b", "", "c", 2)),
    ("Q8xZ2", _times(_Q8, "a, b", "", "c", 2)),
    ("Z4oD8", f"< a, b, c | {_D8}, c^2*a^-2, {_comm('a', 'c')}, {_comm('b', 'c')} >"),
    ("D18", _dihedral(18)),
    ("S3xZ3", _times(_S3, "a, b", "", "c", 3)),
    ("(Z3xZ3):Z2", f"< a, b, c | a^3, b^3, {_comm('a', 'b')}, c^2, (c*a)^2, (c*b)^2 >"),
    ("D20", _dihedral(20)),
    ("Dic5", "< a, b | a^5, b^4, b^-1*a*b*a >"),
    ("F20", "< a, b | a^5, b^4, b^-1*a*b*a^-2 >"),
    ("Z7:Z3", "< a, b | a^7, b^3, b^-1*a*b*a^-2 >"),
    ("D22", _dihedral(22)),
    ("Z3:Z8", "< a, b | a^3, b^8, b^-1*a*b*a >"),
    ("SL(2,3)", "< a, b | a^3*b^-3, a^3*(a*b)^-2 >"),
    ("Dic6", "< a, b | a^12, b^2*a^-6, b^-1*a*b*a >"),
    ("S3xZ4", _times(_S3, "a, b", "", "c", 4)),
    ("D24", _dihedral(24)),
    ("Dic3xZ2", _times("a^3, b^4, b^-1*a*b*a", "a, b", "", "c", 2)),
    ("Z3:D8", f"< a, b, c | a^3, b^4, c^2, (b*c)^2, b^-1*a*b*a, {_comm('a', 'c')} >"),
    ("D8xZ3", _times(_D8, "a, b", "", "c", 3)),
    ("Q8xZ3", _times(_Q8, "a, b", "", "c", 3)),
    ("S4", "< a, b | a^4, b^2, (a*b)^3 >"),
    ("A4xZ2", _times("a^2, b^3, (a*b)^3", "a, b", "", "c", 2)),
    ("S3xZ2^2", f"< a, b, c, d | {_S3}, c^2, d^2, {_comm('c', 'd')}, {_comm('a', 'c')}, "
                f"{_comm('b', 'c')}, {_comm('a', 'd')}, {_comm('b', 'd')} >"),
]


def invariant_factor_lists(n: int) -> list[tuple[int, ...]]:
    """All chains ``d_1 | d_2 | ... | d_k`` with product ``n`` and each ``d_i >= 2``."""
    out = []

    def extend(chain: tuple[int, ...], rest: int):
        if rest == 1:
            out.append(chain)
            return
        lo = chain[-1] if chain else 2
        for d in range(lo, rest + 1):
            if rest % d == 0 and (not chain or d % chain[-1] == 0):
                extend(chain + (d,), rest // d)

    extend((), n)
    return out


def abelian_name(factors: tuple[int, ...]) -> str:
    if not factors:
        return "1"
    if factors == (2, 2):
        return "V4"
    return "x".join(f"Z{d}" for d in reversed(factors))


def abelian_presentation(factors: tuple[int, ...]) -> str:
    gens = [f"x{i}" for i in range(len(factors))]
    rels = [f"{g}^{d}" for g, d in zip(gens, factors)]
    rels += [_comm(gens[i], gens[j]) for i in range(len(gens)) for j in range(i)]
    return f"< {', '.join(gens)} | {', '.join(rels)} >"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: Presentation
    table: "CayleyTable"
    fingerprint: "Fingerprint"

    @property
    def order(self) -> int:
        return self.table.order


@cache
def catalog() -> tuple[CatalogEntry, ...]:
    from .quotients import fingerprint, quotient_on_fixed

    entries = []
    sources = [(abelian_name(f), abelian_presentation(f))
               for n in range(1, MAX_ORDER + 1) for f in invariant_factor_lists(n)]
    sources += NONABELIAN
    for name, text in sources:
        p = parse_presentation(text) if text != "< | >" else Presentation(())
        t = todd_coxeter(p, [])
        c = quotient_on_fixed(p, t)
        entries.append(CatalogEntry(name, p, c, fingerprint(c)))
    entries.sort(key=lambda e: e.order)
    return tuple(entries)


def lookup(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(name)
