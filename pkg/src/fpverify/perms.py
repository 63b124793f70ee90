"""Permutations acting on the right, and a deterministic Schreier-Sims."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm


@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the image of point ``i``.

    Products compose left to right: ``(p * q)[i] == q[p[i]]``, matching the
    right action of words on cosets.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a bijection on 0..n-1")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: tuple[int, ...]) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        o = other.images
        return Permutation._raw(tuple(o[i] for i in self.images))

    def __pow__(self, n: int) -> Permutation:
        base = self if n >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> Permutation:
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"


def _orbit_transversal(point: int, gens: list[Permutation], degree: int) -> dict[int, Permutation]:
    trans = {point: Permutation.identity(degree)}
    queue = [point]
    for b in queue:
        u = trans[b]
        for s in gens:
            c = s[b]
            if c not in trans:
                trans[c] = u * s
                queue.append(c)
    return trans


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    New base points are always the smallest point moved by the element that
    forced the extension.
    """

    def __init__(self, gens: list[Permutation], degree: int | None = None):
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("permutations on different point sets")
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Permutation] = []
        self.transversals: list[dict[int, Permutation]] = []
        for g in gens:
            if g.is_identity() or g in self.strong:
                continue
            self.strong.append(g)
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved(g))
        for i in range(len(self.base)):
            self.transversals.append(_orbit_transversal(self.base[i], self._level_gens(i), degree))
        self._complete()

    def _level_gens(self, i: int) -> list[Permutation]:
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            b = g[self.base[i]]
            trans = self.transversals[i]
            if b not in trans:
                return g, i
            g = g * trans[b].inverse()
        return g, len(self.base)

    def _complete(self):
        i = len(self.base) - 1
        while i >= 0:
            extended = False
            trans = self.transversals[i]
            for b, u in list(trans.items()):
                for s in self._level_gens(i):
                    sg = u * s * trans[s[b]].inverse()
                    h, j = self.strip(sg, i + 1)
                    if j < len(self.base) or not h.is_identity():
                        if j == len(self.base):
                            self.base.append(_first_moved(h))
                            self.transversals.append({})
                        self.strong.append(h)
                        for level in range(i + 1, j + 1):
                            self.transversals[level] = _orbit_transversal(
                                self.base[level], self._level_gens(level), self.degree)
                        i = j
                        extended = True
                        break
                if extended:
                    break
            if not extended:
                i -= 1

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, g: Permutation) -> bool:
        h, j = self.strip(g)
        return j == len(self.base) and h.is_identity()


def _first_moved(g: Permutation) -> int:
    for i, j in enumerate(g.images):
        if i != j:
            return i
    raise ValueError("identity moves no point")


def group_order(gens: list[Permutation], degree: int | None = None) -> int:
    if not gens and degree is None:
        return 1
    return StabilizerChain(gens, degree).order()
