"""Free-group words over a fixed, indexed generating set.

A letter is a pair ``(generator, sign)`` with ``sign`` in ``{+1, -1}``.  The
coset machinery addresses table columns instead, where generator ``g`` owns
column ``2*g`` and its inverse owns ``2*g + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Letter = tuple[int, int]


def column(letter: Letter) -> int:
    gen, sign = letter
    return 2 * gen + (0 if sign > 0 else 1)


def letter_of(col: int) -> Letter:
    return (col >> 1, -1 if col & 1 else 1)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for gen, sign in self.letters:
            if gen < 0 or sign not in (1, -1):
                raise ValueError(f"bad letter {(gen, sign)!r}")

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> Word:
        """Build a freely reduced word."""
        return cls(_reduce(letters))

    @classmethod
    def from_columns(cls, cols: Iterable[int]) -> Word:
        return cls.from_letters(letter_of(c) for c in cols)

    @classmethod
    def generator(cls, gen: int, exponent: int = 1) -> Word:
        sign = 1 if exponent > 0 else -1
        return cls(((gen, sign),) * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __pow__(self, n: int) -> Word:
        return power(self, n)

    def inverse(self) -> Word:
        return invert(self)

    def columns(self) -> tuple[int, ...]:
        return tuple(column(l) for l in self.letters)

    def is_reduced(self) -> bool:
        return all(a[0] != b[0] or a[1] != -b[1] for a, b in zip(self.letters, self.letters[1:]))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def format(self, names: list[str] | tuple[str, ...]) -> str:
        """Render with runs collapsed into powers, e.g. ``b^2*z^-1``."""
        if not self.letters:
            return "1"
        parts = []
        i = 0
        n = len(self.letters)
        while i < n:
            j = i
            while j < n and self.letters[j] == self.letters[i]:
                j += 1
            gen, sign = self.letters[i]
            exp = (j - i) * sign
            parts.append(names[gen] if exp == 1 else f"{names[gen]}^{exp}")
            i = j
        return "*".join(parts)


EMPTY = Word()


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


def free_reduce(w: Word) -> Word:
    if w.is_reduced():
        return w
    return Word(_reduce(w.letters))


def invert(w: Word) -> Word:
    return Word(tuple((g, -s) for g, s in reversed(w.letters)))


def concat(*words: Word) -> Word:
    return Word(_reduce(l for w in words for l in w.letters))


def power(w: Word, n: int) -> Word:
    w = free_reduce(w)
    if n < 0:
        w, n = invert(w), -n
    return concat(*([w] * n)) if n else EMPTY


def cyclic_reduce(w: Word) -> Word:
    """Strip matching inverse letters from both ends (conjugation)."""
    letters = free_reduce(w).letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return Word(letters[i:j + 1])


def cyclic_canonical(w: Word) -> Word:
    """Least rotation of ``w`` or its inverse; identifies relators up to
    cyclic permutation and inversion."""
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    for cand in (w.letters, invert(w).letters):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            key = tuple(column(l) for l in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return Word(best[1])


def substitute(w: Word, images: list[Word] | tuple[Word, ...]) -> Word:
    """Replace each generator ``g`` by ``images[g]``."""
    parts = []
    for gen, sign in w.letters:
        img = images[gen]
        parts.append(img if sign > 0 else invert(img))
    return concat(*parts)


def exponent_sums(w: Word, n_generators: int) -> list[int]:
    sums = [0] * n_generators
    for gen, sign in w.letters:
        sums[gen] += sign
    return sums
