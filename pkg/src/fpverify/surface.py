"""Numerical invariants of surfaces: unramified covers, geometric genus, and
the degree bound for generically finite canonical maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SurfaceInvariants:
    chi: int
    q: int
    pg: int
    K2: int

    def __post_init__(self):
        if self.chi != self.pg - self.q + 1:
            raise ValueError(f"chi = {self.chi} but pg - q + 1 = {self.pg - self.q + 1}")
        if self.q < 0 or self.pg < 0:
            raise ValueError("q and pg must be non-negative")

    @property
    def is_ball_quotient_equality(self) -> bool:
        return self.K2 == 9 * self.chi

    def to_dict(self) -> dict:
        return {"chi": self.chi, "q": self.q, "pg": self.pg, "K2": self.K2}


FAKE_PROJECTIVE_PLANE = SurfaceInvariants(chi=1, q=0, pg=0, K2=9)


def etale_cover_invariants(base: SurfaceInvariants, degree: int, cover_q: int) -> SurfaceInvariants:
    """Invariants of an unramified cover of the given degree.

    chi and K^2 are multiplicative; the irregularity of the cover is not
    determined by the degree and must be supplied.
    """
    if degree < 1:
        raise ValueError("cover degree must be positive")
    chi = degree * base.chi
    return SurfaceInvariants(chi=chi, q=cover_q, pg=chi + cover_q - 1, K2=degree * base.K2)


def beauville_bound(pg: int) -> Fraction:
    """Upper bound 9(pg+1)/(pg-2) on the canonical degree."""
    if pg < 3:
        raise ValueError("the canonical map can only be generically finite for pg >= 3")
    return Fraction(9 * (pg + 1), pg - 2)


def canonical_degree_chain(inv: SurfaceInvariants, deg_image_surface: int) -> Fraction:
    """Largest canonical degree allowed by K^2 = deg(S) * d with no fixed part."""
    if inv.pg < 3:
        raise ValueError("the canonical map can only be generically finite for pg >= 3")
    if deg_image_surface < 1:
        raise ValueError("image degree must be positive")
    return Fraction(inv.K2, deg_image_surface)
