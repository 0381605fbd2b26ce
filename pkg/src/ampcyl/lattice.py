"""Divisor-class arithmetic on blow-ups of the projective plane.

The ambient lattice for a blow-up of P^2 in n points has the basis
(l, e_1, ..., e_n) where l is the hyperplane class and the e_i are the
exceptional classes.  The intersection form is diagonal with signature
(1, n): l.l = 1, e_i.e_i = -1, mixed products 0.  The anticanonical class
is -K = 3l - e_1 - ... - e_n.

Everything is exact: coordinates are Fractions and no operation rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class MismatchedLattice(ValueError):
    """Two divisor classes from different ambient lattices were combined."""


@dataclass(frozen=True)
class BlowupLattice:
    """The Picard lattice of a blow-up of P^2 in ``n`` points."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("number of blown-up points must be nonnegative")

    @property
    def rank(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class DivisorClass:
    """A rational divisor class, coordinates in the (l, e_1, ..., e_n) basis."""

    lattice: BlowupLattice
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.lattice.rank:
            raise ValueError(
                f"expected {self.lattice.rank} coordinates, got {len(self.coords)}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_lattice(self, other)
        return DivisorClass(
            self.lattice,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_lattice(self, other)
        return DivisorClass(
            self.lattice,
            tuple(a - b for a, b in zip(self.coords, other.coords)),
        )

    def __rmul__(self, scalar) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(self.lattice, tuple(s * a for a in self.coords))


def divisor(lattice: BlowupLattice, coords: Iterable) -> DivisorClass:
    """Build a DivisorClass, coercing every coordinate to an exact Fraction."""
    return DivisorClass(lattice, tuple(Fraction(c) for c in coords))


def _check_same_lattice(a: DivisorClass, b: DivisorClass) -> None:
    if a.lattice != b.lattice:
        raise MismatchedLattice(
            f"classes live in different lattices (n={a.lattice.n} vs n={b.lattice.n})"
        )


def intersect(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection product under the diagonal form diag(1, -1, ..., -1)."""
    _check_same_lattice(a, b)
    total = a.coords[0] * b.coords[0]
    for x, y in zip(a.coords[1:], b.coords[1:]):
        total -= x * y
    return total


def anticanonical(lattice: BlowupLattice) -> DivisorClass:
    """The anticanonical class -K = 3l - e_1 - ... - e_n."""
    return divisor(lattice, [3] + [-1] * lattice.n)


def is_line_class(c: DivisorClass) -> bool:
    """True iff c.c = -1 and -K.c = 1 (the numerical line conditions)."""
    mk = anticanonical(c.lattice)
    return intersect(c, c) == -1 and intersect(mk, c) == 1


def validate_line_table(
    lines: Sequence[DivisorClass],
) -> list[tuple[int, Fraction, Fraction]]:
    """Check every class against the line conditions.

    Returns the violations as (index, c.c, -K.c) triples; an empty list
    means the whole table is numerically consistent.
    """
    violations = []
    for i, c in enumerate(lines):
        mk = anticanonical(c.lattice)
        self_sq = intersect(c, c)
        deg = intersect(mk, c)
        if self_sq != -1 or deg != 1:
            violations.append((i, self_sq, deg))
    return violations
