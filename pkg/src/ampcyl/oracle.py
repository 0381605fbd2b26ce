"""Independent cross-checks for the cone and lattice computations.

Nothing in here is used by the verification pipeline itself; these are
deliberately different algorithms (dense ray sweeps, brute-force pair
search, exhaustive class enumeration) that the test suite plays against
the production code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from math import gcd, isqrt
from typing import Optional, Sequence

from .cone2 import NotSalient, Ray2, Wedge, cross, in_relint, sweep_cmp
from .lattice import BlowupLattice, DivisorClass, divisor


class UnsupportedRank(ValueError):
    """The exhaustive class enumeration only covers the n = 8 lattice."""


@lru_cache(maxsize=None)
def _farey_rays(bound: int) -> tuple[Ray2, ...]:
    rays = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x or y) and gcd(abs(x), abs(y)) == 1:
                rays.append(Ray2(x, y))
    return tuple(rays)


@dataclass(frozen=True)
class FareyFan:
    """All primitive directions with coordinates bounded by ``bound``."""

    bound: int

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be at least 1")

    def rays(self) -> tuple[Ray2, ...]:
        return _farey_rays(self.bound)


def sweep_coverage(
    target: Wedge, pieces: Sequence[Wedge], bound: int
) -> tuple[bool, Optional[Ray2]]:
    """Dense-sweep coverage check of the open target by piece interiors.

    Tests every fan ray inside the target plus the midpoint of every pair
    of consecutive event rays (piece and target boundaries), so the answer
    is complete whenever ``bound`` is at least the largest coordinate of
    any piece boundary ray.  Returns (verdict, first failing ray or None).
    """
    if target.kind != "span":
        raise ValueError("coverage target must be a salient span")
    candidates = [r for r in FareyFan(bound).rays() if in_relint(target, r)]
    events = {target.start, target.end}
    for p in pieces:
        for r in p.boundary_rays():
            if in_relint(target, r):
                events.add(r)
    ordered = sorted(events, key=cmp_to_key(sweep_cmp))
    for a, b in zip(ordered, ordered[1:]):
        candidates.append(Ray2.from_pair(a.x + b.x, a.y + b.y))
    for r in candidates:
        if not any(in_relint(p, r) for p in pieces):
            return False, r
    return True, None


def brute_extremal(rays: Sequence[Ray2]) -> tuple[Ray2, Ray2]:
    """Extremal pair of a salient ray set by trying every ordered pair.

    Returns (start, end) of the smallest closed wedge containing every
    input ray, the counterclockwise-most ray first.  Raises NotSalient
    when no pair works.
    """
    distinct: list[Ray2] = []
    for r in rays:
        if r not in distinct:
            distinct.append(r)
    if not distinct:
        raise ValueError("need at least one ray")
    if len(distinct) == 1:
        return distinct[0], distinct[0]
    for s in distinct:
        for e in distinct:
            if s == e or cross(e, s) <= 0:
                continue
            if all(cross(r, s) >= 0 and cross(e, r) >= 0 for r in distinct):
                return s, e
    raise NotSalient("ray set spans more than a half turn")


def enumerate_line_classes(n: int = 8) -> list[DivisorClass]:
    """Every class with c.c = -1 and -K.c = 1 on the n = 8 lattice.

    Writes candidates as d*l - sum(m_i e_i) and searches d = 0, 1, ...
    with the Cauchy-Schwarz bound (3d-1)^2 <= 8(d^2+1), which caps d at 7;
    the d = 7 case forces all m_i = 5/2 and is empty, so the search is
    finite and complete.  Classes come out ordered by (d, multiplicities).
    """
    if n != 8:
        raise UnsupportedRank(f"enumeration implemented for n = 8 only, got {n}")
    lat = BlowupLattice(8)
    found: list[DivisorClass] = []
    for d in range(0, 8):
        msum = 3 * d - 1  # required sum of multiplicities
        msq = d * d + 1  # required sum of squares
        prefix: list[int] = []

        def emit() -> None:
            coords = [d] + [-m for m in prefix]
            found.append(divisor(lat, coords))

        def rec(slots: int, rsum: int, rsq: int) -> None:
            if slots == 0:
                if rsum == 0 and rsq == 0:
                    emit()
                return
            top = isqrt(rsq)
            for m in range(-top, top + 1):
                rest_sum = rsum - m
                rest_sq = rsq - m * m
                # Cauchy-Schwarz feasibility for the remaining slots
                if slots > 1 and rest_sum * rest_sum > (slots - 1) * rest_sq:
                    continue
                if slots == 1 and (rest_sum != 0 or rest_sq != 0):
                    continue
                prefix.append(m)
                rec(slots - 1, rest_sum, rest_sq)
                prefix.pop()

        rec(8, msum, msq)
    return found
