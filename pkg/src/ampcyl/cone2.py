"""Exact two-dimensional cone arithmetic: rays, wedges, open coverage.

Rays are primitive integer directions (positive scaling quotiented away).
A salient wedge Span(start, end) spans strictly less than a half turn;
``start`` is the counterclockwise-most boundary ray in the usual picture,
so sweeping from start to end runs clockwise.  With the standard cross
product cross(u, v) = u.x*v.y - u.y*v.x this reads:

  salient          iff  cross(end, start) > 0
  r strictly inside iff cross(r, start) > 0 and cross(end, r) > 0

All arithmetic is integer or Fraction; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


class NotSalient(ValueError):
    """The generators span a cone containing a line (no salient wedge)."""


@dataclass(frozen=True, order=True)
class Ray2:
    """A primitive integer direction in the rank-2 lattice."""

    x: int
    y: int

    def __post_init__(self) -> None:
        if self.x == 0 and self.y == 0:
            raise ValueError("a ray needs a nonzero direction")
        if gcd(abs(self.x), abs(self.y)) != 1:
            raise ValueError("coordinates not coprime; use Ray2.from_pair")

    @staticmethod
    def from_pair(x, y) -> "Ray2":
        """Normalize a nonzero rational pair to its primitive ray."""
        fx, fy = Fraction(x), Fraction(y)
        if fx == 0 and fy == 0:
            raise ValueError("a ray needs a nonzero direction")
        scale = lcm(fx.denominator, fy.denominator)
        ix, iy = int(fx * scale), int(fy * scale)
        g = gcd(abs(ix), abs(iy))
        return Ray2(ix // g, iy // g)

    def opposite(self) -> "Ray2":
        return Ray2(-self.x, -self.y)

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def cross(u: Ray2, v: Ray2) -> int:
    """Standard planar cross product; positive iff v is counterclockwise of u."""
    return u.x * v.y - u.y * v.x


def _cross_pair(u, v) -> Fraction:
    """Cross product on raw coordinate pairs (Fractions allowed)."""
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Wedge:
    """A convex cone in rank 2: the zero cone, a single ray, or a salient span."""

    kind: str  # "zero" | "single" | "span"
    start: Optional[Ray2] = None
    end: Optional[Ray2] = None

    @staticmethod
    def zero() -> "Wedge":
        return Wedge("zero")

    @staticmethod
    def single(ray: Ray2) -> "Wedge":
        return Wedge("single", ray, ray)

    @staticmethod
    def span(start: Ray2, end: Ray2) -> "Wedge":
        if cross(end, start) <= 0:
            raise NotSalient(f"span from {start} to {end} is not salient")
        return Wedge("span", start, end)

    def boundary_rays(self) -> tuple[Ray2, ...]:
        if self.kind == "zero":
            return ()
        if self.kind == "single":
            return (self.start,)
        return (self.start, self.end)


def in_relint(wedge: Wedge, ray: Ray2) -> bool:
    """Is the ray in the relative interior of the wedge?

    For a span this is the open sector strictly between the boundary rays;
    for a single ray it is that ray only; the zero cone has empty relint
    as far as rays are concerned.
    """
    if wedge.kind == "zero":
        return False
    if wedge.kind == "single":
        return ray == wedge.start
    return cross(ray, wedge.start) > 0 and cross(wedge.end, ray) > 0


def in_closed(wedge: Wedge, ray: Ray2) -> bool:
    """Is the ray in the closed wedge?"""
    if wedge.kind == "zero":
        return False
    if wedge.kind == "single":
        return ray == wedge.start
    return cross(ray, wedge.start) >= 0 and cross(wedge.end, ray) >= 0


def cone_from_generators(generators: Iterable) -> Wedge:
    """Smallest closed convex cone containing the given coordinate pairs.

    Zero vectors are ignored.  Raises NotSalient when the generators
    contain opposite directions or span more than a half turn.
    """
    rays: list[Ray2] = []
    seen = set()
    for g in generators:
        fx, fy = Fraction(g[0]), Fraction(g[1])
        if fx == 0 and fy == 0:
            continue
        r = Ray2.from_pair(fx, fy)
        if r not in seen:
            seen.add(r)
            rays.append(r)
    if not rays:
        return Wedge.zero()
    if len(rays) == 1:
        return Wedge.single(rays[0])
    start = end = rays[0]
    for r in rays[1:]:
        a = cross(r, start)  # >= 0: r is on or clockwise of start
        b = cross(end, r)  # >= 0: r is on or counterclockwise of end
        if a == 0 or b == 0:
            # parallel to a boundary ray; equal was deduplicated, so opposite
            raise NotSalient(f"{r} is opposite to a boundary ray")
        if a > 0 and b > 0:
            continue  # strictly inside the current wedge
        if a < 0 and b > 0:
            start = r  # extend counterclockwise; salience is exactly b > 0
        elif a > 0 and b < 0:
            end = r  # extend clockwise; salience is exactly a > 0
        else:
            raise NotSalient("generators span more than a half turn")
    if start == end:
        return Wedge.single(start)
    return Wedge.span(start, end)


def sweep_cmp(a: Ray2, b: Ray2) -> int:
    """Order rays along a clockwise sweep (valid within one salient wedge)."""
    c = cross(b, a)  # > 0: b is clockwise of a, so a comes first
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass(frozen=True)
class ArcCover:
    """One certificate entry: an open arc (or single event ray) and who covers it.

    ``start == end`` marks an event-ray entry; otherwise the entry is the
    open arc strictly between the two rays.  ``piece`` indexes the covering
    piece in the input list.
    """

    start: Ray2
    end: Ray2
    piece: int


@dataclass(frozen=True)
class CoverageCertificate:
    covered: bool
    chain: tuple[ArcCover, ...] = ()
    witness: Optional[Ray2] = None


def _covering_piece(ray: Ray2, pieces: Sequence[Wedge]) -> Optional[int]:
    for i, p in enumerate(pieces):
        if in_relint(p, ray):
            return i
    return None


def covers_open(target: Wedge, pieces: Sequence[Wedge]) -> CoverageCertificate:
    """Do the relative interiors of the pieces cover the open target wedge?

    The target must be a salient span.  Boundary rays of the pieces that
    fall strictly inside the target cut it into finitely many open arcs;
    on each open arc every span piece either contains the whole arc or
    misses it, so testing the arc midpoint (sum of the primitive endpoint
    vectors) is exact, and the cut rays themselves are tested individually.
    Returns a chain of covering assignments, or the first uncovered ray in
    sweep order as a witness.
    """
    if target.kind != "span":
        raise ValueError("coverage target must be a salient span")
    interior = set()
    for p in pieces:
        for r in p.boundary_rays():
            if in_relint(target, r):
                interior.add(r)
    events = (
        [target.start]
        + sorted(interior, key=cmp_to_key(sweep_cmp))
        + [target.end]
    )
    chain: list[ArcCover] = []
    for i in range(len(events) - 1):
        lo, hi = events[i], events[i + 1]
        mid = Ray2.from_pair(lo.x + hi.x, lo.y + hi.y)
        idx = _covering_piece(mid, pieces)
        if idx is None:
            return CoverageCertificate(False, tuple(chain), mid)
        chain.append(ArcCover(lo, hi, idx))
        if i + 1 < len(events) - 1:
            ev = events[i + 1]
            jdx = _covering_piece(ev, pieces)
            if jdx is None:
                return CoverageCertificate(False, tuple(chain), ev)
            chain.append(ArcCover(ev, ev, jdx))
    return CoverageCertificate(True, tuple(chain), None)


def _directions(vectors) -> list[tuple[Ray2, list[tuple[int, Fraction]]]]:
    """Group vector indices by primitive direction, with their lengths.

    Each entry is (ray, [(index, scale), ...]) where vector = scale * ray
    and scale > 0.
    """
    groups: dict[Ray2, list[tuple[int, Fraction]]] = {}
    order: list[Ray2] = []
    for i, v in enumerate(vectors):
        r = Ray2.from_pair(v[0], v[1])
        scale = v[0] / Fraction(r.x) if r.x != 0 else v[1] / Fraction(r.y)
        if r not in groups:
            groups[r] = []
            order.append(r)
        groups[r].append((i, Fraction(scale)))
    return [(r, groups[r]) for r in order]


def _solve2(u, v, t) -> tuple[Fraction, Fraction]:
    """Solve a*u + b*v = t for independent coordinate pairs u, v."""
    det = _cross_pair(u, v)
    a = _cross_pair(t, v) / det
    b = _cross_pair(u, t) / det
    return a, b


def positive_weights(target, generators) -> Optional[list[Fraction]]:
    """Strictly positive rational weights writing target = sum(w_i * g_i).

    Such weights exist exactly when the target lies in the relative
    interior of the positive hull of the generators, whatever shape that
    hull takes (single ray, salient wedge, line, half-plane, or the whole
    plane).  Returns None when no certificate exists.  Zero generators get
    weight 1; they never obstruct anything.
    """
    t = (Fraction(target[0]), Fraction(target[1]))
    vecs = [(Fraction(g[0]), Fraction(g[1])) for g in generators]
    weights: list[Optional[Fraction]] = [None] * len(vecs)
    nz = []
    for i, v in enumerate(vecs):
        if v[0] == 0 and v[1] == 0:
            weights[i] = Fraction(1)
        else:
            nz.append((i, v))
    if not nz:
        return [Fraction(1)] * len(vecs) if t == (0, 0) else None

    groups = _directions([v for _, v in nz])
    dirs = [r for r, _ in groups]

    def set_weight(group_pos: int, amount: Fraction) -> None:
        # distribute "amount" of the primitive direction onto the first
        # generator in that direction group
        idx_in_nz, scale = groups[group_pos][1][0]
        i = nz[idx_in_nz][0]
        weights[i] += amount / scale

    def base_weights(eps: Fraction) -> None:
        for i, _ in nz:
            weights[i] = eps

    if len(dirs) == 1:
        # single direction: target must be a positive multiple of it
        d = dirs[0]
        if _cross_pair(t, (d.x, d.y)) != 0:
            return None
        c = t[0] / Fraction(d.x) if d.x != 0 else t[1] / Fraction(d.y)
        if c <= 0:
            return None
        share = c / len(nz)
        for i, v in nz:
            scale = v[0] / Fraction(d.x) if d.x != 0 else v[1] / Fraction(d.y)
            weights[i] = share / scale
        return [w for w in weights]

    if all(cross(a, b) == 0 for a in dirs for b in dirs):
        # two opposite directions: the hull is a line through the origin
        d = dirs[0]
        if _cross_pair(t, (d.x, d.y)) != 0:
            return None
        base_weights(Fraction(1))
        c = t[0] / Fraction(d.x) if d.x != 0 else t[1] / Fraction(d.y)
        signed = Fraction(0)
        for i, v in nz:
            s = v[0] / Fraction(d.x) if d.x != 0 else v[1] / Fraction(d.y)
            signed += s
        resid = c - signed
        if resid != 0:
            pos = resid > 0
            for j, (i, v) in enumerate(nz):
                s = v[0] / Fraction(d.x) if d.x != 0 else v[1] / Fraction(d.y)
                if (s > 0) == pos:
                    weights[i] += resid / s
                    break
        return [w for w in weights]

    try:
        hull = cone_from_generators(vecs)
    except NotSalient:
        hull = None

    if hull is not None:
        # salient wedge: decompose in boundary-ray coordinates
        s, e = hull.start, hull.end
        sp, ep = (Fraction(s.x), Fraction(s.y)), (Fraction(e.x), Fraction(e.y))
        alpha, beta = _solve2(sp, ep, t)
        if alpha <= 0 or beta <= 0:
            return None
        decomp = [_solve2(sp, ep, v) for _, v in nz]
        asum = sum(d[0] for d in decomp)
        bsum = sum(d[1] for d in decomp)
        eps = min(alpha / asum, beta / bsum) / 2
        base_weights(eps)
        ra = alpha - eps * asum
        rb = beta - eps * bsum
        for j, (i, v) in enumerate(nz):
            if Ray2.from_pair(*v) == s:
                weights[i] += ra / decomp[j][0]
                break
        for j, (i, v) in enumerate(nz):
            if Ray2.from_pair(*v) == e:
                weights[i] += rb / decomp[j][1]
                break
        return [w for w in weights]

    # non-salient with at least two independent directions: half-plane or
    # plane.  A closed half-plane hull forces both boundary directions
    # (an opposite pair) among the generators, with everything else
    # strictly on one side of that line.
    half_boundary = None
    for d in dirs:
        if d.opposite() in dirs:
            sides = {_sign(cross(d, o)) for o in dirs if o not in (d, d.opposite())}
            sides.discard(0)
            if len(sides) == 1:
                half_boundary = (d, d.opposite(), sides.pop())
                break

    S = (sum(v[0] for _, v in nz), sum(v[1] for _, v in nz))

    if half_boundary is not None:
        d, dopp, side = half_boundary
        h = lambda p: side * _cross_pair((d.x, d.y), p)
        if h(t) <= 0:
            return None
        hS = h(S)
        eps = h(t) / (2 * hS) if hS > 0 else Fraction(1)
        base_weights(eps)
        resid = (t[0] - eps * S[0], t[1] - eps * S[1])
        m = next(r for r in dirs if r not in (d, dopp))
        cu, cm = _solve2(
            (Fraction(d.x), Fraction(d.y)), (Fraction(m.x), Fraction(m.y)), resid
        )
        # cm = h(resid)/h(m) > 0; cu can have either sign and is absorbed
        # by the opposite boundary pair
        set_weight(dirs.index(m), cm)
        y = max(Fraction(1), Fraction(1) - cu)
        set_weight(dirs.index(d), cu + y)
        set_weight(dirs.index(dopp), y)
        return [w for w in weights]

    # whole plane: find a positively oriented triangle of directions
    # containing the origin strictly, then lift along its circuit
    tri = None
    n = len(dirs)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                u, v, w = dirs[a], dirs[b], dirs[c]
                if cross(u, v) > 0 and cross(v, w) > 0 and cross(w, u) > 0:
                    tri = (a, b, c)
                    break
            if tri:
                break
        if tri:
            break
    if tri is None:
        return None  # unreachable for a genuine plane hull
    ia, ib, ic = tri
    u = (Fraction(dirs[ia].x), Fraction(dirs[ia].y))
    v = (Fraction(dirs[ib].x), Fraction(dirs[ib].y))
    w = (Fraction(dirs[ic].x), Fraction(dirs[ic].y))
    lv, lw = _solve2(v, w, (-u[0], -u[1]))  # u + lv*v + lw*w = 0, lv, lw > 0
    base_weights(Fraction(1))
    resid = (t[0] - S[0], t[1] - S[1])
    x, y = _solve2(u, v, resid)
    mu = max(Fraction(0), -x, -y / lv) + 1
    set_weight(ia, x + mu)
    set_weight(ib, y + mu * lv)
    set_weight(ic, mu * lw)
    return [w for w in weights]


def _sign(x) -> int:
    return (x > 0) - (x < 0)
