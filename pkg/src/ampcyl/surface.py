"""Rank-2 lattice computations on the contracted surface.

After contracting most of the exceptional locus, the surviving lattice has
rank 2 with a fractional Gram matrix.  Classes live as coordinate pairs
(a, b) in a fixed basis; the Mori cone is spanned by pushforwards of
(-1)-curves, the ample cone is its open dual wedge, and cylinder polarity
cones are spanned by the pushed boundary components.  All pairings use
exact Fraction arithmetic; Ray2 direction vectors carry the convex
geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

from .cone2 import (
    CoverageCertificate,
    NotSalient,
    Ray2,
    Wedge,
    cone_from_generators,
    covers_open,
    cross,
    in_relint,
)
from .contraction import (
    NotADE,
    PullbackDatum,
    UnsupportedMorphism,
    infer_configuration,
    recognize_dynkin,
)
from .lattice import BlowupLattice, divisor, validate_line_table

if TYPE_CHECKING:
    from .cases import CaseFile


class DegenerateDual(ValueError):
    """The dual boundary rays coincide or oppose; no open dual wedge."""


class InconsistentSystem(ValueError):
    """The pairing equations for the pushed lines have no common solution."""


class NotUnimodular(ValueError):
    """The recovered anticanonical class does not have self-pairing one."""


class UnknownCylinder(KeyError):
    """No cylinder with the requested name in this case."""


class UnknownClassName(KeyError):
    """A boundary or generator name resolves to no known pushed class."""


Pair = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Rank2Basis:
    """Named rank-2 basis with its (symmetric, nondegenerate) Gram matrix."""

    names: tuple[str, str]
    gram: tuple[Pair, Pair]

    def __post_init__(self) -> None:
        (g00, g01), (g10, g11) = self.gram
        if g01 != g10:
            raise ValueError("Gram matrix must be symmetric")
        if g00 * g11 - g01 * g10 == 0:
            raise ValueError("Gram matrix must be nondegenerate")

    def apply(self, v: Sequence[Fraction]) -> Pair:
        """The covector G.v of pairing against v."""
        (g00, g01), (g10, g11) = self.gram
        return (g00 * v[0] + g01 * v[1], g10 * v[0] + g11 * v[1])

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        w = self.apply(v)
        return u[0] * w[0] + u[1] * w[1]


@dataclass(frozen=True)
class PushedClass:
    """A named class on the contracted surface, as basis coordinates."""

    name: str
    coords: Pair

    def ray(self) -> Ray2:
        return Ray2.from_pair(self.coords[0], self.coords[1])


def mori_extremal(
    classes: Sequence[PushedClass],
) -> tuple[tuple[Ray2, Ray2], dict[str, str]]:
    """Extremal rays of the cone spanned by the given classes.

    Returns the boundary ray pair of the spanned wedge together with a
    report marking each input class "extremal" or "interior".  Raises
    NotSalient when the inputs span a half-plane or more, which signals
    corrupted case data.
    """
    rays = {}
    for cls in classes:
        if cls.coords[0] == 0 and cls.coords[1] == 0:
            continue
        rays[cls.name] = cls.ray()
    if not rays:
        raise ValueError("no nonzero classes given")
    wedge = cone_from_generators((r.x, r.y) for r in rays.values())
    boundary = set(wedge.boundary_rays())
    report = {
        name: "extremal" if ray in boundary else "interior"
        for name, ray in rays.items()
    }
    return (wedge.start, wedge.end), report


def ample_wedge(basis: Rank2Basis, mori_rays: tuple[Ray2, Ray2]) -> Wedge:
    """Open dual wedge {H : pair(H, r) > 0 for both extremal rays}.

    Each boundary ray is the Gram-orthogonal of one Mori extremal ray,
    signed to pair positively with the other one.
    """
    r1, r2 = mori_rays
    v1 = basis.apply((Fraction(r1.x), Fraction(r1.y)))
    v2 = basis.apply((Fraction(r2.x), Fraction(r2.y)))
    duals = []
    for v, other in ((v1, v2), (v2, v1)):
        d = (-v[1], v[0])
        side = d[0] * other[0] + d[1] * other[1]
        if side == 0:
            raise DegenerateDual("dual boundary rays coincide or oppose")
        if side < 0:
            d = (-d[0], -d[1])
        duals.append(Ray2.from_pair(d[0], d[1]))
    d1, d2 = duals
    if cross(d2, d1) > 0:
        return Wedge.span(d1, d2)
    if cross(d1, d2) > 0:
        return Wedge.span(d2, d1)
    raise DegenerateDual("dual boundary rays coincide or oppose")


@dataclass(frozen=True)
class InequalityReport:
    """Cross-check of computed ampleness bounds against a printed list.

    Forms are covectors (p, q) for the bound p*a + q*b > 0; matching is up
    to positive scaling, reporting keeps the raw values.  Mismatches are
    warnings, never failures: the computed dual of the generators is
    authoritative.
    """

    matched: tuple[tuple[str, Pair], ...]
    unmatched_computed: tuple[tuple[str, Pair], ...]
    unmatched_printed: tuple[Pair, ...]

    @property
    def warnings(self) -> list[str]:
        out = []
        for name, form in self.unmatched_computed:
            out.append(
                f"computed bound {_form_str(form)} > 0 (from {name})"
                " is missing from the printed list"
            )
        for form in self.unmatched_printed:
            out.append(
                f"printed bound {_form_str(form)} > 0"
                " is not produced by any generator"
            )
        return out


def _form_str(form: Pair) -> str:
    terms = []
    for coef, var in zip(form, ("a", "b")):
        if coef == 0:
            continue
        if coef == 1:
            terms.append(var)
        elif coef == -1:
            terms.append(f"-{var}")
        else:
            terms.append(f"{coef}{var}")
    if not terms:
        return "0"
    text = terms[0]
    for t in terms[1:]:
        text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return text


def inequality_report(
    basis: Rank2Basis,
    generators: Sequence[PushedClass],
    printed: Sequence[Pair],
) -> InequalityReport:
    """Match pairing covectors of the generators against printed bounds."""
    remaining = list(printed)
    matched = []
    unmatched_computed = []
    for g in generators:
        form = basis.apply(g.coords)
        key = Ray2.from_pair(form[0], form[1])
        hit = next(
            (p for p in remaining if Ray2.from_pair(p[0], p[1]) == key), None
        )
        if hit is not None:
            remaining.remove(hit)
            matched.append((g.name, hit))
        else:
            unmatched_computed.append((g.name, form))
    return InequalityReport(
        tuple(matched), tuple(unmatched_computed), tuple(remaining)
    )


def anticanonical_rank2(
    basis: Rank2Basis, pushed_lines: Sequence[PushedClass]
) -> PushedClass:
    """Recover -K from the conditions pair(-K, P) = 1 for all pushed lines.

    Solves the first independent 2x2 subsystem exactly and substitutes the
    solution into every remaining equation; any mismatch raises
    InconsistentSystem.  The result must satisfy pair(-K, -K) = 1, else
    NotUnimodular.
    """
    rows = [basis.apply(p.coords) for p in pushed_lines]
    pivot = None
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0] != 0:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        raise InconsistentSystem("pushed lines do not span rank 2")
    (a1, b1), (a2, b2) = rows[pivot[0]], rows[pivot[1]]
    det = a1 * b2 - b1 * a2
    x = (b2 - b1) / det
    y = (a1 - a2) / det
    for p, row in zip(pushed_lines, rows):
        if row[0] * x + row[1] * y != 1:
            raise InconsistentSystem(
                f"pushed line {p.name} pairs to"
                f" {row[0] * x + row[1] * y}, expected 1"
            )
    k = PushedClass("-K", (x, y))
    square = basis.pair(k.coords, k.coords)
    if square != 1:
        raise NotUnimodular(f"(-K)^2 = {square}, expected 1")
    return k


def _resolution(case: "CaseFile") -> dict[str, PushedClass]:
    table = {}
    for name, coords in case.pushforwards.items():
        table[name] = PushedClass(name, coords)
    for name, coords in case.aux_classes.items():
        table[name] = PushedClass(name, coords)
    return table


def _resolve(case: "CaseFile", name: str) -> PushedClass:
    table = _resolution(case)
    if name not in table:
        raise UnknownClassName(name)
    return table[name]


def polarity_cone(case: "CaseFile", cylinder_name: str) -> Wedge:
    """Cone spanned by the pushed boundary classes of one cylinder."""
    cyl = next((c for c in case.cylinders if c.name == cylinder_name), None)
    if cyl is None:
        raise UnknownCylinder(cylinder_name)
    return cone_from_generators(_resolve(case, nm).coords for nm in cyl.boundary)


def case_ample_wedge(case: "CaseFile") -> Wedge:
    """Ample wedge of a case: dual of its Mori generator cone."""
    gens = [_resolve(case, nm) for nm in case.mori_generators]
    rays, _ = mori_extremal(gens)
    return ample_wedge(case.basis, rays)


def coverage_verdict(
    case: "CaseFile", cylinder_names: Sequence[str]
) -> CoverageCertificate:
    """Do the chosen polarity cone relints cover the open ample wedge?"""
    target = case_ample_wedge(case)
    pieces = [polarity_cone(case, nm) for nm in cylinder_names]
    return covers_open(target, pieces)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CaseReport:
    label: str
    checks: tuple[CheckResult, ...]
    warnings: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_case(case: "CaseFile") -> CaseReport:
    """Run every check for one case; failures become report entries."""
    checks: list[CheckResult] = []
    warnings: list[str] = []

    lattice = BlowupLattice(case.ambient_n)
    table = [divisor(lattice, line.coords) for line in case.lines]
    violations = validate_line_table(table)
    if violations:
        bad = ", ".join(
            f"{case.lines[i].name}: c^2={s}, deg={d}" for i, s, d in violations
        )
        checks.append(CheckResult("line-table", False, bad))
    else:
        checks.append(
            CheckResult("line-table", True, f"{len(table)} classes checked")
        )

    if case.morphism != "f":
        checks.append(
            CheckResult(
                "configuration-inference",
                True,
                "skipped: composite contraction",
            )
        )
    else:
        try:
            result = infer_configuration(
                case.type_label, case.pullbacks, case.basis.gram, case.morphism
            )
        except (NotADE, UnsupportedMorphism) as err:
            result = None
            checks.append(CheckResult("configuration-inference", False, str(err)))
        else:
            if result is None:
                checks.append(
                    CheckResult(
                        "configuration-inference",
                        False,
                        "no curve placement reproduces the Gram matrix",
                    )
                )
            else:
                dynkin = recognize_dynkin(result.config)
                wanted = case.type_label.replace("'", "")
                passed = dynkin == wanted and result.gram == case.basis.gram
                checks.append(
                    CheckResult(
                        "configuration-inference",
                        passed,
                        f"{dynkin} on {', '.join(result.config.labels)}",
                    )
                )

    mori_rays = None
    try:
        gens = [_resolve(case, nm) for nm in case.mori_generators]
        mori_rays, report = mori_extremal(gens)
    except (NotSalient, UnknownClassName) as err:
        checks.append(CheckResult("mori-salient", False, str(err)))
    else:
        extremal = [n for n, kind in report.items() if kind == "extremal"]
        checks.append(
            CheckResult(
                "mori-salient",
                True,
                f"extremal rays {mori_rays[0]}, {mori_rays[1]}"
                f" from {', '.join(extremal)}",
            )
        )

    amp = None
    if mori_rays is not None:
        try:
            amp = ample_wedge(case.basis, mori_rays)
        except DegenerateDual as err:
            checks.append(CheckResult("ample-wedge", False, str(err)))
        else:
            checks.append(
                CheckResult(
                    "ample-wedge", True, f"open wedge {amp.start} .. {amp.end}"
                )
            )

    gens = [_resolve(case, nm) for nm in case.mori_generators]
    ineq = inequality_report(case.basis, gens, case.printed_inequalities)
    warnings.extend(ineq.warnings)
    checks.append(
        CheckResult(
            "inequality-cross-check",
            True,
            f"{len(ineq.matched)} matched,"
            f" {len(ineq.unmatched_computed) + len(ineq.unmatched_printed)}"
            " unmatched",
        )
    )

    pushed = [PushedClass(n, c) for n, c in case.pushforwards.items()]
    try:
        k = anticanonical_rank2(case.basis, pushed)
    except (InconsistentSystem, NotUnimodular) as err:
        checks.append(CheckResult("anticanonical", False, str(err)))
    else:
        pol0 = polarity_cone(case, case.cylinders[0].name)
        inside = in_relint(pol0, k.ray())
        checks.append(
            CheckResult(
                "anticanonical",
                inside,
                f"-K = ({k.coords[0]}, {k.coords[1]}), (-K)^2 = 1,"
                f" relint(Pol({case.cylinders[0].name}))"
                f" {'contains' if inside else 'misses'} it",
            )
        )

    if amp is not None:
        for names in case.expected.covering_sets:
            cert = coverage_verdict(case, names)
            detail = (
                f"{{{', '.join(names)}}} covers the ample wedge"
                if cert.covered
                else f"{{{', '.join(names)}}} misses {cert.witness}"
            )
            checks.append(
                CheckResult(f"coverage {{{', '.join(names)}}}", cert.covered, detail)
            )
        for names in case.expected.insufficient_sets:
            cert = coverage_verdict(case, names)
            ok = not cert.covered and cert.witness is not None
            detail = (
                f"{{{', '.join(names)}}} leaves {cert.witness} uncovered"
                if ok
                else f"{{{', '.join(names)}}} unexpectedly covers the ample wedge"
            )
            checks.append(
                CheckResult(f"insufficiency {{{', '.join(names)}}}", ok, detail)
            )

    return CaseReport(case.type_label, tuple(checks), tuple(warnings))
