"""Command-line driver: verification, reports, figures, case listing.

Exit codes: 0 success, 1 at least one failed check or uncovered verdict,
2 input or parse errors.  SVG output is presentation only; every verdict
is computed in exact arithmetic before any decimal formatting happens.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cases import (
    CaseFile,
    ParseError,
    RationalError,
    SchemaError,
    TYPE_LABELS,
    UnresolvedNameError,
    bundled_cases,
    filename_for,
    label_for,
    load_case,
)
from .cone2 import Wedge
from .surface import (
    DegenerateDual,
    InconsistentSystem,
    NotUnimodular,
    UnknownClassName,
    UnknownCylinder,
    case_ample_wedge,
    coverage_verdict,
    polarity_cone,
    verify_case,
)

_INPUT_ERRORS = (
    ParseError,
    SchemaError,
    UnresolvedNameError,
    RationalError,
    UnknownCylinder,
    UnknownClassName,
    DegenerateDual,
    InconsistentSystem,
    NotUnimodular,
    OSError,
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    case: Optional[str] = None
    all_cases: bool = False
    cylinders: Optional[tuple[str, ...]] = None
    format: str = "text"
    out: Optional[str] = None
    cases_dir: Optional[str] = None


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ampcyl",
        description="Exact verification of cylindrical ample cones"
        " for rank-2 Du Val del Pezzo surfaces of degree 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_selection(p, out=False, cylinders=False, fmt=False):
        p.add_argument("--case", help="type label, e.g. D5+A2 (or stem A7p)")
        p.add_argument("--all", action="store_true", help="select every case")
        if cylinders:
            p.add_argument(
                "--cylinders",
                help="comma-separated cylinder names; check only their coverage",
            )
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
        if out:
            p.add_argument("--out", help="output path (directory with --all)")
        p.add_argument("--cases-dir", help="directory of case files overriding the bundle")

    add_selection(sub.add_parser("verify", help="run all checks"), cylinders=True, fmt=True)
    add_selection(sub.add_parser("report", help="emit full per-check reports"), out=True, fmt=True)
    add_selection(sub.add_parser("figure", help="render cone figures as SVG"), out=True)
    lst = sub.add_parser("list", help="list bundled cases")
    lst.add_argument("--format", choices=("text", "json"), default="text")
    lst.add_argument("--cases-dir", help="directory of case files overriding the bundle")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cylinders = None
    if getattr(args, "cylinders", None):
        cylinders = tuple(s.strip() for s in args.cylinders.split(",") if s.strip())
    return RunConfig(
        command=args.command,
        case=getattr(args, "case", None),
        all_cases=getattr(args, "all", False),
        cylinders=cylinders,
        format=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        cases_dir=getattr(args, "cases_dir", None),
    )


def _load_sources(config: RunConfig) -> dict[str, CaseFile]:
    cases = dict(bundled_cases())
    if config.cases_dir:
        for entry in sorted(os.listdir(config.cases_dir)):
            if not entry.endswith(".json"):
                continue
            path = os.path.join(config.cases_dir, entry)
            with open(path, encoding="utf-8") as handle:
                case = load_case(handle.read())
            cases[case.type_label] = case
    return cases


def _select(config: RunConfig, cases: dict[str, CaseFile]) -> list[CaseFile]:
    if config.all_cases:
        return [cases[label] for label in cases]
    if not config.case:
        raise SchemaError("select a case with --case or use --all")
    label = config.case if config.case in cases else label_for(config.case)
    if label is None or label not in cases:
        raise SchemaError(f"unknown case {config.case!r}")
    return [cases[label]]


def _report_dict(report) -> dict:
    return {
        "label": report.label,
        "passed": report.passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
        "warnings": list(report.warnings),
    }


def _run_verify(config: RunConfig, selected: list[CaseFile]) -> int:
    if config.cylinders is not None:
        failed = False
        records = []
        for case in selected:
            cert = coverage_verdict(case, config.cylinders)
            failed |= not cert.covered
            records.append((case.type_label, cert))
        if config.format == "json":
            doc = [
                {
                    "label": label,
                    "cylinders": list(config.cylinders),
                    "covered": cert.covered,
                    "witness": None if cert.witness is None else str(cert.witness),
                }
                for label, cert in records
            ]
            print(json.dumps(doc, indent=2))
        else:
            names = ", ".join(config.cylinders)
            for label, cert in records:
                if cert.covered:
                    print(f"{label} {{{names}}}: COVERED")
                else:
                    print(f"{label} {{{names}}}: NOT COVERED witness={cert.witness}")
        return 1 if failed else 0

    reports = [verify_case(case) for case in selected]
    if config.format == "json":
        print(json.dumps([_report_dict(r) for r in reports], indent=2))
    else:
        for rep in reports:
            print(f"{'PASS' if rep.passed else 'FAIL'} {rep.label}")
            for check in rep.checks:
                if not check.passed:
                    print(f"  FAIL {check.name}: {check.detail}")
            for warning in rep.warnings:
                print(f"  warning: {warning}")
    return 0 if all(r.passed for r in reports) else 1


def _run_report(config: RunConfig, selected: list[CaseFile]) -> int:
    reports = [verify_case(case) for case in selected]
    if config.format == "json":
        text = json.dumps([_report_dict(r) for r in reports], indent=2) + "\n"
    else:
        blocks = []
        for rep in reports:
            lines = [f"== {rep.label} =="]
            for check in rep.checks:
                mark = "ok  " if check.passed else "FAIL"
                lines.append(f"{mark} {check.name}: {check.detail}")
            for warning in rep.warnings:
                lines.append(f"warning: {warning}")
            blocks.append("\n".join(lines))
        text = "\n\n".join(blocks) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in reports) else 1


def _run_figure(config: RunConfig, selected: list[CaseFile]) -> int:
    for case in selected:
        svg = render_figure(case)
        stem = filename_for(case.type_label)
        if config.out and not config.all_cases:
            path = config.out
        else:
            directory = config.out or "."
            os.makedirs(directory, exist_ok=True)
            path = os.path.join(directory, f"{stem}.svg")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(svg)
        print(path)
    return 0


def _run_list(config: RunConfig, cases: dict[str, CaseFile]) -> int:
    if config.format == "json":
        doc = [
            {
                "label": case.type_label,
                "covering_sets": [list(s) for s in case.expected.covering_sets],
            }
            for case in cases.values()
        ]
        print(json.dumps(doc, indent=2))
    else:
        for case in cases.values():
            sets = " ".join(
                "{" + ", ".join(s) + "}" for s in case.expected.covering_sets
            )
            print(f"{case.type_label:10s} covering: {sets}")
    return 0


def run(config: RunConfig) -> int:
    cases = _load_sources(config)
    if config.command == "list":
        return _run_list(config, cases)
    selected = _select(config, cases)
    if config.command == "verify":
        return _run_verify(config, selected)
    if config.command == "report":
        return _run_report(config, selected)
    return _run_figure(config, selected)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = _config_from_args(args)
    try:
        return run(config)
    except _INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


# ---------------------------------------------------------------------------
# figures

WINDOW = 5
_PALETTE = ("#808080", "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee")


def _fmt(value) -> str:
    f = float(value)
    if f == 0:
        return "0"
    return f"{f:.6g}"


def _exit_point(ray, half: int) -> tuple[Fraction, Fraction]:
    scale = Fraction(half, max(abs(ray.x), abs(ray.y)))
    return (scale * ray.x, scale * ray.y)


def _perimeter_position(p: tuple[Fraction, Fraction], half: int) -> Fraction:
    h, side = Fraction(half), Fraction(2 * half)
    x, y = p
    if y == h and x < h:
        return x + h
    if x == h and y > -h:
        return side + (h - y)
    if y == -h and x > -h:
        return 2 * side + (h - x)
    return 3 * side + (y + h)


def window_polygon(
    wedge: Wedge, half: int = WINDOW
) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the wedge clipped to the square [-half, half]^2.

    Exact rationals, clockwise order starting at the origin.  A single-ray
    wedge degenerates to the two-point segment [origin, window exit].
    """
    if wedge.kind == "zero":
        return []
    if wedge.kind == "single":
        return [(Fraction(0), Fraction(0)), _exit_point(wedge.start, half)]
    corners = (
        (Fraction(-half), Fraction(half)),
        (Fraction(half), Fraction(half)),
        (Fraction(half), Fraction(-half)),
        (Fraction(-half), Fraction(-half)),
    )
    side = Fraction(2 * half)
    first = _exit_point(wedge.start, half)
    last = _exit_point(wedge.end, half)
    s1 = _perimeter_position(first, half)
    s2 = _perimeter_position(last, half)
    if s2 <= s1:
        s2 += 4 * side
    points = [(Fraction(0), Fraction(0)), first]
    step = 0
    while step * side < s2:
        c = step * side
        if s1 < c < s2:
            points.append(corners[step % 4])
        step += 1
    points.append(last)
    return points


def _boundary_label(ray) -> str:
    if ray.x == 0:
        return "a = 0"
    slope = Fraction(ray.y, ray.x)
    return f"b = {slope}·a"


def render_figure(case: CaseFile) -> str:
    """SVG picture of the ample wedge and the cylinder polarity cones.

    Window is the square [-5, 5]^2 in (a, b) coordinates; the b axis
    points up, so emitted y values are negated.  Output is deterministic
    byte for byte.
    """
    h = WINDOW
    amp = case_ample_wedge(case)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        ' width="480" height="480" viewBox="-6 -6 12 12">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5"'
        ' markerWidth="6" markerHeight="6" orient="auto">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="#444444"/></marker>',
        f'<clipPath id="window"><rect x="-{h}" y="-{h}"'
        f' width="{2 * h}" height="{2 * h}"/></clipPath>',
        "</defs>",
        f'<rect x="-{h}" y="-{h}" width="{2 * h}" height="{2 * h}"'
        ' fill="white" stroke="#cccccc" stroke-width="0.03"/>',
        f'<line x1="-{h}.7" y1="0" x2="{h}.7" y2="0" stroke="#444444"'
        ' stroke-width="0.04" marker-end="url(#arrow)"/>',
        f'<line x1="0" y1="{h}.7" x2="0" y2="-{h}.7" stroke="#444444"'
        ' stroke-width="0.04" marker-end="url(#arrow)"/>',
        f'<text x="{h}.45" y="0.5" font-size="0.45" fill="#444444">a</text>',
        f'<text x="0.2" y="-{h}.4" font-size="0.45" fill="#444444">b</text>',
        f'<text x="-{h}.8" y="-{h}.25" font-size="0.5"'
        f' fill="#222222">{case.type_label}</text>',
        '<g clip-path="url(#window)">',
    ]
    for i, cyl in enumerate(case.cylinders):
        color = _PALETTE[i % len(_PALETTE)]
        poly = window_polygon(polarity_cone(case, cyl.name), h)
        if len(poly) == 2:
            (x1, y1), (x2, y2) = poly
            lines.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(-y1)}" x2="{_fmt(x2)}"'
                f' y2="{_fmt(-y2)}" stroke="{color}" stroke-width="0.08"/>'
            )
        elif poly:
            points = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in poly)
            lines.append(
                f'<polygon points="{points}" fill="{color}" fill-opacity="0.35"/>'
            )
    lines.append("</g>")
    for i, cyl in enumerate(case.cylinders):
        color = _PALETTE[i % len(_PALETTE)]
        x = -3.4 + 2.2 * i
        lines.append(
            f'<rect x="{_fmt(x)}" y="-5.85" width="0.4" height="0.4"'
            f' fill="{color}" fill-opacity="0.6"/>'
        )
        lines.append(
            f'<text x="{_fmt(x + 0.55)}" y="-5.5" font-size="0.45"'
            f' fill="#222222">Pol({cyl.name})</text>'
        )
    for ray in amp.boundary_rays():
        ex, ey = _exit_point(ray, h)
        lines.append(
            f'<line x1="0" y1="0" x2="{_fmt(ex)}" y2="{_fmt(-ey)}"'
            ' stroke="#000000" stroke-width="0.05"'
            ' stroke-dasharray="0.18 0.18"/>'
        )
        # label just inside the window, nudged off the dotted line;
        # placement is presentation only, so float math is fine here
        fx, fy = float(ex), float(ey)
        norm = (fx * fx + fy * fy) ** 0.5
        lx = 0.86 * fx - 0.45 * fy / norm
        ly = 0.86 * fy + 0.45 * fx / norm
        lines.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(-ly)}" font-size="0.4"'
            f' fill="#222222" text-anchor="middle">{_boundary_label(ray)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
