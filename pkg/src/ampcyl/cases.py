"""Case files: one JSON document per singularity type.

A case file carries everything needed to verify one surface: the ambient
line table, the rank-2 basis with its Gram matrix, the printed pullback
formulas, pushforward coordinates, Mori generators, printed ampleness
bounds, cylinder boundaries, and the expected coverage outcomes.  All
numbers are strings parsed as exact rationals ("p/q", optional sign on
the numerator).  Loading is strict: unknown keys, missing keys, dangling
names, and malformed rationals are all errors.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping, Optional, Sequence

from .contraction import PullbackDatum
from .surface import Pair, Rank2Basis

TYPE_LABELS = (
    "A5+A2",
    "A7'",
    "D6+A1",
    "E7",
    "A5+2A1",
    "A6+A1",
    "A7''",
    "D5+2A1",
    "D5+A2",
    "D7",
    "E6+A1",
    "A4+A3",
    "A4+A2+A1",
)

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


class ParseError(ValueError):
    """The document is not valid JSON."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at character {position})")
        self.position = position


class SchemaError(ValueError):
    """The document shape disagrees with the case schema."""


class UnresolvedNameError(ValueError):
    """A name referenced in one section is defined nowhere."""


class RationalError(ValueError):
    """A rational literal is malformed or has a zero denominator."""


def parse_rational(text: object) -> Fraction:
    if not isinstance(text, str):
        raise SchemaError(f"expected a rational string, got {text!r}")
    if not _RATIONAL.fullmatch(text):
        raise RationalError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den:
        if int(den) == 0:
            raise RationalError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class LineEntry:
    name: str
    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class Cylinder:
    name: str
    boundary: tuple[str, ...]


@dataclass(frozen=True)
class Expected:
    covering_sets: tuple[tuple[str, ...], ...]
    insufficient_sets: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class CaseFile:
    type_label: str
    ambient_n: int
    morphism: str
    lines: tuple[LineEntry, ...]
    basis: Rank2Basis
    pullbacks: tuple[PullbackDatum, PullbackDatum]
    pushforwards: Mapping[str, Pair]
    aux_classes: Mapping[str, Pair]
    mori_generators: tuple[str, ...]
    printed_inequalities: tuple[Pair, ...]
    cylinders: tuple[Cylinder, ...]
    expected: Expected


_KEYS = (
    "type",
    "ambient_n",
    "morphism",
    "lines",
    "basis",
    "pullbacks",
    "pushforwards",
    "aux_classes",
    "mori_generators",
    "printed_inequalities",
    "cylinders",
    "expected",
)


def _require(doc: Mapping, keys: Sequence[str], where: str) -> None:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where} must be an object")
    for key in keys:
        if key not in doc:
            raise SchemaError(f"{where} is missing {key!r}")
    for key in doc:
        if key not in keys:
            raise SchemaError(f"{where} has unknown key {key!r}")


def _pair(raw: object, where: str) -> Pair:
    if not isinstance(raw, list) or len(raw) != 2:
        raise SchemaError(f"{where} must be a pair")
    return (parse_rational(raw[0]), parse_rational(raw[1]))


def load_case(text: str) -> CaseFile:
    """Parse and validate one case document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.pos) from err
    _require(doc, _KEYS, "case")

    label = doc["type"]
    if label not in TYPE_LABELS:
        raise SchemaError(f"unknown type label {label!r}")
    n = doc["ambient_n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("ambient_n must be a positive integer")
    morphism = doc["morphism"]
    if morphism not in ("f", "f∘g"):
        raise SchemaError(f"unknown morphism {morphism!r}")

    lines = []
    for raw in doc["lines"]:
        _require(raw, ("name", "coords"), "line")
        coords = tuple(parse_rational(c) for c in raw["coords"])
        if len(coords) != n + 1:
            raise SchemaError(
                f"line {raw['name']!r} has {len(coords)} coordinates,"
                f" expected {n + 1}"
            )
        lines.append(LineEntry(raw["name"], coords))
    line_names = {ln.name for ln in lines}
    if len(line_names) != len(lines):
        raise SchemaError("duplicate line names")

    _require(doc["basis"], ("names", "gram"), "basis")
    names = doc["basis"]["names"]
    if not isinstance(names, list) or len(names) != 2:
        raise SchemaError("basis names must be a pair")
    gram_rows = doc["basis"]["gram"]
    if not isinstance(gram_rows, list) or len(gram_rows) != 2:
        raise SchemaError("basis gram must be 2x2")
    try:
        basis = Rank2Basis(
            (names[0], names[1]),
            (_pair(gram_rows[0], "gram row"), _pair(gram_rows[1], "gram row")),
        )
    except ValueError as err:
        if isinstance(err, (SchemaError, RationalError)):
            raise
        raise SchemaError(str(err)) from err

    pullbacks = []
    for raw in doc["pullbacks"]:
        _require(raw, ("target", "strict_pairings", "coefficients"), "pullback")
        _require(
            raw["strict_pairings"], ("self", "cross", "other_self"), "strict_pairings"
        )
        if raw["target"] not in names:
            raise UnresolvedNameError(
                f"pullback target {raw['target']!r} is not a basis name"
            )
        sp = raw["strict_pairings"]
        pullbacks.append(
            PullbackDatum(
                raw["target"],
                parse_rational(sp["self"]),
                parse_rational(sp["cross"]),
                parse_rational(sp["other_self"]),
                {k: parse_rational(v) for k, v in raw["coefficients"].items()},
            )
        )
    if len(pullbacks) != 2:
        raise SchemaError("expected exactly two pullbacks")

    pushforwards = {}
    for name, raw in doc["pushforwards"].items():
        if name not in line_names:
            raise UnresolvedNameError(f"pushforward of unknown line {name!r}")
        pushforwards[name] = _pair(raw, f"pushforward {name!r}")
    aux_classes = {
        name: _pair(raw, f"aux class {name!r}")
        for name, raw in doc["aux_classes"].items()
    }
    known = set(pushforwards) | set(aux_classes)

    mori = tuple(doc["mori_generators"])
    for name in mori:
        if name not in pushforwards:
            raise UnresolvedNameError(f"Mori generator {name!r} has no pushforward")

    printed = tuple(
        _pair(raw, "printed inequality") for raw in doc["printed_inequalities"]
    )

    cylinders = []
    for raw in doc["cylinders"]:
        _require(raw, ("name", "boundary"), "cylinder")
        for b in raw["boundary"]:
            if b not in known:
                raise UnresolvedNameError(
                    f"cylinder {raw['name']!r} boundary {b!r} is not a known class"
                )
        cylinders.append(Cylinder(raw["name"], tuple(raw["boundary"])))
    cylinder_names = {c.name for c in cylinders}

    _require(doc["expected"], ("covering_sets", "insufficient_sets"), "expected")

    def _sets(raw: object, where: str) -> tuple[tuple[str, ...], ...]:
        out = []
        for group in raw:
            for name in group:
                if name not in cylinder_names:
                    raise UnresolvedNameError(
                        f"{where} references unknown cylinder {name!r}"
                    )
            out.append(tuple(group))
        return tuple(out)

    expected = Expected(
        _sets(doc["expected"]["covering_sets"], "covering set"),
        _sets(doc["expected"]["insufficient_sets"], "insufficient set"),
    )

    return CaseFile(
        type_label=label,
        ambient_n=n,
        morphism=morphism,
        lines=tuple(lines),
        basis=basis,
        pullbacks=(pullbacks[0], pullbacks[1]),
        pushforwards=pushforwards,
        aux_classes=aux_classes,
        mori_generators=mori,
        printed_inequalities=printed,
        cylinders=tuple(cylinders),
        expected=expected,
    )


def serialize(case: CaseFile) -> str:
    """Canonical JSON text; load_case(serialize(case)) reproduces case."""
    doc = {
        "type": case.type_label,
        "ambient_n": case.ambient_n,
        "morphism": case.morphism,
        "lines": [
            {"name": ln.name, "coords": [format_rational(c) for c in ln.coords]}
            for ln in case.lines
        ],
        "basis": {
            "names": list(case.basis.names),
            "gram": [[format_rational(c) for c in row] for row in case.basis.gram],
        },
        "pullbacks": [
            {
                "target": pb.target,
                "strict_pairings": {
                    "self": format_rational(pb.strict_self),
                    "cross": format_rational(pb.strict_cross),
                    "other_self": format_rational(pb.other_self),
                },
                "coefficients": {
                    k: format_rational(v) for k, v in pb.coefficients.items()
                },
            }
            for pb in case.pullbacks
        ],
        "pushforwards": {
            name: [format_rational(a), format_rational(b)]
            for name, (a, b) in case.pushforwards.items()
        },
        "aux_classes": {
            name: [format_rational(a), format_rational(b)]
            for name, (a, b) in case.aux_classes.items()
        },
        "mori_generators": list(case.mori_generators),
        "printed_inequalities": [
            [format_rational(a), format_rational(b)]
            for a, b in case.printed_inequalities
        ],
        "cylinders": [
            {"name": c.name, "boundary": list(c.boundary)} for c in case.cylinders
        ],
        "expected": {
            "covering_sets": [list(s) for s in case.expected.covering_sets],
            "insufficient_sets": [list(s) for s in case.expected.insufficient_sets],
        },
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def filename_for(label: str) -> str:
    """File stem for a type label; primes become 'p' for portability."""
    return label.replace("'", "p")


def label_for(stem: str) -> Optional[str]:
    for label in TYPE_LABELS:
        if filename_for(label) == stem:
            return label
    return None


@lru_cache(maxsize=1)
def bundled_cases() -> dict[str, CaseFile]:
    """All shipped cases, keyed by type label, in canonical order."""
    out = {}
    root = resources.files("ampcyl.data")
    for label in TYPE_LABELS:
        text = (root / f"{filename_for(label)}.json").read_text("utf-8")
        out[label] = load_case(text)
    return out


def bundled_case(label: str) -> CaseFile:
    cases = bundled_cases()
    if label not in cases:
        raise KeyError(f"no bundled case {label!r}")
    return cases[label]
