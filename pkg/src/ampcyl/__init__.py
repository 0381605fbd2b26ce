"""Exact verification of cylindrical ample cones on rank-2 degree-1
Du Val del Pezzo surfaces.

Everything on the verdict path runs in exact rational arithmetic; no
floating point is involved except in presentation-layer SVG coordinates.
"""

from .cases import CaseFile, bundled_case, bundled_cases, load_case, serialize
from .cone2 import Ray2, Wedge, covers_open, positive_weights
from .lattice import BlowupLattice, DivisorClass, anticanonical, divisor, intersect
from .surface import CaseReport, coverage_verdict, polarity_cone, verify_case

__version__ = "0.1.0"

__all__ = [
    "BlowupLattice",
    "CaseFile",
    "CaseReport",
    "DivisorClass",
    "Ray2",
    "Wedge",
    "anticanonical",
    "bundled_case",
    "bundled_cases",
    "coverage_verdict",
    "covers_open",
    "divisor",
    "intersect",
    "load_case",
    "polarity_cone",
    "positive_weights",
    "serialize",
    "verify_case",
    "__version__",
]
