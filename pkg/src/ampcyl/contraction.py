"""Contractions of ADE curve configurations and intersection descent.

A birational contraction collapsing a configuration of (-2)-curves (plus
possibly some (-1)-curve data baked into pullback coefficients) sends a
class x upstairs to a class downstairs; the pullback of the downstairs
class is x-tilde + sum(c_i C_i) over the contracted curves.  Writing G for
the configuration's intersection matrix, orthogonality of the pullback to
every contracted curve says (-G) c = incidence(x), where incidence(x)_i =
x-tilde . C_i.  Pairings descend by

    f*x . f*y  =  x-tilde . y-tilde + incidence(x) . coeffs(y).

Everything is exact Fraction arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence


class NotADE(ValueError):
    """The configuration is not a disjoint union of ADE Dynkin diagrams."""


class SingularConfiguration(ValueError):
    """The configuration's intersection matrix is singular."""


class DimensionMismatch(ValueError):
    """Vector lengths disagree with the configuration size."""


class UnsupportedMorphism(ValueError):
    """Configuration inference only covers single contractions, not
    compositions."""


@dataclass(frozen=True)
class CurveConfiguration:
    """A configuration of curves with rational self-intersections.

    ``adjacency`` holds pairwise intersection numbers (0 or 1 here);
    the intersection matrix has the self-intersections on the diagonal.
    The matrix must be negative definite, which is checked on creation
    via the signs of the leading principal minors.
    """

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    self_intersections: tuple[Fraction, ...] = None  # defaults to all -2

    def __post_init__(self) -> None:
        m = len(self.labels)
        if self.self_intersections is None:
            object.__setattr__(
                self, "self_intersections", tuple([Fraction(-2)] * m)
            )
        if len(self.adjacency) != m or any(len(row) != m for row in self.adjacency):
            raise DimensionMismatch("adjacency matrix shape disagrees with labels")
        if len(self.self_intersections) != m:
            raise DimensionMismatch("self-intersection count disagrees with labels")
        for i in range(m):
            if self.adjacency[i][i] != 0:
                raise ValueError("adjacency diagonal must be zero")
            for j in range(m):
                if self.adjacency[i][j] != self.adjacency[j][i]:
                    raise ValueError("adjacency must be symmetric")
        if not _negative_definite(self.gram()):
            raise ValueError("configuration matrix is not negative definite")

    @property
    def size(self) -> int:
        return len(self.labels)

    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        m = len(self.labels)
        return tuple(
            tuple(
                self.self_intersections[i] if i == j else Fraction(self.adjacency[i][j])
                for j in range(m)
            )
            for i in range(m)
        )


def _det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def _negative_definite(gram: Sequence[Sequence[Fraction]]) -> bool:
    """Leading principal minors must alternate: (-1)^k det_k > 0."""
    n = len(gram)
    for k in range(1, n + 1):
        minor = [row[:k] for row in gram[:k]]
        d = _det(minor)
        if (-1) ** k * d <= 0:
            return False
    return True


def _components(adjacency: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(adjacency)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if adjacency[v][w] and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_component(adjacency, comp) -> tuple[str, int]:
    """Classify one connected component as (letter, rank) or raise NotADE."""
    size = len(comp)
    degrees = {v: sum(adjacency[v][w] for w in comp) for v in comp}
    edge_count = sum(degrees.values()) // 2
    if edge_count != size - 1:
        raise NotADE("component contains a cycle")
    branch = [v for v in comp if degrees[v] >= 3]
    if any(degrees[v] >= 4 for v in comp):
        raise NotADE("vertex of degree four or more")
    if not branch:
        return ("A", size)
    if len(branch) > 1:
        raise NotADE("more than one branch vertex")
    b = branch[0]
    arms = []
    for nb in comp:
        if not adjacency[b][nb]:
            continue
        length, prev, cur = 1, b, nb
        while True:
            nxt = [w for w in comp if adjacency[cur][w] and w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", size)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    raise NotADE(f"branch arms {arms} match no ADE diagram")


def _format_type(components: list[tuple[str, int]]) -> str:
    """Canonical sum label, big components first, multiplicity collapsed."""
    order = {"E": 0, "D": 1, "A": 2}
    comps = sorted(components, key=lambda c: (-c[1], order[c[0]]))
    out = []
    i = 0
    while i < len(comps):
        j = i
        while j < len(comps) and comps[j] == comps[i]:
            j += 1
        count = j - i
        letter, rank = comps[i]
        out.append((f"{count}" if count > 1 else "") + f"{letter}{rank}")
        i = j
    return "+".join(out)


def recognize_dynkin(config: CurveConfiguration) -> str:
    """Dynkin sum label of a (-2)-curve configuration, e.g. "D6+A1"."""
    if any(s != -2 for s in config.self_intersections):
        raise NotADE("ADE recognition needs all self-intersections equal to -2")
    comps = _components(config.adjacency)
    return _format_type([_classify_component(config.adjacency, c) for c in comps])


def parse_type_label(label: str) -> list[tuple[str, int]]:
    """Expand a sum label like "D5+2A1" or "A7'" into components."""
    components = []
    for part in label.replace("'", "").split("+"):
        m = re.fullmatch(r"(\d*)([ADE])(\d+)", part)
        if not m:
            raise NotADE(f"cannot parse type label part {part!r}")
        count = int(m.group(1) or 1)
        letter, rank = m.group(2), int(m.group(3))
        if letter == "D" and rank < 4 or letter == "E" and rank not in (6, 7, 8):
            raise NotADE(f"no such Dynkin type {letter}{rank}")
        components.extend([(letter, rank)] * count)
    return components


def _component_edges(letter: str, rank: int) -> list[tuple[int, int]]:
    """Edges of one Dynkin diagram on local vertices 0..rank-1."""
    if letter == "A":
        return [(i, i + 1) for i in range(rank - 1)]
    if letter == "D":
        # chain 0..rank-3, two leaves hanging off its last vertex
        return [(i, i + 1) for i in range(rank - 3)] + [
            (rank - 3, rank - 2),
            (rank - 3, rank - 1),
        ]
    # E6/E7/E8: chain 0..rank-2 with the extra vertex attached at position 2
    return [(i, i + 1) for i in range(rank - 2)] + [(2, rank - 1)]


def diagram_for_type(label: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list of the Dynkin diagram for a sum label."""
    edges = []
    offset = 0
    for letter, rank in parse_type_label(label):
        edges.extend((offset + a, offset + b) for a, b in _component_edges(letter, rank))
        offset += rank
    return offset, edges


def solve_pullback(
    config: CurveConfiguration, incidence: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Solve (-G) c = incidence for the pullback correction coefficients."""
    m = config.size
    if len(incidence) != m:
        raise DimensionMismatch("incidence length disagrees with configuration")
    gram = config.gram()
    aug = [
        [-gram[i][j] for j in range(m)] + [Fraction(incidence[i])] for i in range(m)
    ]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularConfiguration("intersection matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(aug[i][m] for i in range(m))


def quotient_pairing(
    strict: Fraction,
    incidence_x: Sequence[Fraction],
    coeffs_y: Sequence[Fraction],
) -> Fraction:
    """Descend a pairing: f*x . f*y = x-tilde . y-tilde + incidence(x) . c(y)."""
    if len(incidence_x) != len(coeffs_y):
        raise DimensionMismatch("incidence and coefficient lengths differ")
    return Fraction(strict) + sum(
        a * b for a, b in zip(incidence_x, coeffs_y)
    )


@dataclass(frozen=True)
class PullbackDatum:
    """Printed pullback formula for one target basis class.

    ``strict_self`` is the self-intersection of the strict transform,
    ``strict_cross`` its pairing with the other target's strict transform,
    ``other_self`` the other strict transform's self-intersection, and
    ``coefficients`` the printed multiples of the contracted curves
    (nonnegative by convention; omitted keys mean zero).
    """

    target: str
    strict_self: Fraction
    strict_cross: Fraction
    other_self: Fraction
    coefficients: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        for k, v in self.coefficients.items():
            if v < 0:
                raise ValueError(f"negative pullback coefficient for {k}")


@dataclass(frozen=True)
class InferenceResult:
    config: CurveConfiguration
    incidences: Mapping[str, tuple[Fraction, ...]]
    gram: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def infer_configuration(
    type_label: str,
    pullbacks: Sequence[PullbackDatum],
    target_gram: Sequence[Sequence[Fraction]],
    morphism: str = "f",
) -> Optional[InferenceResult]:
    """Search for a curve configuration explaining the printed pullbacks.

    Places the named curves on the Dynkin diagram of ``type_label`` (extra
    vertices become zero-coefficient phantom curves) so that every
    incidence vector (-G) c is componentwise a nonnegative integer and the
    descended pairings reproduce ``target_gram`` exactly.  Returns None
    when no placement works; the search order is deterministic, so the
    first accepted placement is canonical.  Phantom vertices are drawn
    from an interchangeable pool, never permuted among themselves.
    """
    if morphism != "f":
        raise UnsupportedMorphism(
            "inference covers single contractions only, not compositions"
        )
    if len(pullbacks) != 2:
        raise DimensionMismatch("rank-2 inference expects exactly two pullbacks")
    m, edges = diagram_for_type(type_label)
    names: list[str] = []
    for pb in pullbacks:
        for k in pb.coefficients:
            if k not in names:
                names.append(k)
    if len(names) > m:
        return None
    adjacency = [[0] * m for _ in range(m)]
    for a, b in edges:
        adjacency[a][b] = adjacency[b][a] = 1
    neighbors = [tuple(j for j in range(m) if adjacency[i][j]) for i in range(m)]
    # rows of a vertex can be checked once the vertex and all its neighbors
    # are assigned; record, per assignment step, which rows complete there
    complete_at = [[] for _ in range(m)]
    for v in range(m):
        complete_at[max((v, *neighbors[v]))].append(v)
    coeff_of = [
        {i: pb.coefficients.get(nm, Fraction(0)) for i, nm in enumerate(names)}
        for pb in pullbacks
    ]
    assignment: list[Optional[int]] = [None] * m  # vertex -> index into names
    used = [False] * len(names)

    def row_ok(vertex: int) -> bool:
        for cf in coeff_of:
            def coeff(w: int) -> Fraction:
                a = assignment[w]
                return cf[a] if a is not None else Fraction(0)

            inc = 2 * coeff(vertex) - sum(coeff(w) for w in neighbors[vertex])
            if inc < 0 or inc.denominator != 1:
                return False
        return True

    def finish() -> Optional[InferenceResult]:
        labels = tuple(
            names[assignment[v]] if assignment[v] is not None else f"Z{v}"
            for v in range(m)
        )
        config = CurveConfiguration(labels, tuple(tuple(row) for row in adjacency))
        cvecs = []
        for cf in coeff_of:
            cvecs.append(
                tuple(
                    cf[assignment[v]] if assignment[v] is not None else Fraction(0)
                    for v in range(m)
                )
            )
        gram = config.gram()
        incs = []
        for c in cvecs:
            incs.append(
                tuple(
                    -sum(gram[i][j] * c[j] for j in range(m)) for i in range(m)
                )
            )
        x, y = pullbacks
        g00 = quotient_pairing(x.strict_self, incs[0], cvecs[0])
        g01 = quotient_pairing(x.strict_cross, incs[0], cvecs[1])
        g10 = quotient_pairing(y.strict_cross, incs[1], cvecs[0])
        g11 = quotient_pairing(y.strict_self, incs[1], cvecs[1])
        want = target_gram
        if (
            g00 != want[0][0]
            or g01 != want[0][1]
            or g10 != want[1][0]
            or g11 != want[1][1]
        ):
            return None
        return InferenceResult(
            config,
            {x.target: incs[0], y.target: incs[1]},
            ((g00, g01), (g10, g11)),
        )

    phantoms_left = m - len(names)

    def search(vertex: int, phantoms: int) -> Optional[InferenceResult]:
        if vertex == m:
            return finish()
        for idx in range(len(names)):
            if used[idx]:
                continue
            assignment[vertex] = idx
            used[idx] = True
            if all(row_ok(v) for v in complete_at[vertex]):
                found = search(vertex + 1, phantoms)
                if found is not None:
                    return found
            used[idx] = False
            assignment[vertex] = None
        if phantoms > 0:
            assignment[vertex] = None
            if all(row_ok(v) for v in complete_at[vertex]):
                found = search(vertex + 1, phantoms - 1)
                if found is not None:
                    return found
        return None

    return search(0, phantoms_left)
