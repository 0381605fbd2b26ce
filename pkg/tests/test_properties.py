from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ampcyl.cases import TYPE_LABELS, bundled_case, load_case, serialize
from ampcyl.cone2 import (
    NotSalient,
    Ray2,
    cone_from_generators,
    covers_open,
    in_relint,
    positive_weights,
    Wedge,
)
from ampcyl.contraction import (
    CurveConfiguration,
    diagram_for_type,
    recognize_dynkin,
    solve_pullback,
)
from ampcyl.lattice import BlowupLattice, divisor, intersect
from ampcyl.oracle import brute_extremal, sweep_coverage
from ampcyl.surface import PushedClass, ample_wedge, mori_extremal

F = Fraction

rational = st.fractions(min_value=-9, max_value=9, max_denominator=12)
coord5 = st.tuples(rational, rational, rational, rational, rational)
int_pair = st.tuples(st.integers(-9, 9), st.integers(-9, 9))
nonzero_pair = int_pair.filter(lambda p: p != (0, 0))


@given(a=coord5, b=coord5, c=coord5, s=rational)
def test_intersect_is_symmetric_and_bilinear(a, b, c, s):
    lat = BlowupLattice(4)
    da, db, dc = divisor(lat, a), divisor(lat, b), divisor(lat, c)
    assert intersect(da, db) == intersect(db, da)
    assert intersect(da + db, dc) == intersect(da, dc) + intersect(db, dc)
    assert intersect(s * da, db) == s * intersect(da, db)


@given(p=nonzero_pair, num=st.integers(1, 30), den=st.integers(1, 30))
def test_ray_normalization_scale_invariant_and_idempotent(p, num, den):
    x, y = p
    k = F(num, den)
    r = Ray2.from_pair(F(x), F(y))
    assert Ray2.from_pair(k * x, k * y) == r
    assert Ray2.from_pair(F(r.x), F(r.y)) == r


@given(gens=st.lists(nonzero_pair, min_size=1, max_size=5), target=nonzero_pair)
def test_positive_weights_iff_target_in_relint(gens, target):
    try:
        cone = cone_from_generators(gens)
    except NotSalient:
        assume(False)
    tx, ty = F(target[0]), F(target[1])
    weights = positive_weights((tx, ty), gens)
    member = in_relint(cone, Ray2.from_pair(tx, ty))
    assert (weights is not None) == member
    if weights is not None:
        assert all(w > 0 for w in weights)
        sx = sum(w * g[0] for w, g in zip(weights, gens))
        sy = sum(w * g[1] for w, g in zip(weights, gens))
        assert (sx, sy) == (tx, ty)


@given(
    label=st.sampled_from(TYPE_LABELS),
    index=st.integers(0, 31),
    num=st.integers(1, 9),
    den=st.integers(1, 9),
)
def test_mori_and_ample_invariant_under_generator_scaling(label, index, num, den):
    case = bundled_case(label)
    gens = [
        PushedClass(n, case.pushforwards[n]) for n in case.mori_generators
    ]
    i = index % len(gens)
    k = F(num, den)
    scaled = list(gens)
    scaled[i] = PushedClass(
        gens[i].name, (k * gens[i].coords[0], k * gens[i].coords[1])
    )
    rays, _ = mori_extremal(gens)
    rays_scaled, _ = mori_extremal(scaled)
    assert rays == rays_scaled
    assert ample_wedge(case.basis, rays) == ample_wedge(case.basis, rays_scaled)


@given(label=st.sampled_from(TYPE_LABELS))
def test_case_serialization_round_trips(label):
    case = bundled_case(label)
    assert load_case(serialize(case)) == case


ADE_LABELS = (
    "A1", "A2", "A4", "A7", "D4", "D5", "D7", "E6", "E7", "E8",
    "A2+A1", "D5+2A1", "A4+A2+A1", "E7+A1", "2D4",
)


@given(label=st.sampled_from(ADE_LABELS), data=st.data())
def test_recognize_invariant_under_vertex_permutation(label, data):
    size, edges = diagram_for_type(label)
    perm = data.draw(st.permutations(range(size)))
    adjacency = [[0] * size for _ in range(size)]
    for a, b in edges:
        adjacency[perm[a]][perm[b]] = adjacency[perm[b]][perm[a]] = 1
    config = CurveConfiguration(
        tuple(f"C{i}" for i in range(size)),
        tuple(tuple(row) for row in adjacency),
    )
    assert recognize_dynkin(config) == label


@given(label=st.sampled_from(ADE_LABELS), data=st.data())
def test_solve_pullback_solves_the_incidence_system(label, data):
    size, edges = diagram_for_type(label)
    adjacency = [[0] * size for _ in range(size)]
    for a, b in edges:
        adjacency[a][b] = adjacency[b][a] = 1
    config = CurveConfiguration(
        tuple(f"C{i}" for i in range(size)),
        tuple(tuple(row) for row in adjacency),
    )
    incidence = [
        F(v) for v in data.draw(
            st.lists(st.integers(0, 3), min_size=size, max_size=size)
        )
    ]
    coeffs = solve_pullback(config, incidence)
    gram = config.gram()
    recovered = [
        -sum(gram[i][j] * coeffs[j] for j in range(size)) for i in range(size)
    ]
    assert recovered == incidence


def _wedge_from(data, what):
    start = data.draw(nonzero_pair.map(lambda p: Ray2.from_pair(*p)), label=f"{what} start")
    end = data.draw(nonzero_pair.map(lambda p: Ray2.from_pair(*p)), label=f"{what} end")
    from ampcyl.cone2 import cross

    if cross(end, start) > 0:
        return Wedge.span(start, end)
    if cross(start, end) > 0:
        return Wedge.span(end, start)
    assume(False)


@settings(max_examples=60)
@given(data=st.data())
def test_cover_verdict_agrees_with_ray_sweep_oracle(data):
    target = _wedge_from(data, "target")
    pieces = []
    for i in range(data.draw(st.integers(0, 4), label="piece count")):
        if data.draw(st.booleans(), label=f"piece {i} single?"):
            pieces.append(
                Wedge.single(
                    data.draw(nonzero_pair.map(lambda p: Ray2.from_pair(*p)))
                )
            )
        else:
            pieces.append(_wedge_from(data, f"piece {i}"))
    cert = covers_open(target, pieces)
    covered, witness = sweep_coverage(target, pieces, bound=16)
    assert cert.covered == covered
    if not cert.covered:
        assert in_relint(target, cert.witness)
        assert in_relint(target, witness)


@given(rays=st.lists(nonzero_pair.map(lambda p: Ray2.from_pair(*p)), min_size=1, max_size=7))
def test_extremal_rays_agree_with_brute_force(rays):
    try:
        wedge = cone_from_generators([(r.x, r.y) for r in rays])
        exact = (wedge.start, wedge.end)
    except NotSalient:
        exact = None
    try:
        brute = brute_extremal(rays)
    except NotSalient:
        brute = None
    assert exact == brute
