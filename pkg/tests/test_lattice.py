from fractions import Fraction

import pytest

from ampcyl.lattice import (
    BlowupLattice,
    MismatchedLattice,
    anticanonical,
    divisor,
    intersect,
    is_line_class,
    validate_line_table,
)


@pytest.fixture
def lat8():
    return BlowupLattice(8)


def e(lat, i):
    coords = [0] * lat.rank
    coords[i] = 1
    return divisor(lat, coords)


def test_rank(lat8):
    assert lat8.rank == 9


def test_diagonal_form(lat8):
    ell = e(lat8, 0)
    assert intersect(ell, ell) == 1
    e3, e5 = e(lat8, 3), e(lat8, 5)
    assert intersect(e3, e3) == -1
    assert intersect(e3, e5) == 0
    assert intersect(ell, e3) == 0


def test_intersect_bilinear(lat8):
    a = divisor(lat8, [1, 1, 0, 0, 0, 0, 0, 0, 0])
    b = divisor(lat8, [2, 0, 1, 0, 0, 0, 0, 0, 0])
    c = divisor(lat8, [0, 0, 0, 3, 0, 0, 0, 0, 0])
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
    assert intersect(Fraction(5, 2) * a, b) == Fraction(5, 2) * intersect(a, b)


def test_mismatched_lattice():
    a = divisor(BlowupLattice(3), [1, 0, 0, 0])
    b = divisor(BlowupLattice(4), [1, 0, 0, 0, 0])
    with pytest.raises(MismatchedLattice):
        intersect(a, b)


@pytest.mark.parametrize(
    "n,square", [(8, 1), (10, -1), (0, 9)]
)
def test_anticanonical_square(n, square):
    k = anticanonical(BlowupLattice(n))
    assert intersect(k, k) == square
    assert k.coords[0] == 3
    assert all(c == -1 for c in k.coords[1:])


def test_degree_six_line_class():
    lat = BlowupLattice(10)
    c = divisor(lat, [6, -2, -2, -2, -2, 0, -3, -3, -1, -1, -1])
    assert intersect(c, c) == -1
    assert intersect(anticanonical(lat), c) == 1
    assert is_line_class(c)


def test_exceptional_is_line(lat8):
    assert is_line_class(divisor(lat8, [0, 0, 0, 0, 1, 0, 0, 0, 0]))


def test_square_zero_class_is_not_a_line(lat8):
    c = divisor(lat8, [1, -1, 0, 0, 0, 0, 0, 0, 0])
    assert intersect(c, c) == 0
    assert not is_line_class(c)


def test_validate_line_table_reports_offender(lat8):
    good = divisor(lat8, [0, 1, 0, 0, 0, 0, 0, 0, 0])
    bad = divisor(lat8, [1, -1, 0, 0, 0, 0, 0, 0, 0])
    violations = validate_line_table([good, bad, good])
    assert [v[0] for v in violations] == [1]
    index, square, degree = violations[0]
    assert (square, degree) == (0, 2)


def test_validate_line_table_clean(lat8):
    table = [e(lat8, i) for i in range(1, 9)]
    assert validate_line_table(table) == []
