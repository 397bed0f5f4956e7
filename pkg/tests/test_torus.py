from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cotangent_points, curve_points
from ellhiggs.errors import DomainError
from ellhiggs.torus import (
    ORIGIN,
    ComplexRational,
    CotangentPoint,
    CurvePoint,
    add,
    compare,
    complex_from_json,
    cotangent_from_json,
    cotangent_to_json,
    cpoint,
    curve_from_json,
    curve_to_json,
    neg,
    parse_rational,
    point_order,
    rational_to_str,
    scalar_mul,
    torsion_subgroup,
)


def test_add_examples():
    assert add(cpoint("1/2", 0, 0), cpoint("1/2", 0, 0)) == ORIGIN
    assert add(cpoint("1/3", "2/3", 1), cpoint("1/3", "1/3", 2)) == cpoint("2/3", 0, 3)
    p = cpoint("1/5", "3/7", "1/2", -1)
    assert add(p, ORIGIN) == p


def test_neg_examples():
    assert neg(cpoint("1/3", 0, 2)) == cpoint("2/3", 0, -2)
    assert neg(ORIGIN) == ORIGIN
    p = cpoint("1/2", "1/2", 0)
    assert neg(p) == p
    assert p.is_self_negative()
    assert not cpoint("1/2", "1/2", 1).is_self_negative()
    assert not cpoint("1/3", 0, 0).is_self_negative()


def test_scalar_mul_examples():
    assert scalar_mul(3, cpoint("1/3", 0, 1)) == cpoint(0, 0, 3)
    assert scalar_mul(0, cpoint("1/7", "2/7", 5)) == ORIGIN
    assert scalar_mul(-2, cpoint("1/4", 0, "1/2")) == cpoint("1/2", 0, -1)


def test_coordinates_reduced():
    x = CurvePoint(Fraction(7, 3), Fraction(-1, 4))
    assert (x.a, x.b) == (Fraction(1, 3), Fraction(3, 4))


def test_torsion_subgroup_examples():
    assert torsion_subgroup(1) == [CurvePoint(0, 0)]
    two = torsion_subgroup(2)
    assert len(two) == 4
    assert {(p.a, p.b) for p in two} == {(Fraction(i, 2), Fraction(j, 2)) for i in range(2) for j in range(2)}
    assert len(torsion_subgroup(3)) == 9
    for n in range(1, 7):
        pts = torsion_subgroup(n)
        assert pts == sorted(pts)
        assert len(set(pts)) == n * n


@pytest.mark.parametrize("n", [0, -3])
def test_torsion_subgroup_rejects_nonpositive(n):
    with pytest.raises(DomainError):
        torsion_subgroup(n)


def test_point_order_examples():
    assert point_order(CurvePoint(0, 0)) == 1
    assert point_order(CurvePoint("1/2", "1/3")) == 6
    assert point_order(CurvePoint("3/4", 0)) == 4
    assert point_order(CurvePoint("6/8", 0)) == 4


def test_compare_examples():
    assert compare(cpoint("1/3", 0, 0), cpoint("2/3", 0, 0)) == -1
    p = cpoint("1/3", "1/5", 2, 1)
    assert compare(p, p) == 0
    assert compare(cpoint(0, 0, 0, 1), cpoint(0, 0, 1, 0)) == -1
    # x dominates t
    assert compare(cpoint(0, "1/2", -5), cpoint("1/2", 0, -9)) == -1


@given(cotangent_points(), cotangent_points(), cotangent_points())
def test_group_axioms(p, q, r):
    assert add(add(p, q), r) == add(p, add(q, r))
    assert add(p, q) == add(q, p)
    assert add(p, ORIGIN) == p
    assert add(p, neg(p)) == ORIGIN
    assert neg(neg(p)) == p


@given(cotangent_points(), st.integers(-7, 7), st.integers(-7, 7))
def test_scalar_mul_is_additive(p, j, k):
    assert scalar_mul(j + k, p) == add(scalar_mul(j, p), scalar_mul(k, p))
    assert scalar_mul(-k, p) == neg(scalar_mul(k, p))


@given(cotangent_points(), cotangent_points(), cotangent_points())
def test_compare_total_order(p, q, r):
    assert compare(p, q) == -compare(q, p)
    assert (compare(p, q) == 0) == (p == q)
    if compare(p, q) <= 0 and compare(q, r) <= 0:
        assert compare(p, r) <= 0


@given(curve_points())
def test_point_order_is_minimal(x):
    k = point_order(x)
    assert (x * k).is_identity()
    assert all(not (x * j).is_identity() for j in range(1, k))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_torsion_subgroup_closed(n):
    pts = set(torsion_subgroup(n))
    for p in pts:
        assert -p in pts
        assert n % point_order(p) == 0
        for q in pts:
            assert p + q in pts


@pytest.mark.parametrize("n,h", [(1, 2), (2, 2), (3, 2), (2, 3), (4, 2)])
def test_multiplication_by_h_is_onto_with_kernel_h_squared(n, h):
    big = torsion_subgroup(n * h)
    images = [p * h for p in big]
    assert set(images) == set(torsion_subgroup(n))
    assert sum(1 for p in images if p.is_identity()) == h * h


def test_rational_serialization():
    assert rational_to_str(Fraction(3, 1)) == "3"
    assert rational_to_str(Fraction(-2, 4)) == "-1/2"
    assert parse_rational("4/6") == Fraction(2, 3)
    assert parse_rational("-5") == Fraction(-5)
    for bad in ["1/0", "a/2", "1/-2", "", "1.5"]:
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_point_serialization():
    p = cpoint("1/3", 0, 1, "-1/2")
    data = cotangent_to_json(p)
    assert data == {"x": ["1/3", "0"], "t": ["1", "-1/2"]}
    assert cotangent_from_json(data) == p
    assert curve_to_json(CurvePoint("5/4", "1/2")) == ["1/4", "1/2"]
    assert curve_from_json(["1/4", "1/2"]) == CurvePoint("1/4", "1/2")
    assert complex_from_json("3") == ComplexRational(3)
    with pytest.raises(DomainError):
        curve_from_json(["1/2"])


@given(cotangent_points())
def test_serialization_round_trip(p):
    assert cotangent_from_json(cotangent_to_json(p)) == p


def test_cotangent_point_defaults():
    assert CotangentPoint() == ORIGIN
    assert CotangentPoint(CurvePoint("1/2", 0), 3).t == ComplexRational(3)
