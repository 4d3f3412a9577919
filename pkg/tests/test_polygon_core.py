from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from newtonpoly import (DomainError, Family, LatticePolygon, TorusDivisor, UnimodularMap,
                        UnsupportedCaseError, apply, are_equivalent, canonical_form, counts,
                        divisor_polygon, hull, interior_hull, max_polygon, minkowski_sum,
                        mixed_volume, named_polygon, outward_polygon, parse_polygon, recognize,
                        volume2)
from newtonpoly.polygon_core import (Dim, LatticeDirection, NamedFamily, format_polygon,
                                     scale, translate)

from conftest import GENUS7, gamma51, random_polygons, random_unimodular, sigma, square, upsilon

GAMMA7_HULL = hull([(1, 0), (2, -1), (3, -1), (3, 1), (2, 1)])


def test_hull_examples():
    S = hull([(0, 0), (1, 0), (0, 1)])
    assert S.dim == Dim.TWO_D and S.vertices == ((0, 0), (1, 0), (0, 1))
    seg = hull([(0, 0), (2, 0), (1, 0)])
    assert seg.dim == Dim.SEGMENT and seg.vertices == ((0, 0), (2, 0))
    assert hull([]).dim == Dim.EMPTY
    assert hull([(3, 4), (3, 4)]).dim == Dim.POINT


def test_hull_drops_collinear_and_orients_ccw():
    P = hull([(2, 2), (0, 0), (1, 0), (2, 0), (0, 2), (1, 1), (2, 1)])
    assert P.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_constructor_rejects_non_hull():
    with pytest.raises(DomainError):
        LatticePolygon(((0, 0), (0, 1), (1, 0)))
    assert LatticePolygon(((0, 0), (1, 0), (0, 1))) == sigma()


def test_volume2_examples():
    assert volume2(sigma()) == 1
    assert volume2(named_polygon(Family.DELTA3)) == 33
    assert volume2(named_polygon(Family.DELTA2)) == 32
    # the displayed coordinates of Delta_1 enclose doubled area 26
    assert volume2(named_polygon(Family.DELTA1)) == 26
    assert volume2(hull([(0, 0), (3, 0)])) == 0


def test_counts_examples():
    assert counts(upsilon()) == (4, 3, 1)
    assert counts(sigma(2)) == (6, 6, 0)
    assert counts(GENUS7)[2] == 7
    assert counts(hull([(0, 0), (4, 2)])) == (3, 3, 0)
    assert counts(hull([])) == (0, 0, 0)


def test_minkowski_examples():
    assert minkowski_sum(sigma(), sigma()) == sigma(2)
    assert minkowski_sum(GENUS7, hull([(2, -3)])) == translate(GENUS7, (2, -3))
    assert minkowski_sum(hull([(0, 0), (1, 0)]), hull([(0, 0), (0, 1)])) == square()
    with pytest.raises(DomainError):
        minkowski_sum(hull([]), sigma())


def test_minkowski_matches_pairwise_hull():
    for P, Q in zip(random_polygons(200, 1), random_polygons(200, 2)):
        brute = hull((p[0] + q[0], p[1] + q[1]) for p in P.vertices for q in Q.vertices)
        assert minkowski_sum(P, Q) == brute


def test_mixed_volume_examples():
    assert mixed_volume(sigma(), sigma()) == 1
    for d in range(1, 7):
        assert mixed_volume(sigma(d), hull([(0, 0), (1, 1)])) == 2 * d
    assert mixed_volume(GENUS7, hull([(5, 5)])) == 0
    with pytest.raises(DomainError):
        mixed_volume(sigma(), hull([]))


def test_mixed_volume_symmetric():
    for P, Q in zip(random_polygons(100, 3), random_polygons(100, 4)):
        assert mixed_volume(P, Q) == mixed_volume(Q, P)


def test_apply_examples():
    ident = UnimodularMap(((1, 0), (0, 1)))
    assert apply(ident, GENUS7) == GENUS7
    assert apply(UnimodularMap(((0, 1), (1, 0))), sigma()) == sigma()
    img = apply(UnimodularMap(((1, 1), (0, 1))), square())
    assert img == hull([(0, 0), (1, 0), (1, 1), (2, 1)]) and volume2(img) == 2
    with pytest.raises(DomainError):
        UnimodularMap(((2, 0), (0, 1)))


def test_canonical_form_examples():
    U = UnimodularMap(((2, 1), (1, 1)))
    assert canonical_form(apply(U, upsilon())) == canonical_form(upsilon())
    C = canonical_form(GENUS7)
    assert canonical_form(C) == C
    assert canonical_form(hull([(3, 3)])).vertices == ((0, 0),)
    assert canonical_form(hull([(1, 1), (3, 5)])).vertices == ((0, 0), (2, 0))


def test_canonical_form_is_orbit_invariant():
    rng = random.Random(7)
    for P in random_polygons(500, 5):
        Q = apply(random_unimodular(rng, 3), P)
        assert canonical_form(Q) == canonical_form(P)
        assert counts(Q) == counts(P) and volume2(Q) == volume2(P)


def test_canonical_form_separates_classes():
    # mirror images are identified, distinct invariants never are
    P = hull([(0, 0), (3, 0), (1, 1), (0, 2)])
    mirror = hull([(-x, y) for x, y in P.vertices])
    assert are_equivalent(P, mirror)
    seen = {}
    for Q in random_polygons(800, 6, skew=False):
        key = canonical_form(Q).vertices
        inv = (counts(Q), volume2(Q), len(Q.vertices))
        assert seen.setdefault(key, inv) == inv


def test_are_equivalent_examples():
    for d in range(1, 6):
        skew = apply(UnimodularMap(((1, 3), (0, 1))), sigma(d))
        assert are_equivalent(sigma(d), skew)
    assert not are_equivalent(sigma(), square())
    assert are_equivalent(interior_hull(upsilon(2)), upsilon())


def test_interior_hull_examples():
    for d in range(3, 9):
        assert are_equivalent(interior_hull(sigma(d)), sigma(d - 3)) if d > 3 else \
            interior_hull(sigma(d)).dim == Dim.POINT
    assert interior_hull(sigma(2)).dim == Dim.EMPTY
    assert interior_hull(GENUS7) == GAMMA7_HULL
    for d in range(2, 6):
        assert are_equivalent(interior_hull(upsilon(d)), upsilon(d - 1))


def test_outward_polygon_examples():
    for G, expected in [(upsilon(), upsilon(2)), (upsilon(2), upsilon(3)), (gamma51(), gamma51(2)),
                        (named_polygon(Family.GAMMA52), scale(named_polygon(Family.GAMMA52), 2)),
                        (named_polygon(Family.GAMMA53), scale(named_polygon(Family.GAMMA53), 2)),
                        (sigma(), sigma(4))]:
        R, ok = outward_polygon(G)
        assert ok and R.is_lattice
        assert are_equivalent(R.to_lattice(), expected)
    with pytest.raises(UnsupportedCaseError):
        outward_polygon(hull([(0, 0), (2, 0)]))


def test_outward_polygon_non_lattice():
    # a triangle with a singular corner moves out to a rational triangle
    R, ok = outward_polygon(hull([(0, 0), (3, 1), (1, 2)]))
    assert not ok and not R.is_lattice
    assert (Fraction(-4, 5), Fraction(-3, 5)) in R.vertices
    assert (Fraction(4), Fraction(1)) in R.vertices
    R, ok = outward_polygon(hull([(0, 0), (3, 0), (0, 1), (1, 1)]))
    assert ok and R.is_lattice and len(R.vertices) == 4


def test_outward_polygon_with_vanishing_edge():
    # a short edge between two long ones disappears when moving out
    G = hull([(-2, -3), (4, 3), (3, 3), (2, 2)])
    R, ok = outward_polygon(G)
    hps = [(a, b, c - 1) for a, b, c in G.halfplanes]
    for x, y in R.vertices:
        assert all(a * x + b * y >= c for a, b, c in hps)
        assert sum(a * x + b * y == c for a, b, c in hps) >= 2
    assert len(R.vertices) == 3 and len(G.vertices) == 4
    assert (Fraction(17, 5), Fraction(4)) in R.vertices


def test_max_polygon_examples():
    assert are_equivalent(max_polygon(upsilon(2)), upsilon(2))
    for d in range(4, 9):
        assert are_equivalent(max_polygon(sigma(d)), sigma(d))
    M = max_polygon(GENUS7)
    assert all(M.contains(p) for p in GENUS7.vertices)
    assert interior_hull(M) == interior_hull(GENUS7)
    with pytest.raises(UnsupportedCaseError):
        max_polygon(upsilon())


def test_max_polygon_properties():
    for P in random_polygons(400, 8):
        H = interior_hull(P)
        if H.dim < Dim.TWO_D:
            continue
        R, ok = outward_polygon(H)
        assert ok
        M = max_polygon(P)
        assert interior_hull(M) == H
        assert all(M.contains(p) for p in P.vertices)


def test_recognize_examples():
    assert recognize(hull([(0, 0), (3, 0), (0, 3)])) == NamedFamily(Family.SIGMA_MULTIPLE, 3)
    shear = UnimodularMap(((1, 1), (0, 1)))
    assert recognize(apply(shear, named_polygon(Family.GAMMA8))) == NamedFamily(Family.GAMMA8, 1)
    assert recognize(GENUS7) is None
    assert recognize(upsilon(4)) == NamedFamily(Family.UPSILON_MULTIPLE, 4)
    assert recognize(gamma51(3)) == NamedFamily(Family.GAMMA51_MULTIPLE, 3)
    assert recognize(square(2)) == NamedFamily(Family.SQUARE_MULTIPLE, 2)
    assert recognize(hull([(0, 0), (1, 0)])) is None
    for fam in Family:
        assert recognize(named_polygon(fam)) == NamedFamily(fam, 1)


def test_divisor_polygon_sigma():
    D = TorusDivisor(((1, 0), (0, 1), (-1, -1)), (0, 0, 1))
    res = divisor_polygon(D)
    assert res.polygon.vertices == ((0, 0), (1, 0), (0, 1))
    assert res.polygon.is_lattice and res.is_cartier and res.is_convex and res.is_strictly_convex


def test_divisor_polygon_trivial():
    res = divisor_polygon(TorusDivisor(((1, 0), (0, 1), (-1, -1)), (0, 0, 0)))
    assert res.polygon.vertices == ((0, 0),)
    assert res.is_convex and not res.is_strictly_convex and res.is_cartier


def test_divisor_polygon_non_cartier():
    # lowering a coefficient moves an apex off the lattice
    rays = ((1, 0), (0, 1), (-1, -2))
    res = divisor_polygon(TorusDivisor(rays, (0, 0, 2)))
    assert res.is_cartier
    res = divisor_polygon(TorusDivisor(rays, (0, 0, 1)))
    assert not res.is_cartier and not res.polygon.is_lattice
    assert (Fraction(0), Fraction(1, 2)) in res.polygon.vertices


def test_divisor_polygon_non_convex():
    # the ray (1,1) contributes a redundant half-plane: its apexes are not vertices
    rays = ((1, 0), (1, 1), (0, 1), (-1, 0), (0, -1))
    res = divisor_polygon(TorusDivisor(rays, (0, 5, 0, 2, 2)))
    assert res.polygon.to_lattice() == square(2)
    assert not res.is_convex and not res.is_strictly_convex


def test_divisor_polygon_of_fan_recovers_polygon():
    for P in random_polygons(100, 9, skew=False):
        hps = P.halfplanes
        res = divisor_polygon(TorusDivisor(tuple((a, b) for a, b, _ in hps), tuple(-c for *_, c in hps)))
        assert res.polygon.to_lattice() == P
        assert res.is_cartier and res.is_strictly_convex


def test_divisor_polygon_errors():
    with pytest.raises(DomainError):
        divisor_polygon(TorusDivisor(((1, 0), (0, 1)), (0, 0)))
    with pytest.raises(DomainError):
        divisor_polygon(TorusDivisor(((1, 0), (0, 1), (-1, 0)), (0, 0, 1)))
    with pytest.raises(DomainError):
        TorusDivisor(((2, 0), (0, 1), (-1, -1)), (0, 0, 0))
    with pytest.raises(DomainError):
        TorusDivisor(((1, 0), (0, 1)), (0,))


def test_parse_formats():
    P = parse_polygon("(0,0),(1,-1),(3,-2),(4,-2),(4,2),(3,2),(1,1)")
    assert P == GENUS7
    assert parse_polygon("[[0,0],[2,0],[0,2],[1,1]]") == sigma(2)
    assert parse_polygon(format_polygon(GENUS7)) == GENUS7
    for bad in ["(0,0),(1", "[[0,0],[1]]", "nonsense", "[[0.5,1]]", "(0,0);(1,1)"]:
        with pytest.raises(DomainError):
            parse_polygon(bad)


def test_lattice_direction_canonical_sign():
    assert LatticeDirection.of(-1, 0) == LatticeDirection(1, 0)
    assert LatticeDirection.of(1, -1) == LatticeDirection(-1, 1)
    with pytest.raises(DomainError):
        LatticeDirection(2, 2)
    with pytest.raises(DomainError):
        LatticeDirection(0, -1)
    with pytest.raises(DomainError):
        LatticeDirection.of(0, 0)


points = st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)), min_size=3, max_size=12)


@settings(max_examples=300, deadline=None)
@given(points)
def test_pick_identity_fuzzed(pts):
    P = hull(pts)
    if P.dim == Dim.TWO_D:
        lat, b, i = counts(P)
        assert volume2(P) == 2 * i + b - 2
        assert lat == len(P.lattice_points())
        assert i == len(P.interior_points)


@settings(max_examples=200, deadline=None)
@given(points, st.integers(-3, 3), st.integers(-3, 3), st.booleans())
def test_apply_preserves_invariants(pts, k, m, flip):
    P = hull(pts)
    U = UnimodularMap(((1, k), (0, 1)))
    V = UnimodularMap(((m, 1), (-1, 0) if not flip else (1, 0)))
    Q = apply(V, apply(U, P))
    assert counts(Q) == counts(P)
    assert volume2(Q) == volume2(P)
    assert canonical_form(Q) == canonical_form(P)


@settings(max_examples=200, deadline=None)
@given(points, points, points)
def test_equivalence_relation(p1, p2, p3):
    A, B, C = hull(p1), hull(p2), hull(p3)
    assert are_equivalent(A, A)
    assert are_equivalent(A, B) == are_equivalent(B, A)
    if are_equivalent(A, B) and are_equivalent(B, C):
        assert are_equivalent(A, C)
    if are_equivalent(A, B):
        assert counts(A) == counts(B) and volume2(A) == volume2(B)
