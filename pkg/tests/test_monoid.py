"""Monoid membership, rays, truncations, and their combinatorial invariants."""

import math
import random

import pytest

from raywitt.errors import RaywittError, UndecidableError
from raywitt.monoid import (
    AffineMonoid,
    MonoidIdeal,
    Ray,
    TruncatedMonoid,
    natural_line,
    nonneg_orthant,
)

CONE = AffineMonoid(rank=2, inequalities=((0, 1), (2, -1)))
CONE_GENERATED = AffineMonoid(
    rank=2, generators=((1, 0), (1, 1), (1, 2)), authoritative="generators"
)


def test_membership_orthant():
    m = nonneg_orthant(2)
    assert m.contains((3, 0))
    assert not m.contains((-1, 2))


def test_membership_generated():
    assert CONE_GENERATED.contains((2, 1))
    assert CONE_GENERATED.contains((0, 0))
    assert not CONE_GENERATED.contains((1, 3))
    assert not CONE_GENERATED.contains((-1, 0))


def test_membership_dimension_mismatch():
    with pytest.raises(RaywittError):
        nonneg_orthant(2).contains((1, 2, 3))


def test_generated_vs_inequality_window_agreement():
    for a in range(-8, 9):
        for b in range(-8, 9):
            assert CONE.contains((a, b)) == CONE_GENERATED.contains((a, b))


def test_undecidable_generators():
    # mixed-sign generators defeat the bounded search, already at the
    # constructor's unit check
    with pytest.raises(UndecidableError):
        AffineMonoid(
            rank=2,
            generators=((1, -1), (0, 1)),
            authoritative="generators",
            normality_window=0,
        )


def test_units_rejected():
    with pytest.raises(RaywittError):
        AffineMonoid(rank=2, inequalities=((1, 0),))  # a whole line survives
    with pytest.raises(RaywittError):
        AffineMonoid(
            rank=1, generators=((1,), (-1,)), authoritative="generators", normality_window=0
        )


def test_normality_window_check():
    # 2 and 3 generate a numerical monoid missing 1: not saturated
    with pytest.raises(RaywittError):
        AffineMonoid(rank=1, generators=((2,), (3,)), authoritative="generators")


def test_content_and_primitivity():
    m = nonneg_orthant(2)
    assert m.content((1, 0)) == 1
    assert m.content((3, 6)) == 3
    assert m.is_primitive((1, 1))
    assert not m.is_primitive((0, 4))
    assert m.is_primitive((2, 3))
    with pytest.raises(RaywittError):
        m.content((0, 0))
    with pytest.raises(RaywittError):
        m.content((-1, 0))
    assert CONE.content((2, 2)) == 2


def test_content_equals_divisor_lcm():
    # the largest d with v/d a member equals the coordinate gcd, by normality
    m = CONE
    for v in [(2, 2), (3, 0), (4, 2), (6, 6), (5, 10)]:
        divisors = [e for e in range(1, 11) if all(x % e == 0 for x in v) and m.contains(tuple(x // e for x in v))]
        assert math.lcm(*divisors) == m.content(v)


def test_ray_of():
    m = nonneg_orthant(2)
    assert m.ray_of((4, 2)) == Ray((2, 1))
    assert m.ray_of((1, 0)) == Ray((1, 0))
    assert m.ray_of((6, 6)) == Ray((1, 1))


def test_content_multiplicativity_along_rays():
    rng = random.Random(2)
    m = nonneg_orthant(3)
    for _ in range(25):
        v = tuple(rng.randint(0, 5) for _ in range(3))
        if all(x == 0 for x in v) or math.gcd(*v) != 1:
            continue
        for e in range(1, 21):
            assert m.content(tuple(e * x for x in v)) == e


def test_enumerate_line():
    assert natural_line(3).elements == ((1,), (2,), (3,))
    assert natural_line(5, killed_at=2).elements == ((1,),)


def test_enumerate_orthant():
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=2)
    assert t.elements == ((0, 1), (1, 0), (0, 2), (1, 1), (2, 0))


def test_enumerate_generated_monoid():
    t = TruncatedMonoid(CONE_GENERATED, weight=(1, 0), degree_bound=2)
    ti = TruncatedMonoid(CONE, weight=(1, 0), degree_bound=2)
    assert t.elements == ti.elements


def test_enumerate_rejects_bad_weight():
    with pytest.raises(RaywittError):
        TruncatedMonoid(nonneg_orthant(2), weight=(1, 0), degree_bound=3)
    with pytest.raises(RaywittError):
        TruncatedMonoid(nonneg_orthant(1), weight=(-1,), degree_bound=3)


def test_rays_up_to():
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=2)
    assert t.rays == (Ray((0, 1)), Ray((1, 0)), Ray((1, 1)))
    assert natural_line(4).rays == (Ray((1,)),)
    tc = TruncatedMonoid(CONE, weight=(1, 0), degree_bound=1)
    assert tc.rays == (Ray((1, 0)), Ray((1, 1)), Ray((1, 2)))


def test_ray_truncation_sets():
    assert natural_line(4).ray_truncation_set(Ray((1,))) == (1, 2, 3, 4)
    assert natural_line(10, killed_at=3).ray_truncation_set(Ray((1,))) == (1, 2)
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=4)
    assert t.ray_truncation_set(Ray((1, 1))) == (1, 2)
    with pytest.raises(RaywittError):
        t.ray_truncation_set(Ray((5, 1)))


def test_ray_truncation_sets_divisor_closed():
    t = TruncatedMonoid(CONE, weight=(1, 0), degree_bound=6)
    for ray in t.rays:
        S = set(t.ray_truncation_set(ray))
        for e in S:
            for d in range(1, e):
                if e % d == 0:
                    assert d in S


def test_ideal_membership():
    m = nonneg_orthant(2)
    ideal = MonoidIdeal(m, ((2, 0), (0, 3)))
    assert ideal.contains((2, 0))
    assert ideal.contains((5, 1))
    assert not ideal.contains((1, 2))
    line_ideal = MonoidIdeal(nonneg_orthant(1), ((3,),))
    assert not line_ideal.contains((2,))
    diag = MonoidIdeal(m, ((1, 1),))
    assert diag.contains((2, 3))


def test_ideal_generators_validated():
    with pytest.raises(RaywittError):
        MonoidIdeal(nonneg_orthant(2), ((-1, 0),))
    with pytest.raises(RaywittError):
        MonoidIdeal(nonneg_orthant(2), ((0, 0),))


def test_wedge_decomposition():
    rng = random.Random(7)
    fixtures = [
        TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=4),
        TruncatedMonoid(CONE, weight=(1, 0), degree_bound=3),
        natural_line(6, killed_at=4),
    ]
    for _ in range(3):
        d = rng.randint(2, 5)
        fixtures.append(TruncatedMonoid(nonneg_orthant(2), weight=(1, 2), degree_bound=d))
    for t in fixtures:
        from_rays = set()
        for ray in t.rays:
            for e in t.ray_truncation_set(ray):
                v = ray.multiple(e)
                assert v not in from_rays  # rays are disjoint away from 0
                from_rays.add(v)
        assert from_rays == set(t.elements)


def test_divisor_closure_of_elements():
    t = TruncatedMonoid(CONE, weight=(1, 0), degree_bound=4, ideal=MonoidIdeal(CONE, ((2, 2),)))
    members = set(t.elements)
    for gamma in members:
        c = math.gcd(*(abs(x) for x in gamma))
        for d in range(2, c + 1):
            if c % d == 0:
                assert tuple(x // d for x in gamma) in members


def test_element_order_is_weight_then_lex():
    t = TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=3)
    keyed = [(t.weight_of(g), g) for g in t.elements]
    assert keyed == sorted(keyed)


def test_json_round_trip():
    fixtures = [
        TruncatedMonoid(nonneg_orthant(2), weight=(1, 1), degree_bound=3),
        natural_line(5, killed_at=3),
        TruncatedMonoid(CONE, weight=(1, 0), degree_bound=2),
        TruncatedMonoid(CONE_GENERATED, weight=(1, 0), degree_bound=2),
    ]
    for t in fixtures:
        doc = t.to_json()
        back = TruncatedMonoid.from_json(doc)
        assert back.elements == t.elements
        assert back.to_json() == doc
