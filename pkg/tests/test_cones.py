import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import wps
from random_presentations import presentations
from quasilef import cones
from quasilef.analysis import choose_grading
from quasilef.errors import NonPositiveDegree
from quasilef.presentation import Presentation, RationalClass, pairing
from quasilef.rings import SectorRing

Q = RationalClass.parse


def closed_form(b):
    """The published description of the quartic's effective classes."""
    b1, b2 = b
    return (3 * b1).denominator == 1 and b2.denominator == 1 and 3 * b1 + b2 >= 0 and b2 >= 0


def box_search(p, max_degree, grading, radius, L=None):
    """Oracle: every point of (1/L)Z^k in a box, filtered by the effectivity test."""
    L = L or cones.stabilizer_lcm(p)
    axis = [Fraction(i, L) for i in range(-radius * L, radius * L + 1)]
    out = []
    for comps in itertools.product(axis, repeat=p.k):
        b = RationalClass(comps)
        if cones.is_i_effective(p, b) and pairing(b, grading) <= max_degree:
            out.append(b)
    return set(out)


def test_theta_in_cone_examples(quartic):
    assert cones.theta_in_cone(quartic, {3, 4})
    assert not cones.theta_in_cone(quartic, {4})
    assert not cones.theta_in_cone(quartic, set())
    with pytest.raises(IndexError):
        cones.theta_in_cone(quartic, {5})


def test_fixed_support_examples(quartic):
    assert cones.fixed_support(quartic, Q("(-1,3)")) == {3, 4}
    assert cones.fixed_support(quartic, Q("(0,0)")) == set(range(5))
    assert cones.fixed_support(quartic, Q("(-1/3,1)")) == {3, 4}


def test_effectivity_examples(quartic):
    assert cones.is_i_effective(quartic, Q("(-1,3)"))
    assert not cones.is_i_effective(quartic, Q("(1/2,0)"))
    assert cones.is_i_effective(quartic, Q("(0,0)"))
    assert cones.stabilizer_lcm(quartic) == 3


def test_effectivity_matches_closed_form(quartic):
    for i in range(-18, 19):
        for j in range(-6, 7):
            b = RationalClass((Fraction(i, 6), Fraction(j, 2)))
            assert cones.is_i_effective(quartic, b) == closed_form(b), b


def test_quartic_generators(quartic):
    # the second ray is generated by (1/3,0), not by (1,0)
    assert set(cones.effective_generators(quartic)) == {Q("(-1/3,1)"), Q("(1/3,0)")}
    assert cones.is_i_effective(quartic, Q("(1/3,0)"))


def test_enumerate_quartic(quartic):
    assert cones.enumerate_effective(quartic, 0) == (Q("(0,0)"),)
    got = cones.enumerate_effective(quartic, 1)
    assert set(got) == {Q(t) for t in ["(0,0)", "(-1/3,1)", "(-2/3,2)", "(1/3,0)", "(-1,3)", "(0,1)"]}
    degrees = [pairing(b, (2, 1)) for b in got]
    assert degrees == sorted(degrees)


@pytest.mark.parametrize("bound", [0, Fraction(1, 3), 1, 2, Fraction(7, 3)])
def test_enumerate_quartic_vs_closed_form(quartic, bound):
    expected = set()
    for i in range(-30, 31):
        for j in range(0, 20):
            b = RationalClass((Fraction(i, 3), Fraction(j)))
            if closed_form(b) and pairing(b, (2, 1)) <= bound:
                expected.add(b)
    assert set(cones.enumerate_effective(quartic, bound)) == expected


def test_enumerate_wps():
    p = wps((1, 1, 3), 0)
    assert cones.enumerate_effective(p, 5) == tuple(Q(t) for t in ["(0)", "(1/3)", "(2/3)", "(1)"])
    assert cones.enumerate_effective(p, 1, grading=(1,)) == cones.enumerate_effective(p, 5)


def test_non_positive_degree(p1113):
    with pytest.raises(NonPositiveDegree):
        cones.enumerate_effective(p1113, 1)
    # a positive grading is still available
    assert cones.enumerate_effective(p1113, 1, grading=(1, 1))


@pytest.mark.parametrize("p", presentations(25, seed=7), ids=lambda p: str(p.x_weights))
def test_enumerate_vs_box_search(p):
    grading = choose_grading(p)
    got = set(cones.enumerate_effective(p, 2, grading))
    # one unit of slack around the classes found, so a missed class nearby would show up
    radius = 1 + max(abs(x) for b in got for x in b).__ceil__()
    L = cones.stabilizer_lcm(p)
    if (2 * radius * L + 1) ** p.k > 60000:
        pytest.skip("oracle box too large")
    assert got == box_search(p, 2, grading, radius)


def test_sr_relations_quartic(quartic):
    rels = cones.sr_relations(quartic, range(5))
    assert {(0, 1): 1} in [dict(r) for r in rels]
    assert {(4, 0): 3, (3, 1): 1} in [dict(r) for r in rels]
    assert SectorRing(2, rels).hilbert_function == (1, 1, 1, 1)
    point = SectorRing(2, cones.sr_relations(quartic, {3, 4}))
    assert point.hilbert_function == (1,)
    with pytest.raises(ValueError):
        cones.sr_relations(quartic, {4})


def test_sr_relations_wps():
    p = wps((1, 1, 3), 0)
    assert SectorRing(1, cones.sr_relations(p, range(3))).hilbert_function == (1, 1, 1)


def test_is_proper(quartic):
    assert cones.is_proper(quartic)
    assert not cones.is_proper(Presentation(x_weights=((1,), (-1,)), e_weights=(), theta=(1,)))
    assert not cones.is_proper(Presentation(x_weights=((1,), (0,)), e_weights=(), theta=(1,)))


def test_i_nonnegative(quartic):
    assert not cones.is_i_nonnegative(quartic, Q("(-1,3)"))
    assert cones.is_i_nonnegative(quartic, Q("(0,0)"))
    assert cones.is_i_nonnegative(quartic, Q("(-1/3,1)"))


# -- properties ------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_theta_in_cone_monotone(data):
    p = presentations(1, seed=data.draw(st.integers(0, 10**6)))[0]
    s = data.draw(st.sets(st.integers(0, p.n - 1)))
    t = s | data.draw(st.sets(st.integers(0, p.n - 1)))
    if cones.theta_in_cone(p, s):
        assert cones.theta_in_cone(p, t)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_effectivity_permutation_invariant(data):
    p = presentations(1, seed=data.draw(st.integers(0, 10**6)))[0]
    perm = data.draw(st.permutations(range(p.n)))
    q = Presentation(x_weights=tuple(p.x_weights[i] for i in perm), e_weights=p.e_weights, theta=p.theta)
    L = cones.stabilizer_lcm(p)
    assert cones.stabilizer_lcm(q) == L
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    for _ in range(20):
        b = RationalClass(tuple(Fraction(rng.randint(-3 * L, 3 * L), L) for _ in range(p.k)))
        assert cones.is_i_effective(p, b) == cones.is_i_effective(q, b)


@pytest.mark.parametrize("p", presentations(15, seed=11), ids=lambda p: str(p.x_weights))
def test_effective_classes_form_a_monoid(p):
    classes = cones.enumerate_effective(p, 2, choose_grading(p))
    for a, b in itertools.combinations_with_replacement(classes, 2):
        assert cones.is_i_effective(p, a + b), (a, b)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_fixed_support_superadditive_on_integer_classes(quartic, a, b):
    a, b = RationalClass(tuple(a)), RationalClass(tuple(b))
    assert cones.fixed_support(quartic, a + b) >= cones.fixed_support(quartic, a) & cones.fixed_support(quartic, b)
