from fractions import Fraction

import pytest

from conftest import wps
from random_presentations import presentations
from quasilef import cones
from quasilef.errors import EmptyFixedLocus, NotEffective
from quasilef.presentation import Presentation, RationalClass
from quasilef.sectors import (
    GroupElement,
    age,
    g_fixed_support,
    group_element,
    novikov_degree,
    sector_data,
    sector_descriptor,
)

Q = RationalClass.parse
F = Fraction


def test_group_elements(quartic):
    g = group_element(quartic, Q("(-1/3,1)"))
    assert g.fractions == (F(2, 3), F(0))
    assert g.inverse().fractions == (F(1, 3), F(0))
    assert group_element(quartic, Q("(-1,3)")).is_identity
    assert group_element(quartic, Q("(2,5)")).is_identity


def test_ages(quartic):
    assert age(quartic, GroupElement((0, 0))) == 0
    assert age(quartic, GroupElement((F(1, 3), 0))) == F(2, 3)
    assert age(quartic, GroupElement((F(2, 3), 0))) == F(4, 3)


def test_age_on_empty_fixed_locus(quartic):
    with pytest.raises(EmptyFixedLocus):
        age(quartic, GroupElement((F(1, 2), 0)))


def test_degree_character(quartic):
    assert quartic.degree_character == (2, 1)
    assert novikov_degree(quartic, Q("(-1/3,1)")) == F(1, 3)
    assert novikov_degree(quartic, Q("(1,0)")) == 2
    assert novikov_degree(quartic, Q("(1/3,0)")) == F(2, 3)
    assert novikov_degree(quartic, Q("(0,0)")) == 0


def test_untwisted_sector(quartic):
    data = sector_data(quartic, GroupElement((0, 0)))
    assert data.ambient_ring.hilbert_function == (1, 1, 1, 1)
    assert data.dim_x == 3 and data.e_count == 1 and data.dim_y == 2
    assert data.y_ring.hilbert_function == (1, 1, 1)


def test_descriptor_of_counterexample_class(quartic):
    d = sector_descriptor(quartic, Q("(-1,3)"))
    assert d.element.is_identity
    assert d.f_support == {3, 4}
    assert d.f_cut == ()  # the section vanishes identically on X^b
    assert d.f_dim_x == 0 and d.f_dim_y == 0
    assert d.f_codim_y == 2
    assert d.f_ring.hilbert_function == (1,)


def test_descriptor_twisted_class(quartic):
    d = sector_descriptor(quartic, Q("(-1/3,1)"))
    assert d.element == GroupElement((F(1, 3), 0))
    assert d.age == F(2, 3)
    assert d.sector.support == {3, 4}
    assert d.sector.dim_y == 0


def test_descriptor_rejects_non_effective(quartic):
    with pytest.raises(NotEffective):
        sector_descriptor(quartic, Q("(0,-1)"))


def test_generic_section_counts(quartic):
    bare = Presentation(x_weights=quartic.x_weights, e_weights=quartic.e_weights, theta=quartic.theta)
    d = sector_descriptor(bare, Q("(-1,3)"))
    assert d.generic_section
    assert d.f_cut == ()  # (-1,3) pairs to -1 with E, so no equation survives


def test_hypersurface_free_sector_rings(ambient_p1113):
    for b in cones.enumerate_effective(ambient_p1113, 2, grading=(1, 1)):
        d = sector_descriptor(ambient_p1113, b)
        assert d.sector.y_ring == d.sector.ambient_ring.truncated(d.sector.dim_x)
        assert d.sector.y_ring.hilbert_function == d.sector.ambient_ring.hilbert_function


@pytest.mark.parametrize("p", presentations(20, seed=3) + [wps((1, 1, 3), 2)], ids=lambda p: str(p.x_weights))
def test_age_of_inverse(p):
    for b in cones.enumerate_effective(p, 2, cones_grading(p)):
        g = group_element(p, b)
        moved_x = sum(1 for w in p.x_weights if g.pair(w) != 0)
        moved_e = sum(1 for w in p.e_weights if g.pair(w) != 0)
        assert age(p, g) + age(p, g.inverse()) == moved_x - moved_e
        assert g_fixed_support(p, g) == g_fixed_support(p, g.inverse())


def cones_grading(p):
    from quasilef.analysis import choose_grading

    return choose_grading(p)


def test_group_element_homomorphism(quartic):
    classes = cones.enumerate_effective(quartic, 2)
    for a in classes:
        for b in classes:
            assert group_element(quartic, a + b) == group_element(quartic, a) * group_element(quartic, b)
            assert novikov_degree(quartic, a + b) == novikov_degree(quartic, a) + novikov_degree(quartic, b)
