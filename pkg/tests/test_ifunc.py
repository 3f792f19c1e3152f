from fractions import Fraction

import pytest

from conftest import wps
from random_presentations import presentations
from quasilef import cones
from quasilef.analysis import choose_grading
from quasilef.errors import NotEffective
from quasilef.ifunc import (
    Unsupported,
    homogeneity_check,
    mirror_map,
    quasimap_coefficient,
    restrict_to_y,
    restricted_twisted_limit,
    same_value,
    twisted_coefficient,
    twisted_limit_exists,
)
from quasilef.presentation import Presentation, RationalClass, SectionTerm
from quasilef.series import DoesNotExist, SeriesElement, kappa_limit, render

Q = RationalClass.parse
F = Fraction


def test_counterexample_quasimap_value(quartic):
    x = quasimap_coefficient(quartic, Q("(-1,3)"))
    assert render(x) == "1/6 z^-3 [F]"
    assert x.cycle.support == {3, 4} and x.cycle.codim == 2
    assert x.sector.is_identity


def test_zero_class(quartic):
    assert quasimap_coefficient(quartic, Q("(0,0)")) == 1
    assert twisted_coefficient(quartic, Q("(0,0)")) == 1


def test_twisted_sector_coefficient(quartic):
    # hand product on the point sector of (1/3,0): three 1/(z/3), one 1/z, E gives (z/3)(4z/3)
    x = quasimap_coefficient(quartic, Q("(-1/3,1)"))
    assert render(x) == "z^-1"
    x = quasimap_coefficient(quartic, Q("(1/3,0)"))
    assert render(x) == "12 z^-2"


def test_untwisted_degree_one(quartic):
    # (4H+z) / (z (3H+z)) truncated at H^3
    assert render(quasimap_coefficient(quartic, Q("(0,1)"))) == "-3 z^-3 t1^2 + z^-2 t1 + z^-1"


def test_twisted_counterexample(quartic):
    x = twisted_coefficient(quartic, Q("(-1,3)"))
    assert render(x) == "1/6 z^-3 kappa^-1 t1^3"
    assert isinstance(kappa_limit(x), DoesNotExist)
    lim = restricted_twisted_limit(quartic, Q("(-1,3)"))
    assert isinstance(lim, SeriesElement) and lim.is_zero()


def test_counterexample_inequality(quartic):
    b = Q("(-1,3)")
    i_b = quasimap_coefficient(quartic, b)
    k_b = restricted_twisted_limit(quartic, b)
    assert not i_b.is_zero() and k_b.is_zero()
    assert same_value(i_b, k_b) is False


def test_not_effective(quartic):
    with pytest.raises(NotEffective):
        quasimap_coefficient(quartic, Q("(1/2,0)"))
    with pytest.raises(NotEffective):
        twisted_coefficient(quartic, Q("(0,-1)"))


def test_restrict_to_y(quartic):
    H3 = twisted_coefficient(quartic, Q("(0,0)")).ring.gen(0) ** 3
    x = SeriesElement.constant(H3.ring, H3, sector=quasimap_coefficient(quartic, Q("(0,0)")).sector)
    assert restrict_to_y(quartic, x).is_zero()
    h = SeriesElement.constant(H3.ring, H3.ring.gen(0), sector=x.sector)
    assert render(restrict_to_y(quartic, h)) == "t1"
    assert restrict_to_y(quartic, x * 0 + 1) == SeriesElement.constant(
        H3.ring.truncated(2), 1, sector=x.sector
    )


def test_empty_bundle_twisted_equals_quasimap(ambient_p1113):
    for b in cones.enumerate_effective(ambient_p1113, 2, grading=(1, 1)):
        t = twisted_coefficient(ambient_p1113, b)
        q = quasimap_coefficient(ambient_p1113, b)
        assert t.map_coefficients(q.ring) == q


def test_unsupported_without_section(quartic):
    bare = Presentation(x_weights=quartic.x_weights, e_weights=quartic.e_weights, theta=quartic.theta)
    x = quasimap_coefficient(bare, Q("(-1,3)"))
    assert isinstance(x, Unsupported)
    assert "section" in x.reason


def _one_equation_presentation(extra_component=False):
    """X^b for b = (-1,1) is a P^1 on which exactly one section component survives."""
    x = ((1, 0), (1, 0), (0, 1), (0, 1), (1, 1))
    e = [(2, 0), (1, 2)]
    section = [
        (SectionTerm(F(1), (2, 0, 0, 0, 0)), SectionTerm(F(1), (0, 2, 0, 0, 0))),
        (SectionTerm(F(1), (0, 0, 1, 0, 1)), SectionTerm(F(1), (1, 0, 2, 0, 0))),
    ]
    if extra_component:
        e.append((1, 2))
        section.append((SectionTerm(F(1), (0, 0, 0, 1, 1)),))
    return Presentation(x_weights=x, e_weights=tuple(e), theta=(1, 2), section=tuple(section))


def test_second_formula_with_one_equation():
    p = _one_equation_presentation()
    b = Q("(-1,1)")
    assert cones.is_i_effective(p, b) and not cones.is_i_nonnegative(p, b)
    x = quasimap_coefficient(p, b)
    assert isinstance(x, SeriesElement)
    assert x.cycle.codim == 1
    assert homogeneity_check(p, x, b)


def test_unsupported_with_two_equations():
    p = _one_equation_presentation(extra_component=True)
    out = quasimap_coefficient(p, Q("(-1,1)"))
    assert isinstance(out, Unsupported) and "several" in out.reason


def test_unsupported_when_a_component_vanishes():
    x = ((1, 0), (1, 0), (1, 0), (3, 1), (0, 1))
    p = Presentation(
        x_weights=x,
        e_weights=((3, 5), (0, -1)),
        theta=(1, 1),
        section=((SectionTerm(F(1), (0, 0, 0, 1, 4)),), ()),
    )
    out = quasimap_coefficient(p, Q("(0,1)"))
    assert isinstance(out, Unsupported) and "bookkeeping" in out.reason


def test_homogeneity_examples(quartic):
    for text in ["(0,0)", "(-1/3,1)", "(-1,3)", "(0,1)", "(-2,6)"]:
        b = Q(text)
        assert homogeneity_check(quartic, quasimap_coefficient(quartic, b), b)
        assert homogeneity_check(quartic, twisted_coefficient(quartic, b), b)


def test_homogeneity_negative_control(quartic):
    b = Q("(-1,3)")
    x = quasimap_coefficient(quartic, b)
    assert not homogeneity_check(quartic, x.shift(dz=1), b)
    assert not homogeneity_check(quartic, x, Q("(0,1)") + b)


def test_homogeneity_all_quartic_classes(quartic):
    for b in cones.enumerate_effective(quartic, 3):
        for x in (quasimap_coefficient(quartic, b), twisted_coefficient(quartic, b), restricted_twisted_limit(quartic, b)):
            if isinstance(x, SeriesElement):
                assert homogeneity_check(quartic, x, b), (b, render(x))


def test_limit_equals_quasimap_for_i_nonnegative(quartic):
    for b in cones.enumerate_effective(quartic, 3):
        if not cones.is_i_nonnegative(quartic, b):
            continue
        lim = restricted_twisted_limit(quartic, b)
        assert isinstance(lim, SeriesElement)
        assert lim == quasimap_coefficient(quartic, b), b


@pytest.mark.parametrize("p", presentations(20, seed=5, proper=True), ids=lambda p: str(p.x_weights))
def test_limit_equals_quasimap_random(p):
    for b in cones.enumerate_effective(p, 2, choose_grading(p))[:15]:
        if cones.is_i_nonnegative(p, b):
            assert restricted_twisted_limit(p, b) == quasimap_coefficient(p, b)


@pytest.mark.parametrize("p", presentations(20, seed=9), ids=lambda p: str(p.x_weights))
def test_limit_shortcut_matches_full_limit(p):
    for b in cones.enumerate_effective(p, 2, choose_grading(p))[:15]:
        full = not isinstance(kappa_limit(twisted_coefficient(p, b)), DoesNotExist)
        assert twisted_limit_exists(p, b) == full


def test_mirror_map_quartic(quartic):
    mm = mirror_map(quartic, 2)
    assert mm.equal is True and mm.holes == []
    assert mm.mu[Q("(0,0)")].is_zero()
    assert render(mm.mu[Q("(-1/3,1)")]) == "1"
    assert render(mm.mu[Q("(0,1)")]) == "1"
    assert mm.mu[Q("(-1,3)")].is_zero() and mm.mu_tw[Q("(-1,3)")].is_zero()


def test_mirror_map_degree_zero(quartic):
    mm = mirror_map(quartic, 0)
    assert mm.classes == (Q("(0,0)"),)
    assert mm.mu[Q("(0,0)")].is_zero() and mm.equal


def test_mirror_truncation_kills_counterexample_term(quartic):
    from quasilef.series import nonnegative_z_part

    x = quasimap_coefficient(quartic, Q("(-1,3)"))
    assert nonnegative_z_part(x.shift(dz=1)).is_zero()


def test_mirror_map_records_holes():
    # without a section the second formula is not certified
    p = wps((1, 1, 3), -1)
    mm = mirror_map(p, 12)
    assert mm.holes and mm.equal is None
