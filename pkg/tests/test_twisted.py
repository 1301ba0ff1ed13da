import pytest

from app.core.exceptions import AngleTooLong, CyclicDelta, IdentityAngle, ShiftInconsistent
from app.services.fixtures import load_dimer
from app.services.gtl import GentleAlgebra
from app.services.twisted import (
    Summand, TwistedComplex, complementary_angle, elementary, maurer_cartan, total_curvature, uncurve_complementary
)
from app.services.zigzag import build_zigzag, enumerate_zigzags


@pytest.fixture(scope="module")
def algebra(torus1):
    return GentleAlgebra(torus1, truncation=2, area_cap=4)


@pytest.fixture(scope="module")
def cone(algebra):
    beta = algebra.morphism(algebra.parse_angle("β"))
    return TwistedComplex(algebra, [Summand("b", 1, "b"), Summand("a", 0, "a")], {(0, 1): beta}, name="cone")


def test_cone_of_an_even_angle(cone):
    assert len(cone) == 2
    assert list(cone.delta) == [(0, 1)]
    assert cone.degree(0, 1, next(iter(cone.delta[(0, 1)].terms))) == 1


def test_shifts_must_make_the_differential_odd(algebra):
    beta = algebra.morphism(algebra.parse_angle("β"))
    with pytest.raises(ShiftInconsistent):
        TwistedComplex(algebra, [Summand("b", 0), Summand("a", 0)], {(0, 1): beta})


def test_differential_must_be_upper_triangular(algebra):
    beta = algebra.morphism(algebra.parse_angle("β"))
    with pytest.raises(CyclicDelta):
        TwistedComplex(algebra, [Summand("a", 0), Summand("b", 1)], {(1, 0): beta})


def test_morphism_arithmetic(algebra, cone):
    one = cone.identity()
    assert not one.is_zero()
    assert (one - one).is_zero()
    assert one + one == one.scale(2)
    x = elementary(cone, cone, 0, 1, algebra.parse_angle("β"))
    assert x.degree() == 1
    assert "β" in x.text()


def test_complementary_angles(algebra):
    beta = algebra.parse_angle("β")
    prime = complementary_angle(algebra, beta)
    assert prime.start == 3 and prime.length == 3
    assert prime.source == beta.target
    with pytest.raises(AngleTooLong):
        complementary_angle(algebra, algebra.angle("q", 0, 4))
    with pytest.raises(IdentityAngle):
        complementary_angle(algebra, algebra.parse_angle("id_a"))


def test_zigzag_complexes(ntorus1):
    flat = GentleAlgebra(ntorus1, truncation=0, area_cap=4)
    deformed = GentleAlgebra(ntorus1, truncation=2, area_cap=4)
    for path in enumerate_zigzags(ntorus1):
        X = build_zigzag(flat, path)
        assert len(X) == len(path)
        assert not X.infinitesimal()
        assert maurer_cartan(X).is_zero()
        Xq = build_zigzag(deformed, path, deformed=True)
        assert Xq.infinitesimal()
        for m in Xq.infinitesimal().values():
            assert all(c.madic_order() == 1 for c in m.terms.values())


def test_deformed_zigzags_have_no_total_curvature(ntorus1):
    deformed = GentleAlgebra(ntorus1, truncation=2, area_cap=8)
    for path in enumerate_zigzags(ntorus1):
        curved = build_zigzag(deformed, path)
        assert not total_curvature(curved).is_zero()
        assert total_curvature(build_zigzag(deformed, path, deformed=True)).is_zero()


def test_complementary_angles_uncurve_the_zigzags(ntorus1):
    deformed = GentleAlgebra(ntorus1, truncation=2, area_cap=8)
    for path in enumerate_zigzags(ntorus1):
        X = build_zigzag(deformed, path)
        Xq = uncurve_complementary(X)
        assert Xq.name == f"{X.name}_q"
        assert set(Xq.delta) > set(X.delta)
        assert total_curvature(Xq).is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ntorus1", "ntorus2", "ntorus3", "q3"])
def test_total_curvature_vanishes_at_order_three(name):
    dimer = load_dimer(name, require_dimer=True)
    flat = GentleAlgebra(dimer, truncation=0, area_cap=10)
    deformed = GentleAlgebra(dimer, truncation=3, area_cap=10)
    for path in enumerate_zigzags(dimer):
        assert maurer_cartan(build_zigzag(flat, path)).is_zero()
        assert total_curvature(build_zigzag(deformed, path, deformed=True)).is_zero()
    assert deformed.complete
