from fractions import Fraction

import pytest

from app.services.splitting import ExactSolver, HLabel, ZigzagCategory, cohomology_dims


def test_exact_solver():
    solver = ExactSolver([{"x": Fraction(1), "y": Fraction(1)}, {"y": Fraction(1)}])
    assert solver.independent
    assert solver.solve({"x": Fraction(2), "y": Fraction(5)}) == [2, 3]
    assert solver.solve({"z": Fraction(1)}) is None
    assert solver.solve({}) == [0, 0]


def test_exact_solver_detects_dependence():
    solver = ExactSolver([{"x": Fraction(1)}, {"x": Fraction(2)}])
    assert not solver.independent
    assert solver.rank == 1
    assert solver.solve({"x": Fraction(1, 2)}) == [Fraction(1, 2), 0]


def test_cohomology_labels():
    assert HLabel("B", 0, 1).parity == 1
    assert HLabel("C", 0, 1).parity == 0
    assert HLabel("coid").parity == 1
    assert HLabel("id").parity == 0
    assert HLabel("B", 0, 1).text() == "B(0,1)"
    assert HLabel("coid").text() == "coid"


@pytest.fixture(scope="module")
def category(ntorus1):
    return ZigzagCategory(ntorus1, truncation=2, winding=1, area_cap=6)


def test_cohomology_dimensions(category):
    l0, l1, l2 = category.paths
    assert cohomology_dims(l0, l0) == 2
    assert cohomology_dims(l0, l1) == 1
    assert cohomology_dims(l1, l0) == 1


def test_cohomology_basis_matches_the_intersections(category):
    for first in category.paths:
        for second in category.paths:
            hom = category.hom(first.index, second.index)
            labels = [label for label, _ in hom.h_basis]
            assert len(labels) == cohomology_dims(first, second)
            if first.index == second.index:
                assert HLabel("id") in labels and HLabel("coid") in labels


def test_zigzag_complexes_per_path(category):
    assert set(category.complexes) == {0, 1, 2}
    for index, X in category.flat_complexes.items():
        assert sorted(category.positions[index]) == list(range(len(category.path(index))))


@pytest.fixture(scope="module")
def two_punctures(ntorus2):
    return ZigzagCategory(ntorus2, truncation=1, winding=1, area_cap=6)


def homs(category):
    for first in category.paths:
        for second in category.paths:
            yield category.hom(first.index, second.index)


def flat_roles(hom, kind, name):
    for s in hom.table.situations:
        if s.kind == kind:
            for role in s.roles:
                if role.name == name and role.winding == 0:
                    yield s, role


def test_complement_roles_split_to_themselves(two_punctures):
    seen = set()
    for hom in homs(two_punctures):
        for s in hom.table.situations:
            for role in s.roles:
                if role.winding == 0 and hom.is_complement(s, role):
                    d = hom.split({role.key: Fraction(1)})
                    assert (d.h, d.r_prime, d.r) == ({}, {}, {role.key: Fraction(1)})
                    seen.add((s.kind, role.name))
    assert ("A", "beta") in seen
    assert ("B", "alpha3") in seen


def test_alpha4_is_the_intersection_up_to_alpha3(two_punctures):
    checked = 0
    for hom in homs(two_punctures):
        for s, role in flat_roles(hom, "B", "alpha4"):
            a3 = s.role("alpha3").key
            sign3, sign4 = hom._sign(a3.angle), hom._sign(role.key.angle)
            d = hom.split({role.key: Fraction(1)})
            assert d.h == {HLabel("B", *s.junctions): sign4}
            assert d.r_prime == {}
            assert d.r == {a3: sign3 * sign4}
            checked += 1
    assert checked > 0


def test_beta_alpha_is_a_differential_up_to_gamma_beta(two_punctures):
    checked = 0
    for hom in homs(two_punctures):
        for s, role in flat_roles(hom, "A", "beta alpha"):
            beta = s.role("beta").key
            gamma_beta = s.role("gamma beta").key
            d = hom.split({role.key: Fraction(1)})
            assert list(d.r_prime) == [beta]
            assert abs(d.r_prime[beta]) == 1
            assert abs(d.r[gamma_beta]) == 1
            assert all(k.angle.is_identity for k in d.r if k != gamma_beta)
            assert all(label.kind == "C" for label in d.h)
            checked += 1
    assert checked > 0


def test_table_rows_agree_with_elimination(two_punctures):
    rows = 0
    for hom in homs(two_punctures):
        for s in hom.table.situations:
            for role in s.roles:
                row = hom.row(s, role)
                if row is None:
                    continue
                rows += 1
                expected = hom._split_by_elimination({role.key: Fraction(1)})
                assert (row.h, row.r_prime, row.r) == (expected.h, expected.r_prime, expected.r)
    assert rows > 0
