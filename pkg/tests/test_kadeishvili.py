import pytest

from app.core.exceptions import ArcMismatch, DZeroViolated, InvalidInputError
from app.services.coeffring import SeriesRing
from app.services.kadeishvili import (
    BasisElement, DeformedSplitting, enumerate_trees, minimal_product, unit_product
)
from app.services.splitting import HLabel, ZigzagCategory


@pytest.mark.parametrize("n,count", [(2, 1), (3, 3), (4, 11), (5, 45)])
def test_tree_counts(n, count):
    assert len(enumerate_trees(n)) == count


def test_trees_have_the_right_leaves():
    for n in range(2, 6):
        for shape in enumerate_trees(n):
            assert shape.leaves == n
            assert len(shape.children) >= 2


def test_three_leaf_trees():
    shapes = {s.text(): s.internal_nodes for s in enumerate_trees(3)}
    assert shapes == {"(*,*,*)": 0, "((*,*),*)": 1, "(*,(*,*))": 1}


def test_one_leaf_is_not_a_product():
    with pytest.raises(InvalidInputError):
        enumerate_trees(1)


def test_basis_element_text():
    assert BasisElement(0, 1, HLabel("B", 1, 0)).text() == "B(1,0)[L0->L1]"
    assert BasisElement(2, 2, HLabel("coid")).text() == "coid[L2->L2]"


def test_identity_is_a_strict_unit():
    ring = SeriesRing(["p1"], 2)
    b = BasisElement(0, 1, HLabel("B", 1, 0))
    c = BasisElement(0, 1, HLabel("C", 0, 1))
    right = unit_product(ring, [b, BasisElement(0, 0, HLabel("id"))])
    assert right.values == {b.label: ring.one()}
    left = unit_product(ring, [BasisElement(1, 1, HLabel("id")), b])
    assert left.values == {b.label: ring.constant(-1)}
    left = unit_product(ring, [BasisElement(1, 1, HLabel("id")), c])
    assert left.values == {c.label: ring.one()}
    longer = unit_product(ring, [b, BasisElement(0, 0, HLabel("id")), BasisElement(0, 0, HLabel("coid"))])
    assert longer.values == {}
    assert unit_product(ring, [b, b]) is None


@pytest.fixture(scope="module")
def splitting(ntorus1):
    return DeformedSplitting(ZigzagCategory(ntorus1, truncation=1, winding=1, area_cap=6))


def test_minimal_products_need_a_chain(splitting):
    l0_l1 = BasisElement(0, 1, HLabel("C", 1, 0))
    with pytest.raises(ArcMismatch):
        minimal_product(splitting, [l0_l1, l0_l1])
    with pytest.raises(InvalidInputError):
        minimal_product(splitting, [l0_l1])


def test_minimal_product_with_the_identity(splitting):
    coid = BasisElement(0, 0, HLabel("coid"))
    result = minimal_product(splitting, [BasisElement(0, 0, HLabel("id")), coid])
    assert result.text() == "(-1)*coid"
    assert (result.first, result.second) == (0, 0)


def test_deformed_counterparts_are_closed(splitting):
    category = splitting.category
    for first in range(len(category.paths)):
        for second in range(len(category.paths)):
            for label, _ in category.hom(first, second).h_basis:
                x = splitting.counterpart(BasisElement(first, second, label))
                assert splitting.mu1(first, second, x) == {}


def test_spheres_break_the_simplified_construction(q3):
    splitting = DeformedSplitting(ZigzagCategory(q3, truncation=3, winding=2, area_cap=8))
    identity = splitting.counterpart(BasisElement(0, 0, HLabel("id")))
    assert splitting.mu1(0, 0, identity) == {}
    violated = []
    for label, _ in splitting.category.hom(0, 0).h_basis:
        if label.kind in ("B", "C"):
            try:
                splitting.counterpart(BasisElement(0, 0, label))
            except DZeroViolated as e:
                violated.append((label, e))
    assert violated
    assert all(str(e) for _, e in violated)


def test_minimal_products_are_deterministic(ntorus1):
    inputs = None
    results = []
    for _ in range(2):
        splitting = DeformedSplitting(ZigzagCategory(ntorus1, truncation=1, winding=1, area_cap=6))
        c = splitting.category
        if inputs is None:
            (there, _), = [(l, v) for l, v in c.hom(0, 1).h_basis if l.kind != "id"]
            (back, _), = [(l, v) for l, v in c.hom(1, 0).h_basis if l.kind != "id"]
            inputs = [BasisElement(1, 0, back), BasisElement(0, 1, there)]
        results.append(minimal_product(splitting, inputs).text())
    assert results[0] == results[1]
