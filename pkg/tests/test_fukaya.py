import pytest

from app.core.exceptions import InvalidInputError, NonTransversal
from app.models.dimer_models import RunConfig
from app.services.commands import cmd_compare
from app.services.fukaya import DS, DW, ID, FukayaOracle, MedialComplex, ZigzagCurve, basis_tuples, compare, is_transversal
from app.services.kadeishvili import BasisElement, DeformedSplitting, minimal_product
from app.services.splitting import HLabel, ZigzagCategory


@pytest.fixture(scope="module")
def category(ntorus1):
    return ZigzagCategory(ntorus1, truncation=1, winding=1, area_cap=6)


@pytest.fixture(scope="module")
def oracle(category):
    return FukayaOracle(category, area_cap=6, periods=2)


def element(first, second, kind, i=-1, j=-1):
    return BasisElement(first, second, HLabel(kind, i, j))


def test_medial_complex(ntorus2):
    medial = MedialComplex(ntorus2)
    assert len(medial.dimer.punctures) == len(ntorus2.arcs)
    assert len(medial.dimer.arcs) == 2 * len(ntorus2.arcs)
    assert len(medial.dimer.faces) == len(ntorus2.faces) + len(ntorus2.punctures)
    assert medial.dimer.genus == ntorus2.genus
    assert sorted(medial.puncture_faces.values()) == sorted(ntorus2.punctures)
    assert all(medial.dimer.valence(m) == 4 for m in medial.dimer.punctures)


def test_curves_follow_their_paths(category, ntorus1):
    for path in category.paths:
        curve = ZigzagCurve.of(ntorus1, path)
        assert len(curve) == len(path)
        assert [side for _, _, side in curve.cuts] == ["cw" if t == "L" else "ccw" for t in path.turns]


def test_transversality():
    b01 = element(0, 1, "B", 0, 0)
    c12 = element(1, 2, "C", 0, 0)
    c10 = element(1, 0, "C", 0, 0)
    assert is_transversal([c12, b01])
    assert not is_transversal([c10, b01])
    assert not is_transversal([element(1, 1, "coid"), b01])


def test_repeated_paths_are_not_smooth(oracle):
    with pytest.raises(NonTransversal):
        oracle.prefukaya_mu([element(1, 0, "C", 0, 0), element(0, 1, "B", 0, 0)])
    with pytest.raises(NonTransversal):
        oracle.prefukaya_mu([element(1, 1, "coid"), element(0, 1, "B", 0, 0)])


def test_coidentity_slot(oracle, category):
    for path in category.paths:
        assert oracle.coidentity_slot(path.index) == 2 * path.coidentity_at + 1


def test_transversal_suite(category):
    tuples = basis_tuples(category, 2)
    assert len(tuples) == 6
    for later, earlier in tuples:
        assert earlier.second == later.first
        assert len({earlier.first, earlier.second, later.second}) == 3
    assert len(basis_tuples(category, 2, limit=2)) == 2
    assert basis_tuples(category, 3) == []


def test_transversal_tuples_have_no_special_disks(oracle, category):
    for inputs in basis_tuples(category, 2):
        for kind in (ID, DS, DW):
            assert oracle.enumerate_special(kind, inputs).disks == []


def test_unknown_disk_kind(oracle):
    with pytest.raises(InvalidInputError):
        oracle.enumerate_special("XX", [element(1, 2, "C", 0, 0), element(0, 1, "B", 0, 0)])


def test_identity_inputs_use_the_strict_unit(oracle, category):
    (label, _), = [
        (l, v) for l, v in category.hom(0, 1).h_basis if l.kind != "id"
    ]
    h = BasisElement(0, 1, label)
    result = oracle.product([h, BasisElement(0, 0, HLabel("id"))])
    assert result.values == {label: category.ring.one()}


def test_every_pair_on_one_puncture_matches_the_disks(category, oracle):
    splitting = DeformedSplitting(category)
    tuples = basis_tuples(category, 2, transversal=False)
    report = compare(splitting, oracle, tuples)
    assert len(report.rows) == len(tuples) > 6
    assert report.complete
    assert [r.to_dict()["inputs"] for r in report.mismatches] == []


def test_crossing_and_back_gives_the_coidentity(category, oracle):
    splitting = DeformedSplitting(category)
    checked = 0
    for first, second in ((0, 1), (1, 0), (0, 2), (2, 0)):
        for there, _ in category.hom(first, second).h_basis:
            for back, _ in category.hom(second, first).h_basis:
                if {there.kind, back.kind} != {"B", "C"}:
                    continue
                inputs = [BasisElement(second, first, back), BasisElement(first, second, there)]
                minimal = minimal_product(splitting, inputs)
                assert set(minimal.values) <= {HLabel("coid")}
                assert minimal.values == oracle.product(inputs).values
                checked += 1
    assert checked >= 4


@pytest.mark.slow
@pytest.mark.parametrize(
    "arity,transversal,limit",
    [(2, True, None), (2, False, None), (3, True, None), (3, False, 40), (4, True, 30)],
)
def test_minimal_model_matches_the_disks_on_two_punctures(arity, transversal, limit):
    config = RunConfig(truncation=3, winding=2, area=14)
    record = cmd_compare("ntorus2", config, arity=arity, transversal=transversal, limit=limit)
    assert record["tuples"] > 0
    assert record["complete"]
    assert [row["inputs"] for row in record["rows"] if not row["match"]] == []
    assert record["mismatches"] == 0
