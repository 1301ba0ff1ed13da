import pytest

from app.core.exceptions import ArcMismatch, InvalidInputError
from app.services.fixtures import load_dimer
from app.services.gtl import GentleAlgebra


@pytest.fixture(scope="module")
def algebra(torus1):
    return GentleAlgebra(torus1, truncation=3, area_cap=6)


def mu_text(algebra, *names):
    morphisms = [algebra.morphism(algebra.parse_angle(n)) for n in names]
    return algebra.morphism_text(algebra.mu(*morphisms))


def test_named_angles(algebra):
    parities = {name: algebra.parse_angle(name).parity for name in "δγβα"}
    assert parities == {"δ": 0, "γ": 1, "β": 0, "α": 1}
    assert algebra.parse_angle("γ").source_arc == "b"
    assert algebra.parse_angle("γ").target_arc == "a"


def test_parse_forms_agree(algebra):
    assert algebra.parse_angle("βγ") == algebra.parse_angle("q:1+2")
    assert algebra.angle_text(algebra.parse_angle("q:1+2")) == "βγ"
    assert algebra.parse_angle("id_a").is_identity
    assert algebra.angle_text(algebra.parse_angle("id_b")) == "id_b"


def test_words_must_compose(algebra):
    with pytest.raises(InvalidInputError):
        algebra.parse_angle("δγ")
    with pytest.raises(InvalidInputError):
        algebra.parse_angle("x")


def test_long_angles_wind_past_a_full_turn(algebra):
    angle = algebra.angle("q", 0, 5)
    assert angle.full_turns == 1
    assert algebra.angle_text(angle) == "δαβγδ"


def test_composition_signs(algebra):
    assert mu_text(algebra, "β", "γ") == "-βγ"
    assert mu_text(algebra, "γ", "δ") == "γδ"
    assert mu_text(algebra, "β", "α") == "0"
    assert mu_text(algebra, "δ", "γ") == "0"


def test_identities_are_units(algebra):
    assert mu_text(algebra, "γ", "id_b") == "γ"
    assert mu_text(algebra, "id_a", "γ") == "-γ"


def test_composability_is_checked(algebra):
    with pytest.raises(ArcMismatch):
        algebra.mu(algebra.morphism(algebra.parse_angle("β")), algebra.morphism(algebra.parse_angle("δ")))


def test_square_face_gives_an_identity(algebra):
    assert mu_text(algebra, "δ", "γ", "β", "α") == "id_b"


def test_no_triangles_no_third_product(algebra):
    assert mu_text(algebra, "γ", "β", "α") == "0"
    assert mu_text(algebra, "δ", "γ", "β") == "0"


def test_unary_product_vanishes(algebra):
    assert mu_text(algebra, "γ") == "0"


def test_curvature_is_the_weighted_full_turns(algebra):
    curvature = algebra.curvature_arc("a")
    assert curvature.source == curvature.target == "a"
    assert len(curvature.terms) == 2
    for angle, coeff in curvature.terms.items():
        assert angle.length == 4
        assert coeff == algebra.ring.var("q")


def test_indecomposables(algebra, torus1):
    assert len(algebra.indecomposables()) == torus1.valence("q")
    assert all(a.length == 1 for a in algebra.indecomposables())


@pytest.fixture(scope="module")
def wide(torus1):
    return GentleAlgebra(torus1, truncation=4, area_cap=12)


def test_curvatures_are_the_full_turns_at_both_ends(algebra):
    q = algebra.ring.var("q")
    for arc, words in (("a", {"αβγδ", "γδαβ"}), ("b", {"βγδα", "δαβγ"})):
        curvature = algebra.curvature_arc(arc)
        assert {algebra.angle_text(angle) for angle in curvature.terms} == words
        assert all(coeff == q for coeff in curvature.terms.values())


def test_hexagon_gives_an_identity(algebra):
    assert mu_text(algebra, "γ", "βγ", "β", "α", "δα", "δ") == "id_a"


def test_winding_disk_without_covering_the_puncture(torus1):
    flat = GentleAlgebra(torus1, truncation=0, area_cap=12)
    names = ["α", "δ", "γδ", "γ", "βγ", "β", "αβ", "α", "δα", "δ", "γ", "βγδαβ"]
    assert mu_text(flat, *names) == "id_a"
    assert flat.complete


def test_square_covering_the_puncture_once(wide):
    assert mu_text(wide, "δ", "γδ", "γ", "βγ", "β", "αβ", "α", "δα") == "q*id_b"


def rectangle(m, n):
    return (
        ["δ"] + ["γδ"] * (m - 1)
        + ["γ"] + ["βγ"] * (n - 1)
        + ["β"] + ["αβ"] * (m - 1)
        + ["α"] + ["δα"] * (n - 1)
    )


@pytest.mark.parametrize("m,n,expected", [(2, 2, "q*id_b"), (2, 3, "q^2*id_b"), (3, 2, "q^2*id_b"), (3, 3, "q^4*id_b")])
def test_rectangles_cover_the_puncture(wide, m, n, expected):
    assert mu_text(wide, *rectangle(m, n)) == expected
    assert wide.complete


def indecomposable_chains(algebra, arity):
    """Composable tuples of indecomposable angles in product order a_k, ..., a_1."""
    chains = [[a] for a in algebra.indecomposables()]
    for _ in range(arity - 1):
        chains = [c + [a] for c in chains for a in algebra.indecomposables() if c[-1].target_arc == a.source_arc]
    return [tuple(algebra.morphism(a) for a in reversed(c)) for c in chains]


def test_curved_relations_on_short_tuples(torus1):
    algebra = GentleAlgebra(torus1, truncation=2, area_cap=8)
    tuples = [t for k in range(1, 5) for t in indecomposable_chains(algebra, k)]
    report = algebra.check_cainf(tuples)
    assert report.checked == len(tuples) > 0
    assert report.complete
    assert report.failures == []


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ntorus1", "ntorus2"])
def test_curved_relations_up_to_arity_five(name):
    algebra = GentleAlgebra(load_dimer(name, require_dimer=True), truncation=2, area_cap=10)
    tuples = [t for k in range(1, 6) for t in indecomposable_chains(algebra, k)]
    report = algebra.check_cainf(tuples)
    assert report.complete
    assert report.passed


def test_products_are_deterministic(torus1):
    first = GentleAlgebra(torus1, truncation=3, area_cap=8)
    second = GentleAlgebra(torus1, truncation=3, area_cap=8)
    names = rectangle(2, 2)
    assert mu_text(first, *names) == mu_text(first, *names) == mu_text(second, *names)
    assert mu_text(first, "β", "γ") == mu_text(second, "β", "γ")
