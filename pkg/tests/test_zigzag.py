import pytest

from app.core.exceptions import InvalidInputError
from app.models.dimer_models import RunConfig
from app.services.fixtures import load_dimer
from app.services.zigzag import LEFT, RIGHT, enumerate_zigzags, intersections, step_backward, step_forward


def test_ntorus1_paths(ntorus1):
    paths = enumerate_zigzags(ntorus1)
    assert [p.text() for p in paths] == ["d1L h1R", "h1L v1R", "v1L d1R"]
    assert [p.name for p in paths] == ["L0", "L1", "L2"]
    assert all(p.turns[0] == LEFT for p in paths)


@pytest.mark.parametrize("name,count", [("ntorus1", 3), ("ntorus2", 4), ("ntorus3", 5)])
def test_ntorus_path_count(name, count):
    dimer = load_dimer(name, require_dimer=True)
    paths = enumerate_zigzags(dimer)
    assert len(paths) == count
    assert sum(len(p) for p in paths) == 2 * len(dimer.arcs)


@pytest.mark.parametrize("name", ["ntorus1", "ntorus2", "ntorus3"])
def test_torus_path_count_is_bounded_by_the_punctures(name):
    # one path per boundary lattice point of a polygon of area n / 2
    dimer = load_dimer(name, require_dimer=True)
    assert dimer.genus == 1
    assert len(enumerate_zigzags(dimer)) <= len(dimer.punctures) + 2


def test_sphere_paths(q3, q4):
    paths = enumerate_zigzags(q3)
    assert [len(p) for p in paths] == [6]
    paths = enumerate_zigzags(q4)
    assert [len(p) for p in paths] == [4, 4]


def test_turns_alternate(ntorus2):
    for path in enumerate_zigzags(ntorus2):
        assert len(path) % 2 == 0
        for i in range(len(path)):
            assert path.turn(i) != path.turn(i + 1)


def test_steps_invert(ntorus2):
    for arc in ntorus2.arc_ids:
        for turn in (LEFT, RIGHT):
            nxt = step_forward(ntorus2, arc, turn)
            assert step_backward(ntorus2, nxt, turn) == arc


def test_arc_systems_have_no_zigzag_paths(torus1):
    with pytest.raises(InvalidInputError):
        enumerate_zigzags(torus1)


def test_intersections(ntorus1):
    l0, l1, l2 = enumerate_zigzags(ntorus1)
    assert [(x.arc, x.kind) for x in intersections(l0, l1)] == [("h1", "C")]
    assert [(x.arc, x.kind) for x in intersections(l1, l0)] == [("h1", "B")]
    assert [(x.arc, x.kind) for x in intersections(l0, l2)] == [("d1", "B")]
    assert intersections(l0, l0) == []


def test_sphere_self_intersections(q3):
    (path,) = enumerate_zigzags(q3)
    crossings = intersections(path, path)
    assert len(crossings) == 6
    assert sorted(x.kind for x in crossings) == ["B"] * 3 + ["C"] * 3


def test_identity_locations_are_configurable():
    config = RunConfig(identity_locations={"0": 1})
    paths = enumerate_zigzags(load_dimer("ntorus1", config, require_dimer=True))
    assert paths[0].identity_at == 1
    assert paths[1].identity_at == 0


def test_coidentity_must_sit_in_a_counterclockwise_face():
    config = RunConfig(coidentity_locations={"0": 1})
    with pytest.raises(InvalidInputError):
        enumerate_zigzags(load_dimer("ntorus1", config, require_dimer=True))


def test_locations_must_be_on_the_path():
    config = RunConfig(identity_locations={"2": 5})
    with pytest.raises(InvalidInputError):
        enumerate_zigzags(load_dimer("ntorus1", config, require_dimer=True))
