import copy

import pytest

from app.core.exceptions import (
    EulerMismatch, FaceTooShort, InconsistentFaceOrientation, MalformedDimer, NonClosedFace
)
from app.services.fixtures import build_dimer, parse_dimer_file, read_raw
from app.services.surface import CLOCKWISE, COUNTERCLOCKWISE, MIXED, triangulate_refine, validate_dimer
from tests.conftest import sphere_raw


def test_torus1_is_an_arc_system_but_not_a_dimer(torus1):
    assert torus1.genus == 1
    assert len(torus1.faces) == 1
    assert len(torus1.faces[0]) == 4
    assert torus1.faces[0].orientation == MIXED
    assert not torus1.is_dimer


def test_ntorus_faces(ntorus1, ntorus2):
    for dimer, n in ((ntorus1, 1), (ntorus2, 2)):
        assert len(dimer.arcs) == 3 * n
        assert len(dimer.faces) == 2 * n
        assert dimer.genus == 1
        assert all(len(f) == 3 for f in dimer.faces)
        orientations = [f.orientation for f in dimer.faces]
        assert orientations.count(CLOCKWISE) == n
        assert orientations.count(COUNTERCLOCKWISE) == n


def test_ntorus1_face_corners(ntorus1):
    corners = {tuple(sorted(j for _, j in f.corners)): f.orientation for f in ntorus1.faces}
    assert corners == {(0, 2, 4): COUNTERCLOCKWISE, (1, 3, 5): CLOCKWISE}


def test_every_arc_bounds_two_face_sides(ntorus2):
    sides = [slot for f in ntorus2.faces for slot in f.arcs]
    assert len(sides) == 2 * len(ntorus2.arcs)
    for arc in ntorus2.arc_ids:
        assert (arc, True) in sides and (arc, False) in sides


def test_spheres(q3, q4):
    for dimer, n in ((q3, 3), (q4, 4)):
        assert dimer.genus == 0
        assert len(dimer.faces) == 2
        assert sorted(len(f) for f in dimer.faces) == [n, n]
        assert dimer.is_dimer


def test_spin_is_read_from_the_file(q3):
    assert q3.spin_of(("s1", 0)) == 1
    assert q3.spin_of(("s1", 2)) == 1
    assert q3.spin_of(("s2", 0)) == 0


def test_round_trip_through_the_file_format(ntorus2):
    again = validate_dimer(ntorus2.to_raw())
    assert again.rotation == ntorus2.rotation
    assert len(again.faces) == len(ntorus2.faces)


def test_digon_faces_are_rejected():
    raw = sphere_raw(2)
    with pytest.raises(FaceTooShort):
        validate_dimer(raw)


def test_unknown_puncture():
    raw = sphere_raw(3)
    raw["arcs"][0]["head"] = "nowhere"
    with pytest.raises(MalformedDimer):
        validate_dimer(raw)


def test_duplicate_and_missing_incidences():
    raw = sphere_raw(3)
    raw["rotation"]["s1"] = [["se1", "tail"], ["se1", "tail"]]
    with pytest.raises(MalformedDimer):
        validate_dimer(raw)
    raw = sphere_raw(3)
    raw["rotation"]["s1"] = [["se1", "tail"]]
    with pytest.raises(MalformedDimer):
        validate_dimer(raw)


def test_incidence_at_the_wrong_puncture():
    raw = sphere_raw(3)
    raw["rotation"]["s1"], raw["rotation"]["s2"] = raw["rotation"]["s2"], raw["rotation"]["s1"]
    with pytest.raises(MalformedDimer) as info:
        validate_dimer(raw)
    assert not isinstance(info.value, NonClosedFace)
    assert "belongs to 's2'" in str(info.value)


def test_disconnected_surfaces():
    first, second = sphere_raw(3, "a"), sphere_raw(3, "b")
    raw = {
        "format": 1,
        "punctures": first["punctures"] + second["punctures"],
        "arcs": first["arcs"] + second["arcs"],
        "rotation": {**first["rotation"], **second["rotation"]},
    }
    with pytest.raises(EulerMismatch):
        validate_dimer(raw)


def test_require_dimer_rejects_mixed_faces():
    raw = read_raw("torus1")
    assert build_dimer(raw).genus == 1
    with pytest.raises(InconsistentFaceOrientation):
        build_dimer(raw, require_dimer=True)


def test_file_format_checks():
    raw = copy.deepcopy(read_raw("torus1"))
    raw["format"] = 2
    with pytest.raises(MalformedDimer):
        parse_dimer_file(raw)
    raw["format"] = 1
    raw["rotation"]["q"][0] = ["a", "middle"]
    with pytest.raises(MalformedDimer):
        parse_dimer_file(raw)


def test_triangulating_the_square(torus1):
    refinement = triangulate_refine(torus1)
    refined = refinement.dimer
    assert len(refinement.added_arcs) == 1
    assert len(refined.arcs) == 3
    assert len(refined.faces) == 2
    assert all(len(f) == 3 for f in refined.faces)
    assert refined.genus == 1


def test_transported_corners_keep_their_arcs(torus1):
    refinement = triangulate_refine(torus1)
    p, start, length = refinement.transport_corner("q", 1, 1)
    old_source = torus1.incidence("q", 1)
    old_target = torus1.incidence("q", 2)
    assert refinement.dimer.incidence(p, start) == old_source
    assert refinement.dimer.incidence(p, start + length) == old_target
    assert refinement.transport_corner("q", 0, 4) == ("q", refinement.dimer.index_of(torus1.incidence("q", 0)), 6)
