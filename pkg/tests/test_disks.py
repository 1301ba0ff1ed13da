import random

import pytest

from app.services.consistency import Verdict, check_consistency, check_nmd, check_nmdc
from app.services.disks import DiskAtlas, DiskEngine, brute_disk_oracle, canonical_rotation, disk_signatures, is_closed_word
from app.services.fixtures import load_dimer


def face_words(dimer):
    return [tuple((p, j, 1) for p, j in face.corners) for face in dimer.faces]


def test_faces_are_closed_words(ntorus2):
    for word in face_words(ntorus2):
        assert is_closed_word(ntorus2, word)
    assert not is_closed_word(ntorus2, ())


def test_canonical_rotation():
    word = (("p", 2, 1), ("p", 0, 1), ("p", 1, 1))
    assert canonical_rotation(word) == (("p", 0, 1), ("p", 1, 1), ("p", 2, 1))


def test_every_face_bounds_a_disk_of_area_one(ntorus1):
    engine = DiskEngine(ntorus1)
    for word in face_words(ntorus1):
        search = engine.find_disks(word, area_cap=4, cover_cap=0)
        assert search.complete
        assert [(d.area, d.covered) for d in search.disks] == [(1, ())]


def test_open_words_bound_nothing(ntorus1):
    engine = DiskEngine(ntorus1)
    search = engine.find_disks((("p1", 0, 1),), area_cap=4, cover_cap=0)
    assert search.complete
    assert len(search) == 0


def test_brute_force_finds_the_faces(ntorus1):
    for word in face_words(ntorus1):
        disks = brute_disk_oracle(ntorus1, word, area_cap=1)
        assert [d.area for d in disks] == [1]


def test_checks_without_budget_are_unknown(ntorus1):
    assert check_consistency(ntorus1, 0).verdict == Verdict.UNKNOWN
    assert check_nmd(ntorus1, 0).verdict == Verdict.UNKNOWN
    assert check_nmdc(ntorus1, 0).verdict == Verdict.UNKNOWN


def test_consistency_needs_a_dimer(torus1):
    result = check_consistency(torus1, 8)
    assert result.verdict == Verdict.UNKNOWN
    assert result.to_dict()["verdict"] == "Unknown"


def test_verdicts_are_reported(ntorus2):
    result = check_consistency(ntorus2, 8)
    assert result.verdict in (Verdict.CONSISTENT, Verdict.INCONSISTENT, Verdict.UNKNOWN)
    assert set(result.to_dict()) >= {"verdict", "reason"}
    assert check_nmd(ntorus2, 4).verdict in (Verdict.HOLDS, Verdict.VIOLATED, Verdict.UNKNOWN)


def test_atlas_agrees_with_the_engine_on_small_disks(ntorus1):
    atlas = DiskAtlas(ntorus1, area_cap=3)
    engine = DiskEngine(ntorus1)
    assert atlas.words
    for word in atlas.words:
        search = engine.find_disks(word, area_cap=3, cover_cap=12)
        assert search.complete
        assert set(disk_signatures(search.disks)) == set(disk_signatures(atlas.disks(word)))


def test_atlas_glues_neighbouring_faces(ntorus1):
    atlas = DiskAtlas(ntorus1, area_cap=2)
    squares = [w for w in atlas.words if any(d.area == 2 for d in atlas.disks(w))]
    assert squares
    assert all(len(w) == 4 for w in squares)
    assert all(d.covered == () for w in squares for d in atlas.disks(w))


def random_words(atlas, rng, count):
    words = atlas.words
    for _ in range(count):
        word = list(rng.choice(words))
        if rng.random() < 0.5:
            i = rng.randrange(len(word))
            p, s, m = word[i]
            word[i] = (p, s, m + atlas.dimer.valence(p))
        yield tuple(word)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ntorus1", "ntorus2"])
def test_engine_agrees_with_the_atlas_on_random_words(name):
    dimer = load_dimer(name, require_dimer=True)
    atlas = DiskAtlas(dimer, area_cap=6)
    engine = DiskEngine(dimer)
    rng = random.Random(20)
    checked = 0
    for word in random_words(atlas, rng, 500):
        search = engine.find_disks(word, area_cap=6, cover_cap=24)
        if not search.complete:
            assert atlas.disks(word) == []
            continue
        assert set(disk_signatures(search.disks)) == set(disk_signatures(atlas.disks(word)))
        checked += 1
    assert checked >= 200
    assert any(d.covered_total for w in atlas.words for d in atlas.disks(w))
