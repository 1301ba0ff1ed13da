import pytest

from app.core.exceptions import TruncationMismatch
from app.services.coeffring import INFINITY, SeriesRing


@pytest.fixture
def ring():
    return SeriesRing(["q"], 2)


def test_terms_above_truncation_vanish(ring):
    q = ring.var("q")
    assert (q * q).text() == "q^2"
    assert (q * q * q).is_zero()
    assert ((1 + q) * (1 + q) * (1 + q)).text() == "1 + 3*q + 3*q^2"


def test_text_is_canonical(ring):
    q = ring.var("q")
    assert (ring.one() + q).text() == "1 + q"
    assert (q + ring.one()).text() == "1 + q"
    assert (-q).text() == "-q"
    assert (2 * q * q - 1).text() == "-1 + 2*q^2"
    assert ring.zero().text() == "0"


def test_madic_order(ring):
    q = ring.var("q")
    assert ring.zero().madic_order() == INFINITY
    assert ring.one().madic_order() == 0
    assert (q * q + q).madic_order() == 1


def test_parts_and_constant_term(ring):
    q = ring.var("q")
    x = 3 + 2 * q - q * q
    assert x.constant_term() == 3
    assert x.part(1) == 2 * q
    assert x.at_zero() == 3
    assert x.truncate(1).text() == "3 + 2*q"


def test_integers_coerce(ring):
    assert ring.one() == 1
    assert ring.constant(-1) == -1
    assert 1 - ring.one() == 0


def test_several_punctures():
    ring = SeriesRing(["p1", "p2"], 3)
    x = ring.monomial({"p1": 1, "p2": 2}, 5)
    assert x.terms() == {(1, 2): 5}
    assert (x * ring.var("p1")).is_zero()


def test_mixing_truncations_is_rejected(ring):
    other = SeriesRing(["q"], 3)
    with pytest.raises(TruncationMismatch):
        ring.one() + other.one()


def test_ring_axioms():
    ring = SeriesRing(["p1", "p2"], 3)
    p1, p2 = ring.var("p1"), ring.var("p2")
    samples = [ring.zero(), ring.one(), 2 - p1, p1 * p2 + 3 * p2, p1 * p1 - p2 + 1]
    for x in samples:
        assert x + ring.zero() == x
        assert x * ring.one() == x
        assert x - x == ring.zero()
        for y in samples:
            assert x + y == y + x
            assert x * y == y * x
            for z in samples:
                assert (x + y) + z == x + (y + z)
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z


def test_truncation_is_compatible_with_products():
    ring = SeriesRing(["q"], 4)
    q = ring.var("q")
    x, y = 1 + q + q * q, 2 - q * q * q
    assert (x * y).truncate(2) == x.truncate(2) * y.truncate(2)
