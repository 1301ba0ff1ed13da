import json

import pytest

from app.core.exceptions import (
    DZeroViolated, FixtureNotFound, IncompleteResult, InconsistentFaceOrientation, InternalServerError,
    InvalidInputError, MalformedDimer, NonTransversal
)
from app.core.status_codes import ExitCode
from app.models.dimer_models import RunConfig
from app.services.commands import (
    cmd_fixtures, cmd_mu, cmd_render, cmd_validate, cmd_zigzags, parse_basis_element
)
from app.services.fixtures import read_raw
from app.utils.error_handler import EngineErrorHandler


def test_fixture_listing():
    names = cmd_fixtures()
    assert {"torus1", "ntorus1", "ntorus2", "q3"} <= set(names)
    assert names == sorted(names)


def test_missing_fixture():
    with pytest.raises(FixtureNotFound):
        cmd_validate("no-such-dimer")


def test_validate_report():
    record = cmd_validate("ntorus1")
    assert record["valid"] and record["is_dimer"]
    assert record["genus"] == 1
    assert (record["punctures"], record["arcs"]) == (1, 3)
    assert sorted(f["orientation"] for f in record["faces"]) == ["clockwise", "counterclockwise"]
    assert record["consistency"]["verdict"] in ("Consistent", "Inconsistent", "Unknown")


def test_validate_inline_description():
    record = cmd_validate(read_raw("torus1"))
    assert not record["is_dimer"]
    assert record["faces"][0]["length"] == 4


def test_mu_record():
    record = cmd_mu("torus1", ["β", "γ"])
    assert record["result"] == "-βγ"
    assert record["terms"] == {"βγ": "-1"}
    assert record["complete"]


def test_zigzag_record():
    record = cmd_zigzags("ntorus1")
    assert record["count"] == 3
    assert record["items"][0] == {
        "name": "L0", "length": 2, "path": "d1L h1R", "identity_at": 0, "coidentity_at": 0
    }
    assert record["cohomology"]["L0->L0"] == 2
    assert record["cohomology"]["L0->L1"] == 1


def test_zigzags_need_a_dimer():
    with pytest.raises(InconsistentFaceOrientation):
        cmd_zigzags("torus1")


def test_basis_element_parsing():
    b = parse_basis_element("B(1,0)[L0->L1]")
    assert (b.first, b.second, b.label.kind, b.label.first, b.label.second) == (0, 1, "B", 1, 0)
    assert parse_basis_element(" coid[L2->L2] ").label.kind == "coid"
    assert parse_basis_element(b.text()) == b
    with pytest.raises(InvalidInputError):
        parse_basis_element("id[L0->L1]")
    with pytest.raises(InvalidInputError):
        parse_basis_element("B(1)[L0->L1]")


def test_render_to_file(tmp_path):
    out = tmp_path / "drawings" / "ntorus1.svg"
    record = cmd_render("ntorus1", "dimer", out=str(out))
    assert record["path"] == str(out)
    assert "<svg" in out.read_text(encoding="utf-8")


def test_render_inline_is_deterministic():
    first = cmd_render("ntorus1", "zigzags")["svg"]
    second = cmd_render("ntorus1", "zigzags")["svg"]
    assert first == second


def test_render_rejects_unknown_targets():
    with pytest.raises(InvalidInputError):
        cmd_render("ntorus1", "faces")
    with pytest.raises(InvalidInputError):
        cmd_render("ntorus1", "disk")


@pytest.mark.parametrize("exception,code", [
    (MalformedDimer(), ExitCode.INVALID_INPUT),
    (NonTransversal(), ExitCode.INVALID_INPUT),
    (FixtureNotFound(), ExitCode.IO_ERROR),
    (InternalServerError(), ExitCode.IO_ERROR),
    (DZeroViolated(2, "q*B(0,1)"), ExitCode.DZERO_VIOLATED),
    (IncompleteResult(), ExitCode.INCOMPLETE),
    (ValueError("boom"), ExitCode.IO_ERROR),
])
def test_exit_codes(exception, code):
    assert EngineErrorHandler.exit_code(exception) == code.value


def test_unexpected_errors_are_wrapped():
    @EngineErrorHandler.handle_engine_exceptions("Lookup")
    def lookup():
        raise KeyError("x")

    with pytest.raises(InternalServerError) as info:
        lookup()
    assert info.value.status_code == 500
    assert info.value.detail["detail"].startswith("Lookup")


def test_run_config_rejects_negative_caps():
    with pytest.raises(ValueError):
        RunConfig(truncation=-1)
    assert json.loads(RunConfig(area=3).model_dump_json())["area"] == 3
