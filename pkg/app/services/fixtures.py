"""
Dimer files: discovery, parsing and validation.
"""

import json
import logging
import os
from typing import List, Optional

from pydantic import ValidationError

from app.config import settings
from app.core.exceptions import FixtureNotFound, GentleEngineException, InternalServerError, MalformedDimer
from app.core.status_codes import EngineMessages, ErrorMessages
from app.models.dimer_models import DimerFile, RunConfig
from app.services.surface import Dimer, validate_dimer

logger = logging.getLogger(__name__)


def list_fixtures(directory: Optional[str] = None) -> List[str]:
    """Names of the dimer files in the fixture directory, sorted."""
    directory = directory or settings.FIXTURES_DIR
    if not os.path.isdir(directory):
        return []
    return sorted(f[:-5] for f in os.listdir(directory) if f.endswith(".json"))


def resolve(source: str, directory: Optional[str] = None) -> str:
    """
    Path of a dimer file given by path or by fixture name

    Raises:
        FixtureNotFound: neither a file nor a fixture of that name exists
    """
    if os.path.isfile(source):
        return source
    directory = directory or settings.FIXTURES_DIR
    name = source[:-5] if source.endswith(".json") else source
    candidate = os.path.join(directory, f"{name}.json")
    if os.path.isfile(candidate):
        return candidate
    raise FixtureNotFound(ErrorMessages.FIXTURE_NOT_FOUND.format(source, directory))


def parse_dimer_file(raw: dict) -> dict:
    """
    Check the file-level structure and return the normalized description

    Raises:
        MalformedDimer: wrong format version or wrongly shaped fields
    """
    if raw.get("format", 1) != 1:
        raise MalformedDimer(ErrorMessages.UNSUPPORTED_FORMAT.format(raw.get("format")))
    try:
        model = DimerFile(**raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(x) for x in first["loc"])
        raise MalformedDimer(f"{location}: {first['msg']}")
    return model.model_dump(exclude_none=True)


def read_raw(source: str, directory: Optional[str] = None) -> dict:
    path = resolve(source, directory)
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as e:
        raise MalformedDimer(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise InternalServerError(detail=EngineMessages.FIXTURE_LOAD_FAILED.format(str(e)))
    raw.setdefault("name", os.path.basename(path)[:-5])
    return raw


def build_dimer(raw: dict, config: Optional[RunConfig] = None, require_dimer: bool = False) -> Dimer:
    """
    Validate a raw description with the per-path overrides of a run configuration

    Args:
        raw (dict): dimer file content
        config (Optional[RunConfig]): spin, identity and co-identity overrides
        require_dimer (bool): reject faces with mixed orientation

    Returns:
        Dimer: validated dimer
    """
    description = parse_dimer_file(raw)
    if config is not None:
        description = config.apply(description)
    try:
        return validate_dimer(description, require_dimer=require_dimer)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.VALIDATION_FAILED.format(str(e)))


def load_dimer(source: str, config: Optional[RunConfig] = None, require_dimer: bool = False) -> Dimer:
    """Read, parse and validate a dimer file by path or fixture name."""
    dimer = build_dimer(read_raw(source), config, require_dimer)
    logger.info("loaded %r", dimer)
    return dimer
