"""
Batch commands shared by the command line and the HTTP routes.

Every command takes a dimer source (fixture name, file path or an inline
description) and a RunConfig, and returns a JSON-ready record carrying a
`complete` flag wherever caps may have cut a search short.
"""

import logging
import os
import re
from typing import List, Optional, Sequence, Union

from app.core.exceptions import GentleEngineException, IncompleteResult, InternalServerError, InvalidInputError
from app.core.status_codes import EngineMessages, ErrorMessages
from app.models.dimer_models import RunConfig
from app.services.consistency import check_consistency, check_nmd, check_nmdc
from app.services.fixtures import build_dimer, list_fixtures, load_dimer
from app.services.fukaya import SPECIAL_KINDS, DiskList, FukayaOracle, basis_tuples, compare, is_transversal
from app.services.gtl import GentleAlgebra
from app.services.kadeishvili import BasisElement, DeformedSplitting, minimal_product
from app.services.render import render_dimer, render_disk, render_zigzags
from app.services.splitting import HLabel, ZigzagCategory, cohomology_dims
from app.services.surface import Dimer
from app.services.zigzag import enumerate_zigzags
from app.utils.error_handler import EngineErrorHandler

logger = logging.getLogger(__name__)

Source = Union[str, dict]

BASIS_PATTERN = re.compile(r"(?:(?P<kind>[BC])\((?P<i>\d+),(?P<j>\d+)\)|(?P<special>coid|id))\[L(?P<first>\d+)->L(?P<second>\d+)\]")


def _load(source: Source, config: RunConfig, require_dimer: bool = False) -> Dimer:
    if isinstance(source, dict):
        return build_dimer(source, config, require_dimer)
    return load_dimer(source, config, require_dimer)


def _category(dimer: Dimer, config: RunConfig) -> ZigzagCategory:
    return ZigzagCategory(dimer, config.truncation, config.winding, config.area)


def _require(config: RunConfig, complete: bool, what: str) -> None:
    if config.require_complete and not complete:
        raise IncompleteResult(ErrorMessages.INCOMPLETE.format(what))


def parse_basis_element(text: str) -> BasisElement:
    """
    Parse 'B(i,j)[La->Lb]', 'C(i,j)[La->Lb]', 'coid[La->La]' or 'id[La->La]'

    Raises:
        InvalidInputError: the text matches none of these forms
    """
    match = BASIS_PATTERN.fullmatch(text.strip())
    if not match:
        raise InvalidInputError(f"cannot parse basis element '{text}'")
    first, second = int(match.group("first")), int(match.group("second"))
    if match.group("special"):
        if first != second:
            raise InvalidInputError(f"'{text}' needs equal source and target paths")
        return BasisElement(first, second, HLabel(match.group("special")))
    return BasisElement(first, second, HLabel(match.group("kind"), int(match.group("i")), int(match.group("j"))))


@EngineErrorHandler.handle_engine_exceptions("List fixtures")
def cmd_fixtures() -> List[str]:
    return list_fixtures()


def cmd_validate(source: Source, config: Optional[RunConfig] = None) -> dict:
    """
    Validate a dimer and run the consistency and monogon/digon checks

    Args:
        source (Source): fixture name, file path or inline description
        config (Optional[RunConfig]): radius and area caps

    Returns:
        dict: structure, faces and the three verdicts
    """
    config = config or RunConfig()
    dimer = _load(source, config)
    try:
        faces = [
            {
                "index": f.index,
                "length": len(f),
                "orientation": f.orientation,
                "arcs": [arc if fwd else f"-{arc}" for arc, fwd in f.arcs],
            }
            for f in dimer.faces
        ]
        return {
            "fixture": dimer.name,
            "valid": True,
            "is_dimer": dimer.is_dimer,
            "genus": dimer.genus,
            "punctures": len(dimer.punctures),
            "arcs": len(dimer.arcs),
            "faces": faces,
            "consistency": check_consistency(dimer, config.radius).to_dict(),
            "nmd": check_nmd(dimer, config.area).to_dict(),
            "nmdc": check_nmdc(dimer, config.area).to_dict(),
        }
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.VALIDATION_FAILED.format(str(e)))


def cmd_mu(source: Source, inputs: Sequence[str], config: Optional[RunConfig] = None) -> dict:
    """
    Higher product of gentle algebra angles

    Args:
        source (Source): the arc system
        inputs (Sequence[str]): angles a_k, ..., a_1 by name word, 'P:s+m' or 'id_<arc>'
        config (Optional[RunConfig]): truncation and area cap

    Returns:
        dict: canonical text of mu(a_k, ..., a_1), its terms and completeness
    """
    config = config or RunConfig()
    dimer = _load(source, config)
    algebra = GentleAlgebra(dimer, config.truncation, config.area)
    morphisms = [algebra.morphism(algebra.parse_angle(text)) for text in inputs]
    if not morphisms:
        raise InvalidInputError("mu needs at least one input")
    try:
        value = algebra.mu(*morphisms)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.PRODUCT_FAILED.format(str(e)))
    record = {
        "fixture": dimer.name,
        "inputs": list(inputs),
        "result": algebra.morphism_text(value),
        "terms": {algebra.angle_text(a): c.text() for a, c in sorted(value.terms.items())},
        "complete": algebra.complete,
    }
    _require(config, algebra.complete, f"mu({', '.join(inputs)})")
    return record


def cmd_minimal(source: Source, inputs: Sequence[str], config: Optional[RunConfig] = None) -> dict:
    """
    Product of the deformed minimal model on cohomology basis elements

    Raises:
        DZeroViolated: the simplified deformed construction does not apply
    """
    config = config or RunConfig()
    dimer = _load(source, config, require_dimer=True)
    elements = [parse_basis_element(text) for text in inputs]
    try:
        splitting = DeformedSplitting(_category(dimer, config))
        result = minimal_product(splitting, elements)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.MINIMAL_FAILED.format(str(e)))
    record = {
        "fixture": dimer.name,
        "inputs": [e.text() for e in elements],
        "result": result.text(),
        "terms": {label.text(): c.text() for label, c in sorted(result.values.items())},
        "complete": result.complete,
    }
    _require(config, result.complete, f"minimal({', '.join(inputs)})")
    return record


def cmd_compare(
    source: Source,
    config: Optional[RunConfig] = None,
    arity: int = 2,
    transversal: bool = True,
    limit: Optional[int] = None,
    inputs: Optional[Sequence[Sequence[str]]] = None,
) -> dict:
    """
    Compare minimal-model products with the disk oracle

    Args:
        source (Source): a geometrically consistent dimer
        config (Optional[RunConfig]): caps of both sides
        arity (int): tuple length of the generated suite
        transversal (bool): restrict the suite to pairwise distinct paths
        limit (Optional[int]): cap on the number of generated tuples
        inputs (Optional[Sequence[Sequence[str]]]): explicit tuples instead of the suite

    Returns:
        dict: per-row results, the mismatch count and overall completeness
    """
    config = config or RunConfig()
    dimer = _load(source, config, require_dimer=True)
    try:
        category = _category(dimer, config)
        splitting = DeformedSplitting(category)
        oracle = FukayaOracle(category, config.area, config.periods)
        if inputs:
            tuples = [tuple(parse_basis_element(t) for t in row) for row in inputs]
        else:
            tuples = basis_tuples(category, arity, transversal=transversal, limit=limit)
        report = compare(splitting, oracle, tuples)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.COMPARISON_FAILED.format(str(e)))
    record = {"fixture": dimer.name}
    record.update(report.to_dict())
    _require(config, report.complete, f"comparison on {dimer.name}")
    return record


@EngineErrorHandler.handle_engine_exceptions("Zigzag enumeration")
def cmd_zigzags(source: Source, config: Optional[RunConfig] = None) -> dict:
    """Zigzag paths of a dimer with the cohomology dimension of every ordered pair."""
    config = config or RunConfig()
    dimer = _load(source, config, require_dimer=True)
    paths = enumerate_zigzags(dimer)
    return {
        "fixture": dimer.name,
        "items": [
            {
                "name": p.name,
                "length": len(p),
                "path": p.text(),
                "identity_at": p.identity_at,
                "coidentity_at": p.coidentity_at,
            }
            for p in paths
        ],
        "count": len(paths),
        "cohomology": {f"{a.name}->{b.name}": cohomology_dims(a, b) for a in paths for b in paths},
    }


def disks_for(oracle: FukayaOracle, inputs: Sequence[BasisElement]) -> DiskList:
    """Smooth disks of a transversal tuple, otherwise the CR, ID, DS and DW disks."""
    if is_transversal(inputs):
        return oracle.smooth_disks(inputs)
    disks = DiskList()
    for kind in SPECIAL_KINDS:
        disks.extend(oracle.enumerate_special(kind, inputs))
    return disks


def cmd_render(
    source: Source,
    what: str = "dimer",
    config: Optional[RunConfig] = None,
    inputs: Optional[Sequence[str]] = None,
    index: int = 0,
    out: Optional[str] = None,
) -> dict:
    """
    Render a dimer, its zigzag curves or one disk of a product as SVG

    Args:
        what (str): 'dimer', 'zigzags' or 'disk'
        inputs (Optional[Sequence[str]]): basis elements of the product whose disk is drawn
        index (int): position of the disk in the enumeration
        out (Optional[str]): file to write; the SVG is returned inline otherwise

    Raises:
        InternalServerError: the output file cannot be written
    """
    config = config or RunConfig()
    if what == "dimer":
        dimer = _load(source, config)
        svg = render_dimer(dimer)
    elif what == "zigzags":
        dimer = _load(source, config, require_dimer=True)
        svg = render_zigzags(dimer, enumerate_zigzags(dimer))
    elif what == "disk":
        if not inputs:
            raise InvalidInputError("rendering a disk needs its inputs")
        dimer = _load(source, config, require_dimer=True)
        category = _category(dimer, config)
        oracle = FukayaOracle(category, config.area, config.periods)
        elements = [parse_basis_element(t) for t in inputs]
        disks = disks_for(oracle, elements).disks
        if index >= len(disks):
            raise InvalidInputError(f"only {len(disks)} disks for {', '.join(inputs)}")
        svg = render_disk(dimer, category.paths, disks[index])
    else:
        raise InvalidInputError(f"cannot render '{what}'")
    record = {"fixture": dimer.name, "what": what}
    if out is None:
        record["svg"] = svg
        return record
    try:
        directory = os.path.dirname(os.path.abspath(out))
        os.makedirs(directory, exist_ok=True)
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(svg)
    except OSError as e:
        raise InternalServerError(detail=EngineMessages.RENDER_FAILED.format(str(e)))
    logger.info("wrote %s", out)
    record["path"] = out
    return record
