"""
Batch command line for the gentle engine.

    python gentle_cli.py validate ntorus2
    python gentle_cli.py mu torus1 δ γ β α --trunc 4
    python gentle_cli.py minimal ntorus2 "id[L0->L0]" "coid[L0->L0]"
    python gentle_cli.py compare ntorus2 --arity 3 --area 14 --require-complete
    python gentle_cli.py render ntorus1 zigzags --out zigzags.svg

Exit codes: 0 ok, 1 invalid input, 2 I/O, 3 violated d = 0, 4 incomplete
within caps (only with --require-complete).
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.config import settings
from app.core.exceptions import GentleEngineException
from app.core.status_codes import ExitCode
from app.models.dimer_models import RunConfig
from app.services.commands import (
    cmd_compare, cmd_fixtures, cmd_minimal, cmd_mu, cmd_render, cmd_validate, cmd_zigzags
)
from app.utils import EngineErrorHandler

logger = logging.getLogger("gentle_cli")


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trunc", type=int, default=settings.TRUNCATION, help="truncation N of the deformation base")
    parser.add_argument("--winding", type=int, default=settings.WINDING_CAP, help="winding cap W")
    parser.add_argument("--area", type=int, default=settings.AREA_CAP, help="disk area cap A")
    parser.add_argument("--radius", type=int, default=settings.RADIUS, help="consistency radius R")
    parser.add_argument("--periods", type=int, default=settings.SEGMENT_PERIODS, help="smooth-disk segment cap in periods")
    parser.add_argument("--require-complete", action="store_true", help="exit 4 when a result is incomplete within caps")
    parser.add_argument("--format", choices=("json", "text"), default="json", help="report format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gentle_cli", description="Deformed gentle algebras and zigzag minimal models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixtures", help="list shipped dimer files")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("validate", help="validate a dimer and run the consistency checks")
    p.add_argument("file")
    _add_caps(p)

    p = sub.add_parser("mu", help="higher product of angles, given as a_k ... a_1")
    p.add_argument("file")
    p.add_argument("inputs", nargs="+")
    _add_caps(p)

    p = sub.add_parser("minimal", help="minimal-model product of basis elements, given as h_k ... h_1")
    p.add_argument("file")
    p.add_argument("inputs", nargs="+")
    _add_caps(p)

    p = sub.add_parser("compare", help="compare minimal-model products with the disk oracle")
    p.add_argument("file")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--all", action="store_true", help="include repeated paths and co-identities")
    p.add_argument("--limit", type=int, default=None)
    _add_caps(p)

    p = sub.add_parser("zigzags", help="list zigzag paths")
    p.add_argument("file")
    _add_caps(p)

    p = sub.add_parser("render", help="write an SVG drawing")
    p.add_argument("file")
    p.add_argument("what", choices=("dimer", "zigzags", "disk"))
    p.add_argument("inputs", nargs="*", help="basis elements of the disk")
    p.add_argument("--index", type=int, default=0, help="which disk of the enumeration")
    p.add_argument("--out", default=None, help="output file; prints the SVG otherwise")
    _add_caps(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        truncation=args.trunc,
        winding=args.winding,
        area=args.area,
        radius=args.radius,
        periods=args.periods,
        require_complete=args.require_complete,
    )


def _text(record: dict) -> str:
    if "rows" in record:
        lines = [
            f"{'ok ' if r['match'] else 'BAD'} {' '.join(r['inputs'])}: {r['minimal']} | {r['oracle']}"
            for r in record["rows"]
        ]
        lines.append(f"{record['tuples']} tuples, {record['mismatches']} mismatches, complete={record['complete']}")
        return "\n".join(lines)
    if "result" in record:
        flag = "" if record["complete"] else "  (incomplete)"
        return f"{', '.join(record['inputs'])} -> {record['result']}{flag}"
    if "svg" in record:
        return record["svg"]
    return "\n".join(f"{k}: {v}" for k, v in record.items())


def emit(record, fmt: str) -> None:
    if fmt == "text":
        print(record if isinstance(record, str) else _text(record))
        return
    if isinstance(record, dict) and "rows" in record:
        for row in record["rows"]:
            print(json.dumps(row, ensure_ascii=False, sort_keys=True))
        summary = {k: v for k, v in record.items() if k != "rows"}
        print(json.dumps(summary, ensure_ascii=False, sort_keys=True))
        return
    print(json.dumps(record, ensure_ascii=False, sort_keys=True))


def run(args: argparse.Namespace) -> None:
    if args.command == "fixtures":
        names = cmd_fixtures()
        emit("\n".join(names) if args.format == "text" else {"items": names, "count": len(names)}, args.format)
        return
    config = _config(args)
    if args.command == "validate":
        record = cmd_validate(args.file, config)
    elif args.command == "mu":
        record = cmd_mu(args.file, args.inputs, config)
    elif args.command == "minimal":
        record = cmd_minimal(args.file, args.inputs, config)
    elif args.command == "compare":
        record = cmd_compare(args.file, config, arity=args.arity, transversal=not args.all, limit=args.limit)
    elif args.command == "zigzags":
        record = cmd_zigzags(args.file, config)
    else:
        record = cmd_render(args.file, args.what, config, inputs=args.inputs, index=args.index, out=args.out)
    emit(record, args.format)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, format=settings.LOG_FORMAT, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        run(args)
    except GentleEngineException as e:
        logger.error("%s", e.detail)
        return EngineErrorHandler.exit_code(e)
    except ValidationError as e:
        logger.error("invalid configuration: %s", e.errors()[0]["msg"])
        return ExitCode.INVALID_INPUT.value
    except OSError as e:
        logger.error("%s", e)
        return ExitCode.IO_ERROR.value
    return ExitCode.OK.value


if __name__ == "__main__":
    sys.exit(main())
