"""Command line: polygons, arc arithmetic, verification suites and traces."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from .arc_algebra import add_arcs, double_arc, sub_arcs
from .config import resolve_options
from .const import (
    ARC_ADD,
    ARC_DOUBLE,
    ARC_HALVE,
    ARC_OPERATIONS,
    ARC_SUB,
    CONF_OUTPUT_FORMAT,
    CONF_PRECISION,
    CONF_SVG,
    EXIT_CERTIFICATE_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    FORMAT_JSON,
    MODE_CONSTRUCTED,
    OUTPUT_FORMATS,
    SUITES,
    TRACEABLE_RECIPES,
)
from .kernel import Point, ReplayError, Scene
from .numerics import (
    LemniscateError,
    LemniscatePoint,
    Petal,
    PrecisionContext,
    check_radius,
)
from .recipes import (
    CertificateEntry,
    NGon,
    construct_ngon,
    numeric_ngon,
    recipe_add_sub,
    recipe_double,
    recipe_halve,
)
from .svg import SvgOptions, render_ngon
from .trace import TraceDocument, run_traceable, verify_replay
from .verification import run_suite

_LOGGER = logging.getLogger(__name__)

COMMAND_NGON = "ngon"
COMMAND_ARC = "arc"
COMMAND_VERIFY = "verify"
COMMAND_TRACE = "trace"
TRACE_REPLAY = "replay"

_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class ArcUsageError(LemniscateError, ValueError):
    """Exception raised for malformed arc arguments."""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="Working precision in decimal digits.")
    common.add_argument("--config", type=Path, default=None, help="YAML configuration file.")
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug details.")
    return common


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Output format.")
    parser.add_argument("--out", type=Path, default=None, help="Write to a file instead of stdout.")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    parser = argparse.ArgumentParser(
        prog="lemniscate-ruler",
        description="Ruler-and-compass arithmetic on the lemniscate of Bernoulli.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    ngon_parser = subparsers.add_parser(COMMAND_NGON, parents=[common], help="Draw a lemniscate n-gon.")
    ngon_parser.add_argument("n", type=int, help="Number of vertices.")
    mode = ngon_parser.add_mutually_exclusive_group()
    mode.add_argument(
        "--construct",
        dest="numeric",
        action="store_false",
        default=False,
        help="Ruler and compass (default).",
    )
    mode.add_argument("--numeric", dest="numeric", action="store_true", help="Vertices from the oracle.")
    ngon_parser.set_defaults(numeric=False)
    _output_options(ngon_parser)

    arc_parser = subparsers.add_parser(
        COMMAND_ARC, parents=[common], help="Construct an arc sum, difference, double or half."
    )
    arc_parser.add_argument("op", choices=ARC_OPERATIONS, help="Arc operation.")
    arc_parser.add_argument("radii", nargs="+", help="Radii of first-quadrant points, as decimals.")

    verify_parser = subparsers.add_parser(COMMAND_VERIFY, parents=[common], help="Run an oracle suite.")
    verify_parser.add_argument("suite", choices=SUITES, help="Suite name.")
    _output_options(verify_parser)

    trace_parser = subparsers.add_parser(
        COMMAND_TRACE, parents=[common], help="Write a JSON trace, or replay one."
    )
    trace_parser.add_argument("recipe", choices=[*TRACEABLE_RECIPES, TRACE_REPLAY], help="Recipe name.")
    trace_parser.add_argument("path", nargs="?", type=Path, help="Trace file to replay.")
    trace_parser.add_argument("--out", type=Path, default=None, help="Write to a file instead of stdout.")
    return parser


def configure_logging(verbose: bool) -> None:
    """Configure the root logger once."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format=_LOG_FORMAT)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    _LOGGER.debug("Wrote %s", out)


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def _report_failures(entries: Sequence[CertificateEntry], ctx: PrecisionContext) -> int:
    failures = [entry for entry in entries if not entry.passed]
    if not entries:
        _LOGGER.error("Run produced no certificate")
        return EXIT_CERTIFICATE_FAILED
    for entry in failures:
        _LOGGER.error(
            "Certificate %s failed: target %s, achieved %s, error %s > %s",
            entry.name,
            ctx.mp.nstr(entry.target, 15),
            ctx.mp.nstr(entry.achieved, 15),
            ctx.mp.nstr(entry.error, 5),
            ctx.mp.nstr(entry.tolerance, 5),
        )
    return EXIT_CERTIFICATE_FAILED if failures else EXIT_OK


def cmd_ngon(args: argparse.Namespace, options: dict[str, Any], ctx: PrecisionContext) -> int:
    """Draw the n-gon and write it as SVG or JSON."""
    ngon: NGon = numeric_ngon(args.n, ctx) if args.numeric else construct_ngon(args.n, ctx)
    if options[CONF_OUTPUT_FORMAT] == FORMAT_JSON:
        data = ngon.to_dict(ctx)
        if ngon.mode == MODE_CONSTRUCTED and ngon.scene is not None:
            data["trace"] = TraceDocument.from_result(ngon.result(f"ngon_{args.n}")).to_dict()
        _emit(_dump(data), args.out)
    else:
        _emit(render_ngon(ngon, ctx, SvgOptions.from_config(options[CONF_SVG])), args.out)
    return _report_failures(ngon.certificate, ctx)


def _radius(raw: str, ctx: PrecisionContext) -> Any:
    try:
        return check_radius(ctx.mpf(raw), ctx)
    except ValueError as ex:
        if isinstance(ex, LemniscateError):
            raise
        raise ArcUsageError(f"Not a decimal radius: {raw!r}") from ex


def _first_quadrant_point(scene: Scene, raw: str) -> Point:
    ctx = scene.ctx
    r = _radius(raw, ctx)
    theta = ctx.mp.acos(r * r) / 2
    x, y = LemniscatePoint(r=r, theta=theta, petal=Petal.RIGHT).cartesian(ctx)
    return scene.given(x, y)


def _require_radii(op: str, radii: Sequence[str], count: int) -> None:
    if len(radii) != count:
        raise ArcUsageError(f"arc {op} takes {count} radius argument(s), got {len(radii)}")


def cmd_arc(args: argparse.Namespace, ctx: PrecisionContext) -> int:
    """Construct one arc operation and print the radius with its certificate."""
    scene = Scene(ctx)
    op = args.op
    if op in (ARC_ADD, ARC_SUB):
        _require_radii(op, args.radii, 2)
        r, u = (_radius(raw, ctx) for raw in args.radii)
        # the closed form raises the domain errors before anything is drawn
        expected = add_arcs(r, u, ctx) if op == ARC_ADD else sub_arcs(r, u, ctx)
        result = recipe_add_sub(
            scene, _first_quadrant_point(scene, args.radii[0]), _first_quadrant_point(scene, args.radii[1])
        )
        point = result.point("t" if op == ARC_ADD else "v")
    elif op == ARC_DOUBLE:
        _require_radii(op, args.radii, 1)
        expected = double_arc(_radius(args.radii[0], ctx), ctx)
        result = recipe_double(scene, _first_quadrant_point(scene, args.radii[0]))
        point = result.point("u")
    else:
        _require_radii(ARC_HALVE, args.radii, 1)
        result = recipe_halve(scene, _first_quadrant_point(scene, args.radii[0]))
        point = result.point("r")
        expected = None

    radius = ctx.mp.hypot(point.x, point.y)
    lines = [f"{op}: {ctx.to_str(radius)}"]
    if expected is not None:
        lines.append(f"closed form: {ctx.to_str(expected)}")
    lines.extend(
        f"{entry.name}: error {ctx.mp.nstr(entry.error, 5)} {'ok' if entry.passed else 'FAILED'}"
        for entry in result.certificate
    )
    sys.stdout.write("\n".join(lines) + "\n")
    return _report_failures(result.certificate, ctx)


def cmd_verify(args: argparse.Namespace, options: dict[str, Any], ctx: PrecisionContext) -> int:
    """Run an oracle suite and report its largest error."""
    result = run_suite(args.suite, ctx)
    if options[CONF_OUTPUT_FORMAT] == FORMAT_JSON:
        _emit(_dump(result.to_dict(ctx)), args.out)
    else:
        max_error = result.max_error
        summary = (
            f"{result.suite}: {'passed' if result.passed else 'FAILED'}, "
            f"{len(result.checks)} checks, max error "
            f"{'n/a' if max_error is None else ctx.mp.nstr(max_error, 5)}\n"
        )
        _emit(summary, args.out)
    return _report_failures(result.checks, ctx)


def cmd_trace(args: argparse.Namespace, ctx: PrecisionContext) -> int:
    """Write the trace of a recipe, or replay a saved trace."""
    if args.recipe == TRACE_REPLAY:
        if args.path is None:
            raise ReplayError("trace replay needs the path of a trace file")
        try:
            data = json.loads(args.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as ex:
            raise ReplayError(f"Cannot read trace {args.path}: {ex}") from ex
        document = TraceDocument.from_dict(data)
        scene, mismatches = verify_replay(document)
        for mismatch in mismatches:
            _LOGGER.error("Replay mismatch at %s", mismatch)
        sys.stdout.write(
            f"{document.recipe}: replayed {len(scene.steps)} steps, {len(mismatches)} mismatches\n"
        )
        return EXIT_CERTIFICATE_FAILED if mismatches else EXIT_OK

    result = run_traceable(args.recipe, ctx)
    _emit(_dump(TraceDocument.from_result(result).to_dict()), args.out)
    return _report_failures(result.certificate, ctx)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_OK if ex.code in (0, None) else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        options = resolve_options(
            path=args.config,
            precision=args.precision,
            output_format=getattr(args, "format", None),
        )
        ctx = PrecisionContext(options[CONF_PRECISION])
        if args.command == COMMAND_NGON:
            return cmd_ngon(args, options, ctx)
        if args.command == COMMAND_ARC:
            return cmd_arc(args, ctx)
        if args.command == COMMAND_VERIFY:
            return cmd_verify(args, options, ctx)
        return cmd_trace(args, ctx)
    except LemniscateError as ex:
        sys.stderr.write(f"error: {ex}\n")
        return EXIT_USAGE
