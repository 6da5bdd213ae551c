"""Command line interface: generate, solve, verify, certify and draw instances."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

import xarray as xr

from ._errors import AltrouteError, InternalError, PreconditionViolated
from .builder import build_cycle, build_path
from .convex import optimum_cycle, optimum_path
from .generators import FAMILIES, generate
from .oracle import DEFAULT_MAX_POINTS, enumerate_min
from .reader import Instance, read_instance, read_route
from .render import write_svg
from .routes import AltRoute, RouteKind, verify_route
from .sweeps import certify_cycles, certify_paths, failures
from .writer import report_json, serialize, write_route

logger = logging.getLogger("altroute")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class Job:
    """One instance to solve or check; picklable for the process pool."""

    path: str
    kind: RouteKind | None = None
    convex: bool = False
    endpoints: tuple[int, int] | None = None
    route_path: str | None = None


@dataclass
class Outcome:
    path: str
    code: int
    report: dict[str, Any] = field(default_factory=dict)
    route: AltRoute | None = None
    error: str | None = None


def solve(instance: Instance, kind: RouteKind, endpoints: tuple[int, int] | None = None) -> AltRoute:
    """
    Build a route for an instance.

    Convex sets get the exact optimum, sets in general position the 1-plane
    construction. ``endpoints`` (0-based, set order) override the file's
    ``endpoints:`` line.
    """
    S = instance.points
    if kind is RouteKind.CYCLE:
        return optimum_cycle(S) if S.is_convex else build_cycle(S)
    ends = endpoints if endpoints is not None else instance.endpoints
    if ends is None:
        msg = "a path needs --from/--to or an 'endpoints:' line in the instance"
        raise PreconditionViolated(msg)
    a, b = ends
    return optimum_path(S, a, b) if S.is_convex else build_path(S, a, b)


def run_job(job: Job) -> Outcome:
    """Solve or check one instance; failures come back as exit codes."""
    try:
        instance = read_instance(job.path, convex=job.convex)
        if job.route_path is not None:
            route = instance.from_file_indices(read_route(job.route_path))
        else:
            if job.kind is None:
                msg = "a job needs a route kind or a route file"
                raise PreconditionViolated(msg)
            ends = None if job.endpoints is None else instance.file_endpoints(*job.endpoints)
            route = solve(instance, job.kind, ends)
        report = verify_route(instance.points, route)
    except InternalError as e:
        return Outcome(job.path, EXIT_INTERNAL, error=f"internal error: {e}")
    except (AltrouteError, OSError) as e:
        return Outcome(job.path, EXIT_INPUT, error=str(e))
    return Outcome(
        path=job.path,
        code=EXIT_OK if report.passed else EXIT_FAILED,
        report=report.to_dict(job.path),
        route=instance.to_file_indices(route),
    )


def _map_jobs(fn: Callable[[T], R], items: Sequence[T], jobs: int) -> list[R]:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _summary(outcome: Outcome) -> str:
    if outcome.error is not None:
        return f"{outcome.path}: error: {outcome.error}"
    r = outcome.report
    line = (
        f"{outcome.path}: {r['kind']} crossings={r['crossings']} bound={r['bound']} "
        f"max_edge={r['max_edge_crossings']} {'PASS' if r['passed'] else 'FAIL'}"
    )
    return "\n  - ".join([line, *r["violations"]])


def _emit(outcomes: Sequence[Outcome], as_json: bool) -> int:
    for o in outcomes:
        if o.error is not None:
            logger.error("%s: %s", o.path, o.error)
    if as_json:
        payload = [
            o.report if o.error is None else {"instance": o.path, "error": o.error}
            for o in outcomes
        ]
        sys.stdout.write(report_json(payload[0] if len(payload) == 1 else {"reports": payload}))
    else:
        for o in outcomes:
            print(_summary(o))
    return max((o.code for o in outcomes), default=EXIT_OK)


def _cmd_solve(args: argparse.Namespace, kind: RouteKind) -> int:
    ends = None
    if kind is RouteKind.PATH and (args.source is not None or args.target is not None):
        if args.source is None or args.target is None:
            logger.error("--from and --to must be given together")
            return EXIT_INPUT
        ends = (args.source, args.target)
    if (args.out or args.svg) and len(args.instances) > 1:
        logger.error("--out and --svg take a single instance")
        return EXIT_INPUT

    jobs = [Job(p, kind, args.convex, ends) for p in args.instances]
    logger.info("solving %d instance(s) for a %s", len(jobs), kind.value)
    outcomes = _map_jobs(run_job, jobs, args.jobs)
    code = _emit(outcomes, args.json)

    only = outcomes[0]
    if only.route is not None and args.out:
        write_route(only.route, args.out)
        logger.info("route written to %s", args.out)
    if only.route is not None and args.svg:
        instance = read_instance(only.path)
        write_svg(args.svg, instance.points, only.route, title=only.path)
        logger.info("drawing written to %s", args.svg)
    return code


def _cmd_check(args: argparse.Namespace) -> int:
    outcome = run_job(Job(args.instance, convex=args.convex, route_path=args.route))
    return _emit([outcome], args.json)


def _cmd_gen(args: argparse.Namespace) -> int:
    S = generate(
        args.family, n=args.n, seed=args.seed, pattern=args.pattern, hull_color=args.hull_color
    )
    text = serialize(S)
    if args.out:
        Path(args.out).write_text(text)
        logger.info("%s instance with %d points written to %s", args.family, len(S), args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_svg(args: argparse.Namespace) -> int:
    instance = read_instance(args.instance, convex=args.convex)
    route = instance.from_file_indices(read_route(args.route)) if args.route else None
    write_svg(args.out, instance.points, route, title=args.instance)
    logger.info("drawing written to %s", args.out)
    return EXIT_OK


def _sweep_one(task: tuple[str, int, int]) -> xr.Dataset:
    kind, length, max_points = task
    if kind == RouteKind.CYCLE:
        return certify_cycles(length, min_length=length, max_points=max_points)
    return certify_paths(length, min_length=length, max_points=max_points)


def _cmd_sweep(args: argparse.Namespace) -> int:
    kind = RouteKind(args.kind)
    first, step, dim = (4, 2, "sequence") if kind is RouteKind.CYCLE else (2, 1, "case")
    tasks = [(kind.value, L, args.max_points) for L in range(first, args.sweep + 1, step)]
    if not tasks:
        logger.error("--sweep must be at least %d for %s sweeps", first, kind.value)
        return EXIT_INPUT
    logger.info("certifying %s solver on %d length(s)", kind.value, len(tasks))
    ds = xr.concat(_map_jobs(_sweep_one, tasks, args.jobs), dim=dim)
    bad = failures(ds)
    summary = {
        "kind": kind.value,
        "max_length": args.sweep,
        "cases": int(ds.sizes[dim]),
        "failures": len(bad),
        "failed": bad,
    }
    if args.json:
        sys.stdout.write(report_json(summary))
    else:
        print(f"{kind.value} sweep up to length {args.sweep}: {summary['cases']} cases, "
              f"{len(bad)} failure(s)")
        for line in bad:
            print(f"  - {line}")
    return EXIT_FAILED if bad else EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.sweep is not None:
        return _cmd_sweep(args)
    if args.instance is None:
        logger.error("oracle needs an instance file or --sweep")
        return EXIT_INPUT
    instance = read_instance(args.instance, convex=args.convex)
    kind = RouteKind(args.kind)
    ends = None
    if kind is RouteKind.PATH:
        if args.source is not None and args.target is not None:
            ends = instance.file_endpoints(args.source, args.target)
        else:
            ends = instance.endpoints
        if ends is None:
            logger.error("a path needs --from/--to or an 'endpoints:' line in the instance")
            return EXIT_INPUT
    result = enumerate_min(instance.points, kind, ends, max_points=args.max_points)
    labels = instance.labels or range(len(instance.points))
    example = None
    if result.optimal_routes:
        example = [labels[v] + 1 for v in result.optimal_routes[0].vertices]
    data = {
        "instance": args.instance,
        "kind": kind.value,
        "endpoints": None if ends is None else [labels[v] + 1 for v in ends],
        "min_crossings": result.min_crossings,
        "exists_1plane": result.exists_1plane,
        "all_optima_1plane": result.all_optima_1plane,
        "n_optima": result.n_optima,
        "example": example,
    }
    if args.json:
        sys.stdout.write(report_json(data))
    else:
        found = "none" if result.min_crossings is None else result.min_crossings
        print(f"{args.instance}: {kind.value} minimum crossings={found} "
              f"optima={result.n_optima} 1-plane exists={result.exists_1plane}")
    return EXIT_FAILED if result.min_crossings is None else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """The ``altroute`` argument parser."""
    parser = argparse.ArgumentParser(
        prog="altroute",
        description="1-plane Hamiltonian alternating cycles and paths on red/blue point sets",
    )
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    noise.add_argument("-q", "--quiet", action="store_true", help="only log warnings and errors")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--convex", action="store_true",
                       help="renumber point records in clockwise hull order")
        p.add_argument("--json", action="store_true", help="print a machine-readable report")

    def endpoint_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--from", dest="source", type=int, default=None, help="1-based start point")
        p.add_argument("--to", dest="target", type=int, default=None, help="1-based end point")

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument("--family", choices=FAMILIES, default="random")
    gen.add_argument("-n", type=int, default=3, help="points per colour")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--pattern", default=None, help="run pattern for the runs family, e.g. R5B5")
    gen.add_argument("--hull-color", choices=("R", "B"), default="R",
                     help="hull colour for the nested family")
    gen.add_argument("--out", default=None, help="output file [default: stdout]")

    for kind in RouteKind:
        p = sub.add_parser(kind.value, help=f"build a {kind.value} and verify it")
        p.add_argument("instances", nargs="+", help="instance file(s)")
        instance_options(p)
        if kind is RouteKind.PATH:
            endpoint_options(p)
        p.add_argument("--out", default=None, help="write the route file here")
        p.add_argument("--svg", default=None, help="write a drawing here")
        p.add_argument("--jobs", type=int, default=1, help="solve instances in parallel")

    check = sub.add_parser("check", help="verify a route file against an instance")
    check.add_argument("instance")
    check.add_argument("route")
    instance_options(check)

    oracle = sub.add_parser("oracle", help="exhaustive optimum for small instances")
    oracle.add_argument("instance", nargs="?", default=None)
    instance_options(oracle)
    endpoint_options(oracle)
    oracle.add_argument("--kind", choices=[k.value for k in RouteKind], default="cycle")
    oracle.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    oracle.add_argument("--sweep", type=int, default=None, metavar="L",
                        help="certify the convex solvers on every sequence up to length L")
    oracle.add_argument("--jobs", type=int, default=1, help="sweep lengths in parallel")

    svg = sub.add_parser("svg", help="draw an instance and optionally a route")
    svg.add_argument("instance")
    svg.add_argument("route", nargs="?", default=None)
    svg.add_argument("--convex", action="store_true",
                     help="renumber point records in clockwise hull order")
    svg.add_argument("--out", required=True, help="output SVG file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code.

    0 when every requested verification passes, 1 when one fails, 2 on bad
    input and 3 when a construction assumption breaks.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "svg":
            return _cmd_svg(args)
        return _cmd_solve(args, RouteKind(args.command))
    except InternalError as e:
        logger.error("internal error: %s", e)
        return EXIT_INTERNAL
    except (AltrouteError, OSError) as e:
        logger.error("%s", e)
        return EXIT_INPUT
