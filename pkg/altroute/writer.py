"""Writing instance files, route files and JSON reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .model import BicoloredSet
    from .routes import AltRoute, RouteReport

ROUTE_LINE_WIDTH = 20


def serialize(S: BicoloredSet, endpoints: tuple[int, int] | None = None) -> str:
    """
    Render a set in the instance file format.

    Parameters
    ----------
    S : BicoloredSet
        Convex sets are written as ``convex: ...``, others as ``x y color`` lines.
    endpoints : (int, int), optional
        0-based endpoints, written 1-based on an ``endpoints:`` line.

    Returns
    -------
    str
        Text ending with a newline; :func:`altroute.reader.parse` reads it back.
    """
    lines = []
    if endpoints is not None:
        lines.append(f"endpoints: {endpoints[0] + 1} {endpoints[1] + 1}")
    if S.is_convex:
        lines.append(f"convex: {S.sequence}")
    else:
        lines.extend(f"{p.x} {p.y} {p.color.value}" for p in S.points)
    return "\n".join(lines) + "\n"


def write_instance(
    S: BicoloredSet, path: str | Path, *, endpoints: tuple[int, int] | None = None
) -> None:
    """Write :func:`serialize` output to ``path``."""
    Path(path).write_text(serialize(S, endpoints))


def format_route(route: AltRoute) -> str:
    """Route file text: the kind header, then 1-based indices, twenty per line."""
    idx = [str(v + 1) for v in route.vertices]
    rows = [" ".join(idx[k : k + ROUTE_LINE_WIDTH]) for k in range(0, len(idx), ROUTE_LINE_WIDTH)]
    return "\n".join([route.kind.value, *rows]) + "\n"


def write_route(route: AltRoute, path: str | Path) -> None:
    """Write :func:`format_route` output to ``path``."""
    Path(path).write_text(format_route(route))


def report_json(report: RouteReport | dict[str, Any], *, instance: str | None = None) -> str:
    """
    Canonical JSON for a verification report.

    Keys are sorted and the layout is fixed, so identical reports always give
    identical bytes.
    """
    data = report if isinstance(report, dict) else report.to_dict(instance)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
