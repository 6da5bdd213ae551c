"""Reading instance and route files."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from ._errors import ParseError, PreconditionViolated
from ._format_utils import CONVEX_PREFIX, ENDPOINTS_PREFIX, ROUTE_HEADERS, meaningful_lines
from .geometry import Color, ColoredPoint
from .model import BicoloredSet
from .routes import AltRoute, RouteKind

if TYPE_CHECKING:
    import xarray as xr

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """A parsed instance file.

    Attributes
    ----------
    points : BicoloredSet
    endpoints : (int, int), optional
        0-based indices from an ``endpoints:`` line, in the set's own indexing.
    labels : tuple of int, optional
        File index (0-based) of every point of ``points`` when the file's point
        list was reordered into clockwise convex order; ``None`` otherwise.
    """

    points: BicoloredSet
    endpoints: tuple[int, int] | None = None
    labels: tuple[int, ...] | None = None

    def to_file_indices(self, route: AltRoute) -> AltRoute:
        """Map a route over ``points`` back to the indices used in the file."""
        if self.labels is None:
            return route
        lab = self.labels
        crossings = None
        if route.crossings is not None:
            crossings = tuple(
                ((lab[a], lab[b]), (lab[c], lab[d])) for (a, b), (c, d) in route.crossings
            )
        return AltRoute(route.kind, tuple(lab[v] for v in route.vertices), crossings)

    def from_file_indices(self, route: AltRoute) -> AltRoute:
        """Map a route read against the file's numbering onto ``points``.

        Indices outside the file are passed through unchanged, so verification
        still reports them.
        """
        if self.labels is None:
            return route
        where = {orig: k for k, orig in enumerate(self.labels)}
        return AltRoute(route.kind, tuple(where.get(v, v) for v in route.vertices))

    def file_endpoints(self, a: int, b: int) -> tuple[int, int]:
        """Validate 1-based file endpoints and return them 0-based in set order."""
        n = len(self.points)
        for e in (a, b):
            if not 1 <= e <= n:
                msg = f"endpoint {e} outside 1..{n}"
                raise PreconditionViolated(msg)
        a, b = a - 1, b - 1
        if self.labels is not None:
            where = {orig: k for k, orig in enumerate(self.labels)}
            a, b = where[a], where[b]
        return a, b


def _column(raw: str, token: str) -> int:
    return raw.find(token) + 1 if token in raw else 1


def parse(text: str, *, convex: bool = False) -> Instance:
    """
    Parse an instance file.

    Parameters
    ----------
    text : str
        Either ``x y color`` records, one per line, or a single
        ``convex: RRBB`` line. An optional ``endpoints: i j`` line gives
        1-based path endpoints. ``#`` starts a comment.
    convex : bool, default False
        Force convex mode. Point records must then all lie on their hull and
        are renumbered in clockwise boundary order (see :attr:`Instance.labels`).

    Returns
    -------
    Instance

    Raises
    ------
    ParseError
        On malformed lines, with the offending line and column.
    DegenerateInput
        If the points are not in general position.
    """
    lines = text.splitlines()
    sequence: str | None = None
    points: list[ColoredPoint] = []
    endpoints: tuple[int, int] | None = None
    endpoints_line = 0

    for number, line in meaningful_lines(text):
        raw = lines[number - 1]
        lowered = line.lower()
        if lowered.startswith(ENDPOINTS_PREFIX):
            if endpoints is not None:
                raise ParseError("endpoints given twice", number)
            tokens = line[len(ENDPOINTS_PREFIX):].split()
            if len(tokens) != 2:
                raise ParseError("expected 'endpoints: i j'", number, _column(raw, ":") + 1)
            values = []
            for token in tokens:
                try:
                    values.append(int(token))
                except ValueError as e:
                    msg = f"endpoint {token!r} is not an integer"
                    raise ParseError(msg, number, _column(raw, token)) from e
            endpoints = (values[0], values[1])
            endpoints_line = number
        elif lowered.startswith(CONVEX_PREFIX):
            if sequence is not None or points:
                raise ParseError("a convex sequence must be the only data line", number)
            body = line[len(CONVEX_PREFIX):].strip()
            if not body:
                raise ParseError("empty convex sequence", number, len(raw.rstrip()) + 1)
            offset = raw.find(body)
            for k, ch in enumerate(body):
                if ch not in "RB":
                    msg = f"convex sequences may only contain R and B, found {ch!r}"
                    raise ParseError(msg, number, offset + k + 1)
            sequence = body
        else:
            if sequence is not None:
                raise ParseError("point records cannot follow a convex sequence", number)
            points.append(_parse_point(line, raw, number))

    if sequence is None and not points:
        raise ParseError("no points found", max(len(lines), 1))

    labels: tuple[int, ...] | None = None
    if sequence is not None:
        S = BicoloredSet.from_sequence(sequence)
    else:
        S = BicoloredSet.from_points(points)
        if convex:
            S, labels = _as_convex(S)

    if endpoints is not None:
        for e in endpoints:
            if not 1 <= e <= len(S):
                msg = f"endpoint {e} outside 1..{len(S)}"
                raise ParseError(msg, endpoints_line)
        a, b = endpoints[0] - 1, endpoints[1] - 1
        if labels is not None:
            where = {orig: k for k, orig in enumerate(labels)}
            a, b = where[a], where[b]
        endpoints = (a, b)
    logger.debug("parsed %d points (%s)", len(S), S.mode.value)
    return Instance(S, endpoints, labels)


def _parse_point(line: str, raw: str, number: int) -> ColoredPoint:
    tokens = line.split()
    if len(tokens) != 3:
        msg = f"expected 'x y color', got {len(tokens)} field(s)"
        raise ParseError(msg, number)
    xs, ys, cs = tokens
    coords = []
    for token in (xs, ys):
        try:
            coords.append(int(token))
        except ValueError as e:
            msg = f"coordinate {token!r} is not an integer"
            raise ParseError(msg, number, _column(raw, token)) from e
    if cs not in ("R", "B"):
        msg = f"colour must be R or B, got {cs!r}"
        raise ParseError(msg, number, raw.rfind(cs) + 1)
    return ColoredPoint(coords[0], coords[1], Color(cs))


def _as_convex(S: BicoloredSet) -> tuple[BicoloredSet, tuple[int, ...]]:
    if len(S.boundary) != len(S):
        inside = len(S) - len(S.boundary)
        msg = f"--convex needs every point on the hull; {inside} point(s) lie inside"
        raise PreconditionViolated(msg)
    labels = tuple(S.boundary)
    return BicoloredSet.from_sequence([S.colors[i] for i in labels]), labels


def read_instance(path: str | Path, *, convex: bool = False) -> Instance:
    """Read and parse an instance file (see :func:`parse`)."""
    return parse(Path(path).read_text(), convex=convex)


def parse_route(text: str) -> AltRoute:
    """
    Parse a route file: a ``cycle`` or ``path`` header and 1-based indices.

    Indices may span several lines. The returned route carries no crossing
    information.
    """
    kind: RouteKind | None = None
    vertices: list[int] = []
    lines = text.splitlines()
    for number, line in meaningful_lines(text):
        raw = lines[number - 1]
        tokens = line.split()
        if kind is None:
            head = tokens[0].lower()
            if head not in ROUTE_HEADERS:
                msg = f"route files start with 'cycle' or 'path', got {tokens[0]!r}"
                raise ParseError(msg, number, _column(raw, tokens[0]))
            kind = RouteKind(head)
            tokens = tokens[1:]
        for token in tokens:
            try:
                v = int(token)
            except ValueError as e:
                msg = f"vertex {token!r} is not an integer"
                raise ParseError(msg, number, _column(raw, token)) from e
            if v < 1:
                msg = f"vertex indices are 1-based, got {v}"
                raise ParseError(msg, number, _column(raw, token))
            vertices.append(v - 1)
    if kind is None:
        raise ParseError("empty route file", 1)
    if not vertices:
        raise ParseError("route has no vertices", len(lines))
    return AltRoute(kind, tuple(vertices))


def read_route(path: str | Path) -> AltRoute:
    """Read and parse a route file (see :func:`parse_route`)."""
    return parse_route(Path(path).read_text())


def open_instance_dataset(path: str | Path, *, convex: bool = False) -> xr.Dataset:
    """
    Open an instance file as an xarray Dataset.

    Parameters
    ----------
    path : str or Path
        Instance file.
    convex : bool, default False
        Force convex mode (see :func:`parse`).

    Returns
    -------
    xr.Dataset
        :meth:`BicoloredSet.to_dataset` output plus ``source`` and, when
        present, 1-based ``endpoints`` in the attrs.
    """
    instance = read_instance(path, convex=convex)
    ds = instance.points.to_dataset()
    ds.attrs["source"] = str(path)
    if instance.endpoints is not None:
        labels = instance.labels or range(len(instance.points))
        ds.attrs["endpoints"] = [labels[e] + 1 for e in instance.endpoints]
    return ds
