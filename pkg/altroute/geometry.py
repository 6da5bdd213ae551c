"""Exact planar predicates on integer points.

All predicates use Python integers, so coordinates of any size (in particular
anything that fits in 64 bits) are handled without rounding.
"""

from __future__ import annotations

import functools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

from ._errors import DegenerateInput, PointInsideHull, PreconditionViolated


class Color(StrEnum):
    """Point colour, serialised as ``R`` or ``B``."""

    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> Color:
        return Color.BLUE if self is Color.RED else Color.RED

    @property
    def sign(self) -> int:
        """+1 for red, -1 for blue; the balance weight used by partitions."""
        return 1 if self is Color.RED else -1


class Direction(StrEnum):
    """Rotational sense of a sweep."""

    CW = "cw"
    CCW = "ccw"

    @property
    def reverse(self) -> Direction:
        return Direction.CCW if self is Direction.CW else Direction.CW


@dataclass(frozen=True, slots=True)
class ColoredPoint:
    """A point with integer coordinates and a colour."""

    x: int
    y: int
    color: Color


@dataclass(frozen=True, slots=True)
class Hull:
    """Indices of convex hull vertices in counterclockwise order."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, index: object) -> bool:
        return index in self.vertices

    def neighbors(self, index: int) -> tuple[int, int]:
        """Return the (clockwise, counterclockwise) neighbours of a hull vertex."""
        k = self.vertices.index(index)
        h = len(self.vertices)
        return self.vertices[(k - 1) % h], self.vertices[(k + 1) % h]

    def adjacent(self, a: int, b: int) -> bool:
        if a not in self.vertices or b not in self.vertices:
            return False
        return b in self.neighbors(a)


def orientation(a: ColoredPoint, b: ColoredPoint, c: ColoredPoint) -> int:
    """Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (det > 0) - (det < 0)


def segments_cross(
    s1: tuple[ColoredPoint, ColoredPoint], s2: tuple[ColoredPoint, ColoredPoint]
) -> bool:
    """Return True iff the segments share a point interior to both.

    Shared endpoints do not count. Collinear overlaps cannot occur in general
    position and are reported as not crossing.
    """
    a, b = s1
    c, d = s2
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o3 * o4 < 0


def convex_hull(points: Sequence[ColoredPoint], *, general_position: bool = True) -> Hull:
    """Compute the convex hull with Andrew's monotone chain.

    Parameters
    ----------
    points : sequence of ColoredPoint
        At least one point, no duplicate coordinates.
    general_position : bool, default True
        Raise DegenerateInput when a collinear triple is met while building the
        chains. With False, collinear boundary points are dropped.

    Returns
    -------
    Hull
        Vertex indices in counterclockwise order.
    """
    if not points:
        msg = "convex_hull needs at least one point"
        raise PreconditionViolated(msg)
    order = sorted(range(len(points)), key=lambda i: (points[i].x, points[i].y))
    for i, j in zip(order, order[1:]):
        if points[i].x == points[j].x and points[i].y == points[j].y:
            msg = f"duplicate point ({points[i].x}, {points[i].y})"
            raise DegenerateInput(msg)
    if len(order) <= 2:
        return Hull(tuple(order))

    def chain(indices: Sequence[int]) -> list[int]:
        out: list[int] = []
        for k in indices:
            while len(out) >= 2:
                turn = orientation(points[out[-2]], points[out[-1]], points[k])
                if turn > 0:
                    break
                if turn == 0 and general_position:
                    msg = (
                        "collinear points "
                        f"{_fmt(points[out[-2]])}, {_fmt(points[out[-1]])}, {_fmt(points[k])}"
                    )
                    raise DegenerateInput(msg)
                out.pop()
            out.append(k)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    return Hull(tuple(lower[:-1] + upper[:-1]))


def assert_general_position(points: Sequence[ColoredPoint]) -> None:
    """Raise DegenerateInput if any three points are collinear or two coincide.

    Every point hashes the reduced directions towards the points after it, so
    the check is quadratic rather than cubic.
    """
    for i, p in enumerate(points):
        seen: dict[tuple[int, int], int] = {}
        for j in range(i + 1, len(points)):
            q = points[j]
            dx, dy = q.x - p.x, q.y - p.y
            if dx == 0 and dy == 0:
                msg = f"duplicate point {_fmt(p)}"
                raise DegenerateInput(msg)
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                other = points[seen[(dx, dy)]]
                msg = f"collinear points {_fmt(p)}, {_fmt(other)}, {_fmt(q)}"
                raise DegenerateInput(msg)
            seen[(dx, dy)] = j


def radial_order(
    points: Sequence[ColoredPoint],
    around: ColoredPoint,
    direction: Direction | str = Direction.CCW,
) -> list[int]:
    """Order points by angle as seen from a hull vertex.

    ``around`` must be a vertex of the hull of ``points`` plus itself, so every
    other point lies in an open half-plane through it. The sweep starts at the
    hull edge, so the first point in counterclockwise order has all others to
    its left. Points equal to ``around`` are skipped.

    Raises
    ------
    DegenerateInput
        If two points are collinear with ``around``.
    PreconditionViolated
        If ``around`` is not on the hull boundary.
    """
    direction = Direction(direction)
    idx = [i for i, p in enumerate(points) if (p.x, p.y) != (around.x, around.y)]

    def compare(i: int, j: int) -> int:
        turn = orientation(around, points[i], points[j])
        if turn == 0:
            msg = f"points {_fmt(points[i])} and {_fmt(points[j])} are collinear with {_fmt(around)}"
            raise DegenerateInput(msg)
        return -turn

    idx.sort(key=functools.cmp_to_key(compare))
    if len(idx) >= 2:
        # The comparison is only a total order inside a half-plane.
        ok = all(orientation(around, points[i], points[j]) > 0 for i, j in zip(idx, idx[1:]))
        if not ok or orientation(around, points[idx[0]], points[idx[-1]]) <= 0:
            msg = f"{_fmt(around)} is not on the convex hull boundary"
            raise PreconditionViolated(msg)
    if direction is Direction.CW:
        idx.reverse()
    return idx


def visible_points(points: Sequence[ColoredPoint], x: ColoredPoint) -> list[int]:
    """Hull vertices of ``points`` visible from the external point ``x``.

    A vertex p is visible when the segment xp does not cross CH(points). The
    result is the contiguous boundary arc in counterclockwise order.

    Raises
    ------
    PointInsideHull
        If ``x`` lies inside or on the hull.
    DegenerateInput
        If ``x`` is collinear with a hull edge.
    """
    hull = convex_hull(points)
    vs = hull.vertices
    if len(vs) == 1:
        if (points[vs[0]].x, points[vs[0]].y) == (x.x, x.y):
            msg = f"{_fmt(x)} coincides with the only point"
            raise PointInsideHull(msg)
        return [vs[0]]
    if len(vs) == 2:
        if orientation(points[vs[0]], points[vs[1]], x) == 0:
            _raise_on_line(points[vs[0]], points[vs[1]], x)
        return list(vs)
    h = len(vs)
    facing = []
    for k in range(h):
        turn = orientation(points[vs[k]], points[vs[(k + 1) % h]], x)
        if turn == 0:
            _raise_on_line(points[vs[k]], points[vs[(k + 1) % h]], x)
        facing.append(turn < 0)
    if not any(facing):
        msg = f"{_fmt(x)} lies inside the convex hull"
        raise PointInsideHull(msg)
    # edge k runs from vs[k] to vs[k+1]; start at the first facing edge after a non-facing one
    start = next(k for k in range(h) if facing[k] and not facing[k - 1])
    arc = [vs[start]]
    k = start
    while facing[k]:
        k = (k + 1) % h
        arc.append(vs[k])
    return arc


def tangents_from(points: Sequence[ColoredPoint], x: ColoredPoint) -> tuple[int, int]:
    """The two hull vertices bounding the arc visible from ``x``.

    Returns the first and last vertex of :func:`visible_points` (counterclockwise).
    """
    arc = visible_points(points, x)
    return arc[0], arc[-1]


def _raise_on_line(a: ColoredPoint, b: ColoredPoint, x: ColoredPoint) -> None:
    if min(a.x, b.x) <= x.x <= max(a.x, b.x) and min(a.y, b.y) <= x.y <= max(a.y, b.y):
        msg = f"{_fmt(x)} lies on the hull boundary"
        raise PointInsideHull(msg)
    msg = f"{_fmt(x)} is collinear with {_fmt(a)} and {_fmt(b)}"
    raise DegenerateInput(msg)


def _fmt(p: ColoredPoint) -> str:
    return f"({p.x}, {p.y})"
