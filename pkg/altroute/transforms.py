"""Coordinate utilities: synthetic circle positions and drawing-canvas mapping."""

from __future__ import annotations

from collections.abc import Sequence
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .geometry import ColoredPoint

MIN_RADIUS = 2**20


def circle_radius(h: int) -> int:
    """Radius used for ``h`` synthetic points.

    Grows quadratically with ``h`` so rounding to integers keeps every turn strict.
    """
    return max(MIN_RADIUS, 64 * h * h)


def circle_coords(h: int) -> list[tuple[int, int]]:
    """
    Integer coordinates of ``h`` points placed clockwise on a circle.

    Parameters
    ----------
    h : int
        Number of points.

    Returns
    -------
    list of (int, int)
        Point ``k`` sits at angle ``-2*pi*k/h`` (clockwise from the positive x axis),
        rounded to the nearest integer.

    Notes
    -----
    Only rendering and general-position code paths look at these coordinates;
    convex-mode combinatorics work on indices.
    """
    if h <= 0:
        return []
    radius = circle_radius(h)
    theta = -2.0 * np.pi * np.arange(h) / h
    xs = np.rint(radius * np.cos(theta)).astype(np.int64)
    ys = np.rint(radius * np.sin(theta)).astype(np.int64)
    return [(int(x), int(y)) for x, y in zip(xs, ys)]


def to_canvas(
    points: Sequence[ColoredPoint],
    *,
    size: float = 480.0,
    margin: float = 24.0,
) -> np.ndarray:
    """
    Map integer points into a square drawing canvas.

    Parameters
    ----------
    points : sequence of ColoredPoint
    size : float, default 480.0
        Width and height of the canvas.
    margin : float, default 24.0
        Empty border kept on every side.

    Returns
    -------
    np.ndarray
        Float array of shape ``(n, 2)``. The aspect ratio is preserved and the
        drawing is centred; the y axis keeps pointing up.
    """
    if not points:
        return np.zeros((0, 2))
    # exact integer extents first, then one float scale
    min_x = min(p.x for p in points)
    max_x = max(p.x for p in points)
    min_y = min(p.y for p in points)
    max_y = max(p.y for p in points)
    span = max(max_x - min_x, max_y - min_y, 1)
    scale = (size - 2 * margin) / span
    out = np.empty((len(points), 2))
    out[:, 0] = [(p.x - min_x) * scale for p in points]
    out[:, 1] = [(p.y - min_y) * scale for p in points]
    out[:, 0] += margin + ((size - 2 * margin) - (max_x - min_x) * scale) / 2
    out[:, 1] += margin + ((size - 2 * margin) - (max_y - min_y) * scale) / 2
    return out
