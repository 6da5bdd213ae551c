"""Reproducible instance families."""

from __future__ import annotations

import logging
import math
import re
from typing import Any

import numpy as np

from ._errors import InvalidPattern, PreconditionViolated
from .geometry import Color, ColoredPoint
from .model import BicoloredSet
from .transforms import circle_coords, circle_radius

logger = logging.getLogger(__name__)

_RUN = re.compile(r"([RB])(\d*)")
_PATTERN = re.compile(r"((?:[RB]\d*)+)(?:\*(\d+))?")
MAX_RESAMPLES = 10_000


def _direction(dx: int, dy: int) -> tuple[int, int]:
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        return -dx, -dy
    return dx, dy


class _GeneralPositionPool:
    """Points accepted one at a time, refusing duplicates and collinear triples."""

    def __init__(self) -> None:
        self.points: list[ColoredPoint] = []
        self._dirs: list[set[tuple[int, int]]] = []

    def try_add(self, p: ColoredPoint) -> bool:
        dirs = []
        for q, seen in zip(self.points, self._dirs):
            if q.x == p.x and q.y == p.y:
                return False
            d = _direction(p.x - q.x, p.y - q.y)
            if d in seen:
                return False
            dirs.append(d)
        for d, seen in zip(dirs, self._dirs):
            seen.add(d)
        self.points.append(p)
        self._dirs.append(set(dirs))
        return True


def _colors(n_red: int, n_blue: int | None) -> tuple[int, int]:
    n_blue = n_red if n_blue is None else n_blue
    if n_red < 0 or n_blue < 0 or n_red + n_blue == 0:
        msg = f"need a positive number of points (got {n_red} red, {n_blue} blue)"
        raise PreconditionViolated(msg)
    return n_red, n_blue


def random_general(
    n_red: int,
    n_blue: int | None = None,
    *,
    seed: int = 0,
    bbox: int | None = None,
) -> BicoloredSet:
    """
    Random points in general position with integer coordinates.

    Parameters
    ----------
    n_red : int
    n_blue : int, optional
        Defaults to ``n_red``.
    seed : int, default 0
    bbox : int, optional
        Coordinates are drawn from ``[0, bbox)``. Defaults to a box that grows
        quadratically with the number of points, so rejections stay rare.

    Returns
    -------
    BicoloredSet
        Colours are shuffled over the points. Candidates that would repeat a
        point or create a collinear triple are redrawn.
    """
    n_red, n_blue = _colors(n_red, n_blue)
    total = n_red + n_blue
    side = bbox if bbox is not None else max(1024, 16 * total * total)
    rng = np.random.default_rng(seed)
    colors = rng.permutation([Color.RED.value] * n_red + [Color.BLUE.value] * n_blue)
    pool = _GeneralPositionPool()
    rejected = 0
    for c in colors:
        while True:
            x, y = (int(v) for v in rng.integers(0, side, size=2))
            if pool.try_add(ColoredPoint(x, y, Color(str(c)))):
                break
            rejected += 1
            if rejected > MAX_RESAMPLES:
                msg = f"could not place {total} points in general position inside a {side} box"
                raise PreconditionViolated(msg)
    logger.debug("random_general: %d points, %d redraws", total, rejected)
    return BicoloredSet.from_points(pool.points, check=False)


def convex_random(n_red: int, n_blue: int | None = None, *, seed: int = 0) -> BicoloredSet:
    """A convex set whose clockwise colour sequence is a random permutation."""
    n_red, n_blue = _colors(n_red, n_blue)
    rng = np.random.default_rng(seed)
    seq = rng.permutation([Color.RED.value] * n_red + [Color.BLUE.value] * n_blue)
    return BicoloredSet.from_sequence("".join(str(c) for c in seq))


def expand_pattern(pattern: str) -> str:
    """
    Expand a run-length pattern such as ``R5B5`` or ``R1B1*25``.

    A letter without a count stands for one point; ``*k`` repeats the whole
    pattern ``k`` times.

    Raises
    ------
    InvalidPattern
        On anything else, or on zero counts.
    """
    text = pattern.replace(" ", "").upper()
    match = _PATTERN.fullmatch(text)
    if match is None:
        msg = f"invalid run pattern {pattern!r}; expected e.g. R5B5 or R1B1*25"
        raise InvalidPattern(msg)
    body, repeat = match.groups()
    pieces = []
    for letter, count in _RUN.findall(body):
        k = int(count) if count else 1
        if k == 0:
            msg = f"zero-length run in pattern {pattern!r}"
            raise InvalidPattern(msg)
        pieces.append(letter * k)
    times = int(repeat) if repeat else 1
    if times == 0:
        msg = f"pattern {pattern!r} repeats zero times"
        raise InvalidPattern(msg)
    return "".join(pieces) * times


def runs(pattern: str) -> BicoloredSet:
    """Convex set from a run-length pattern; ``runs("R2B2")`` is ``RRBB``."""
    return BicoloredSet.from_sequence(expand_pattern(pattern))


def alternating(n: int) -> BicoloredSet:
    """Convex ``RBRB...`` with ``n`` points of each colour."""
    if n < 1:
        msg = f"need n >= 1, got {n}"
        raise PreconditionViolated(msg)
    return BicoloredSet.from_sequence("RB" * n)


def nested(hull_color: Color | str, n: int, *, seed: int = 0) -> BicoloredSet:
    """
    ``n`` points of ``hull_color`` on a convex polygon, ``n`` of the other colour inside.

    The inner points are drawn from a disk of a quarter of the polygon's
    radius, which lies inside the polygon for every ``n >= 3``.
    """
    hull_color = Color(hull_color)
    if n < 3:
        msg = f"a nested instance needs n >= 3 to have an interior, got {n}"
        raise PreconditionViolated(msg)
    rng = np.random.default_rng(seed)
    pool = _GeneralPositionPool()
    for x, y in circle_coords(n):
        if not pool.try_add(ColoredPoint(x, y, hull_color)):
            msg = "synthetic hull points are not in general position"
            raise PreconditionViolated(msg)
    inner = circle_radius(n) // 4
    placed = 0
    rejected = 0
    while placed < n:
        x, y = (int(v) for v in rng.integers(-inner, inner + 1, size=2))
        if x * x + y * y < inner * inner and pool.try_add(ColoredPoint(x, y, hull_color.other)):
            placed += 1
            continue
        rejected += 1
        if rejected > MAX_RESAMPLES:
            msg = "could not place the inner points in general position"
            raise PreconditionViolated(msg)
    return BicoloredSet.from_points(pool.points, check=False)


FAMILIES = ("random", "convex", "runs", "nested", "alternating")


def generate(family: str, **options: Any) -> BicoloredSet:
    """
    Dispatch to a generator by family name.

    Parameters
    ----------
    family : {'random', 'convex', 'runs', 'nested', 'alternating'}
    **options
        ``n`` (points per colour), ``seed``, ``pattern`` (runs), ``hull_color``
        (nested), ``bbox`` (random).
    """
    n = options.get("n", 3)
    seed = options.get("seed", 0)
    if family == "random":
        return random_general(n, seed=seed, bbox=options.get("bbox"))
    if family == "convex":
        return convex_random(n, seed=seed)
    if family == "runs":
        pattern = options.get("pattern") or f"R{n}B{n}"
        return runs(pattern)
    if family == "nested":
        return nested(options.get("hull_color", Color.RED), n, seed=seed)
    if family == "alternating":
        return alternating(n)
    msg = f"unknown family {family!r}; choose from {', '.join(FAMILIES)}"
    raise InvalidPattern(msg)
