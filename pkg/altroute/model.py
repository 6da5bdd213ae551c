"""Bicoloured point sets: runs, bridges, balance partitions and special configurations."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property

import numpy as np
import xarray as xr

from ._errors import PreconditionViolated
from .geometry import (
    Color,
    ColoredPoint,
    Direction,
    Hull,
    assert_general_position,
    convex_hull,
    radial_order,
)
from .transforms import circle_coords

logger = logging.getLogger(__name__)


class PositionMode(StrEnum):
    GENERAL = "general"
    CONVEX = "convex"


@dataclass(frozen=True, slots=True)
class Run:
    """A maximal block of same-coloured hull points.

    ``first`` and ``last`` are the run's limits in clockwise boundary order.
    """

    color: Color
    first: int
    last: int
    size: int


@dataclass(frozen=True)
class RunStructure:
    """Runs of the hull boundary in clockwise order.

    Attributes
    ----------
    runs : tuple of Run
    red_count, blue_count : int
        r(S) and b(S).
    bridges : tuple of (int, int)
        Bichromatic hull edges ``(u, v)`` with ``v`` clockwise after ``u``.
    """

    runs: tuple[Run, ...]
    red_count: int
    blue_count: int
    bridges: tuple[tuple[int, int], ...]

    def count(self, color: Color) -> int:
        return self.red_count if color is Color.RED else self.blue_count


@dataclass(frozen=True)
class Partition:
    """Split of S minus ``center`` at the first balance point of a radial sweep.

    ``s1`` holds the radial points before ``p_i_plus_1``; ``s2`` starts with it.
    Both are listed in sweep order.
    """

    center: int
    direction: Direction
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    p_i: int
    p_i_plus_1: int


@dataclass(frozen=True)
class ImmediateNeighbor:
    """The first radial point already has the colour opposite to the center."""

    center: int
    direction: Direction
    point: int


class BicoloredSet:
    """An immutable set of red and blue points.

    Use :meth:`from_points` for points in general position and
    :meth:`from_sequence` for a convex set given by its clockwise colour string.
    In convex mode every point is a hull vertex and index order is clockwise
    boundary order; coordinates are only synthesised on demand.
    """

    def __init__(
        self,
        colors: Sequence[Color],
        mode: PositionMode,
        points: Sequence[ColoredPoint] | None = None,
    ) -> None:
        if not colors:
            msg = "a bicoloured set needs at least one point"
            raise PreconditionViolated(msg)
        self.colors: tuple[Color, ...] = tuple(colors)
        self.mode = PositionMode(mode)
        self._points = tuple(points) if points is not None else None
        self.signs = np.fromiter((c.sign for c in self.colors), dtype=np.int8, count=len(colors))
        if self.mode is PositionMode.GENERAL:
            if self._points is None:
                msg = "general-position sets need coordinates"
                raise PreconditionViolated(msg)
            self.hull = convex_hull(self._points)
            self.boundary: tuple[int, ...] = tuple(reversed(self.hull.vertices))
        else:
            h = len(self.colors)
            self.boundary = tuple(range(h))
            self.hull = Hull((0, *range(h - 1, 0, -1)) if h > 1 else (0,))
        self.run_structure = _compute_runs(self.colors, self.boundary)
        self.run_ids = _run_ids(len(self.colors), self.boundary, self.run_structure)

    @classmethod
    def from_points(cls, points: Iterable[ColoredPoint], *, check: bool = True) -> BicoloredSet:
        """Build a general-position set, rejecting collinear triples when ``check``."""
        pts = tuple(points)
        if check:
            assert_general_position(pts)
        return cls([p.color for p in pts], PositionMode.GENERAL, pts)

    @classmethod
    def from_sequence(cls, colors: Iterable[Color | str]) -> BicoloredSet:
        """Build a convex set from its clockwise colour sequence, e.g. ``"RRBB"``."""
        return cls([Color(c) for c in colors], PositionMode.CONVEX)

    def __len__(self) -> int:
        return len(self.colors)

    def __repr__(self) -> str:
        if self.mode is PositionMode.CONVEX and len(self) <= 40:
            return f"BicoloredSet.from_sequence({self.sequence!r})"
        return f"<BicoloredSet mode={self.mode.value} red={self.n_red} blue={self.n_blue}>"

    @cached_property
    def points(self) -> tuple[ColoredPoint, ...]:
        """Coordinates; synthesised clockwise on an integer circle in convex mode."""
        if self._points is not None:
            return self._points
        coords = circle_coords(len(self.colors))
        return tuple(ColoredPoint(x, y, c) for (x, y), c in zip(coords, self.colors))

    @property
    def is_convex(self) -> bool:
        return self.mode is PositionMode.CONVEX

    @property
    def sequence(self) -> str:
        return "".join(c.value for c in self.colors)

    @cached_property
    def n_red(self) -> int:
        return int(np.count_nonzero(self.signs > 0))

    @cached_property
    def n_blue(self) -> int:
        return len(self.colors) - self.n_red

    def count(self, color: Color) -> int:
        return self.n_red if color is Color.RED else self.n_blue

    @property
    def is_balanced(self) -> bool:
        return self.n_red == self.n_blue

    @property
    def color_counts(self) -> dict[Color, int]:
        return {Color.RED: self.n_red, Color.BLUE: self.n_blue}

    @cached_property
    def hull_positions(self) -> dict[int, int]:
        """Map each hull vertex to its position in clockwise boundary order."""
        return {v: k for k, v in enumerate(self.boundary)}

    def on_hull(self, index: int) -> bool:
        return self.is_convex or index in self.hull_positions

    def subset(self, indices: Iterable[int]) -> BicoloredSet:
        """Restrict to ``indices`` (kept in the given order, re-indexed from 0).

        Convex sets stay convex when the indices are increasing.
        """
        idx = list(indices)
        if self.is_convex and all(i < j for i, j in zip(idx, idx[1:])):
            return BicoloredSet([self.colors[i] for i in idx], PositionMode.CONVEX)
        pts = self.points
        return BicoloredSet([self.colors[i] for i in idx], PositionMode.GENERAL,
                            [pts[i] for i in idx])

    def boundary_neighbors(self, index: int) -> tuple[int, int]:
        """Return the (clockwise-previous, clockwise-next) hull neighbours."""
        if self.is_convex:
            h = len(self.colors)
            return (index - 1) % h, (index + 1) % h
        ccw_prev, ccw_next = self.hull.neighbors(index)
        return ccw_next, ccw_prev

    def to_dataset(self) -> xr.Dataset:
        """Export the set as an :class:`xarray.Dataset` along dimension ``point``.

        The point coordinate holds 1-based indices. Hull membership and run ids
        are included; the dataset attrs carry the mode, colour counts and r/b.
        """
        pts = self.points
        on_hull = np.zeros(len(self), dtype=bool)
        on_hull[list(self.boundary)] = True
        return xr.Dataset(
            {
                "x": ("point", np.array([p.x for p in pts], dtype=np.int64)),
                "y": ("point", np.array([p.y for p in pts], dtype=np.int64)),
                "color": ("point", np.array([c.value for c in self.colors], dtype=str)),
                "on_hull": ("point", on_hull),
                "run_id": ("point", self.run_ids.copy()),
            },
            coords={"point": np.arange(1, len(self) + 1)},
            attrs={
                "mode": self.mode.value,
                "n_red": self.n_red,
                "n_blue": self.n_blue,
                "red_runs": self.run_structure.red_count,
                "blue_runs": self.run_structure.blue_count,
            },
        )

    @classmethod
    def from_dataset(cls, ds: xr.Dataset) -> BicoloredSet:
        """Rebuild a set from :meth:`to_dataset` output."""
        colors = [Color(str(c)) for c in ds["color"].values]
        if ds.attrs.get("mode") == PositionMode.CONVEX.value:
            return cls(colors, PositionMode.CONVEX)
        xs = [int(v) for v in ds["x"].values]
        ys = [int(v) for v in ds["y"].values]
        return cls.from_points(ColoredPoint(x, y, c) for x, y, c in zip(xs, ys, colors))


def _compute_runs(colors: Sequence[Color], boundary: Sequence[int]) -> RunStructure:
    h = len(boundary)
    first_color = colors[boundary[0]]
    if all(colors[i] is first_color for i in boundary):
        run = Run(first_color, boundary[0], boundary[-1], h)
        red = 1 if first_color is Color.RED else 0
        return RunStructure((run,), red, 1 - red, ())
    # rotate so the walk starts at a run limit
    start = next(k for k in range(h) if colors[boundary[k]] is not colors[boundary[k - 1]])
    walk = [boundary[(start + k) % h] for k in range(h)]
    runs: list[Run] = []
    bridges: list[tuple[int, int]] = []
    head = 0
    for k in range(1, h + 1):
        if k == h or colors[walk[k]] is not colors[walk[head]]:
            runs.append(Run(colors[walk[head]], walk[head], walk[k - 1], k - head))
            bridges.append((walk[k - 1], walk[k % h]))
            head = k
    # list bridges starting from the lowest boundary position, as a reader would scan
    pos = {v: k for k, v in enumerate(boundary)}
    bridges.sort(key=lambda e: pos[e[0]])
    runs.sort(key=lambda r: pos[r.first])
    red = sum(1 for r in runs if r.color is Color.RED)
    return RunStructure(tuple(runs), red, len(runs) - red, tuple(bridges))


def _run_ids(n: int, boundary: Sequence[int], runs: RunStructure) -> np.ndarray:
    ids = np.full(n, -1, dtype=np.int64)
    pos = {v: k for k, v in enumerate(boundary)}
    h = len(boundary)
    for rid, run in enumerate(runs.runs):
        k = pos[run.first]
        for step in range(run.size):
            ids[boundary[(k + step) % h]] = rid
    return ids


def run_structure(S: BicoloredSet) -> RunStructure:
    """Return the runs, r(S), b(S) and bridges of S (computed at construction)."""
    return S.run_structure


def scan_partition(
    order: Sequence[int], colors: Sequence[Color], center: int, direction: Direction
) -> Partition | ImmediateNeighbor:
    """Split a radial order at the first point where the balance drops to zero.

    The balance counts the center, so it starts at 2 when the first radial point
    shares the center's colour.
    """
    c = colors[center]
    if colors[order[0]] is not c:
        return ImmediateNeighbor(center, direction, order[0])
    delta = 1
    for k, q in enumerate(order):
        delta += 1 if colors[q] is c else -1
        if delta == 0:
            return Partition(center, direction, tuple(order[:k]), tuple(order[k:]), order[k - 1], q)
    msg = "radial balance never reaches zero; colour counts do not allow a partition"
    raise PreconditionViolated(msg)


def partition_around(
    S: BicoloredSet, center: int, direction: Direction | str = Direction.CCW
) -> Partition | ImmediateNeighbor:
    """Partition S minus ``center`` by the radial balance sweep around ``center``.

    Requires ``center`` on the hull and either equal colour counts, or one extra
    point of the center's colour with the last radial point of that colour.
    """
    direction = Direction(direction)
    if not S.on_hull(center):
        msg = f"point {center + 1} is not on the hull boundary"
        raise PreconditionViolated(msg)
    order = radial_indices(S, center, direction)
    _check_partition_counts(S.count(S.colors[center]), S.count(S.colors[center].other),
                            S.colors[order[-1]] if order else None, S.colors[center])
    return scan_partition(order, S.colors, center, direction)


def radial_indices(S: BicoloredSet, center: int, direction: Direction) -> list[int]:
    """Radial order of S minus ``center``; in convex mode this is the circular order."""
    h = len(S)
    if S.is_convex:
        if direction is Direction.CCW:
            return [(center - k) % h for k in range(1, h)]
        return [(center + k) % h for k in range(1, h)]
    pts = S.points
    others = [i for i in range(h) if i != center]
    local = radial_order([pts[i] for i in others], pts[center], direction)
    return [others[k] for k in local]


def _check_partition_counts(
    same: int, other: int, last_color: Color | None, center_color: Color
) -> None:
    if same == other:
        return
    if same == other + 1 and last_color is center_color:
        return
    msg = (
        f"partition needs balanced colours or one extra {center_color.name.lower()} point "
        f"ending the sweep (got {same} vs {other})"
    )
    raise PreconditionViolated(msg)


def is_special(S: BicoloredSet, r: int, b: int) -> bool:
    """Return True iff (S, r, b) is a special configuration.

    All three conditions must hold: both hull neighbours of r share r's colour
    and both of b's share b's colour, both sweeps around r end at b, and both
    sweeps around b end at r.
    """
    _check_special_args(S, r, b)
    if not all(S.colors[q] is S.colors[r] for q in S.boundary_neighbors(r)):
        return False
    if not all(S.colors[q] is S.colors[b] for q in S.boundary_neighbors(b)):
        return False
    for center, target in ((r, b), (b, r)):
        for direction in Direction:
            part = partition_around(S, center, direction)
            if not isinstance(part, Partition) or part.p_i_plus_1 != target:
                return False
    return True


def _check_special_args(S: BicoloredSet, r: int, b: int) -> None:
    if not S.is_balanced:
        msg = "special configurations are only defined for equal colour counts"
        raise PreconditionViolated(msg)
    if S.colors[r] is S.colors[b]:
        msg = f"points {r + 1} and {b + 1} have the same colour"
        raise PreconditionViolated(msg)
    if not (S.on_hull(r) and S.on_hull(b)):
        msg = "both endpoints must lie on the hull boundary"
        raise PreconditionViolated(msg)


def lower_bound(S: BicoloredSet) -> int:
    """n - r(S): no Hamiltonian alternating cycle on a convex balanced set does better."""
    return S.n_red - S.run_structure.red_count


def cycle_bound(S: BicoloredSet) -> int:
    """n - max{r(S), b(S)}, the crossing guarantee for a 1-plane alternating cycle."""
    rs = S.run_structure
    return S.n_red - max(rs.red_count, rs.blue_count)


def path_bound(S: BicoloredSet, a: int, b: int) -> int:
    """Crossing guarantee for a 1-plane alternating path from ``a`` to ``b``.

    n - r(S) for opposite-coloured endpoints on a balanced set, n - (runs of the
    minority colour) for two endpoints of the majority colour.
    """
    rs = S.run_structure
    ca, cb = S.colors[a], S.colors[b]
    if ca is not cb:
        if not S.is_balanced:
            msg = "opposite-coloured endpoints need equal colour counts"
            raise PreconditionViolated(msg)
        return S.n_red - rs.red_count
    minority = ca.other
    if S.count(ca) != S.count(minority) + 1:
        msg = f"two {ca.name.lower()} endpoints need exactly one extra {ca.name.lower()} point"
        raise PreconditionViolated(msg)
    return S.count(minority) - rs.count(minority)
