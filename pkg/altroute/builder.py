"""Recursive construction of 1-plane alternating paths and cycles in general position.

Subproblems are frozensets of point indices. Removing an endpoint from its
subset is done in a loop rather than by recursion; only the splits along a
radial partition recurse, so the depth is bounded by the number of points.
"""

from __future__ import annotations

import contextlib
import logging
import sys
from collections.abc import Callable, Iterator
from typing import NamedTuple

from ._errors import InternalError, PreconditionViolated, SpecialConfiguration
from .geometry import (
    Color,
    Direction,
    convex_hull,
    orientation,
    radial_order,
    segments_cross,
    tangents_from,
    visible_points,
)
from .model import BicoloredSet, ImmediateNeighbor, Partition, is_special, scan_partition
from .routes import AltRoute, RouteKind

logger = logging.getLogger(__name__)

Points = frozenset[int]

HULL_CACHE_SIZE = 64


@contextlib.contextmanager
def _recursion_limit(limit: int) -> Iterator[None]:
    old = sys.getrecursionlimit()
    if limit > old:
        sys.setrecursionlimit(limit)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class _Peel(NamedTuple):
    """One endpoint step: continue on ``rest`` from ``a`` to ``b``.

    ``front`` is emitted before the remaining path and ``back`` after it.
    """

    rest: Points
    a: int
    b: int
    front: int | None = None
    back: int | None = None


class _Builder:
    """Subset geometry plus the path construction.

    ``path`` joins two hull points of a subset: of different colours on a
    balanced subset, or of the majority colour on a subset with one extra
    point of that colour.
    """

    def __init__(self, S: BicoloredSet) -> None:
        self.pts = S.points
        self.colors = S.colors
        self._hulls: dict[Points, tuple[int, ...]] = {}

    # -- subset geometry ---------------------------------------------------

    def hull(self, M: Points) -> tuple[int, ...]:
        """Counterclockwise hull vertices of M, cached for recent subsets."""
        found = self._hulls.get(M)
        if found is None:
            idx = sorted(M)
            found = tuple(idx[k] for k in convex_hull([self.pts[i] for i in idx]).vertices)
            self._remember(M, found)
        return found

    def _remember(self, M: Points, hull: tuple[int, ...]) -> None:
        if len(self._hulls) >= HULL_CACHE_SIZE:
            del self._hulls[next(iter(self._hulls))]
        self._hulls[M] = hull

    def visible(self, M: Points, x: int) -> list[int]:
        idx = sorted(M)
        arc = visible_points([self.pts[i] for i in idx], self.pts[x])
        return [idx[k] for k in arc]

    def peel(self, M: Points, x: int) -> tuple[Points, list[int]]:
        """Remove the hull vertex x from M.

        Returns the rest and the arc of its hull that x sees, counterclockwise.
        The new hull is the old one with x replaced by that arc, and it is
        cached for the rest.
        """
        rest = M - {x}
        hull = self.hull(M)
        if len(hull) < 3 or len(rest) < 3:
            return rest, self.visible(rest, x)
        k = hull.index(x)
        u, w = hull[k - 1], hull[(k + 1) % len(hull)]
        pts = self.pts
        pu, pw = pts[u], pts[w]
        side = orientation(pu, pw, pts[x])
        inside = [p for p in rest if p != u and p != w and orientation(pu, pw, pts[p]) == side]
        arc = [u, w]
        if inside:
            local = [u, w, *inside]
            sub = [local[i] for i in convex_hull([pts[i] for i in local]).vertices]
            s = sub.index(u)
            arc = sub[s:] + sub[:s]
        self._remember(rest, hull[k + 1:] + hull[:k] + tuple(arc[1:-1]))
        return rest, arc

    def radial(self, M: Points, center: int, direction: Direction) -> list[int]:
        idx = sorted(M - {center})
        order = radial_order([self.pts[i] for i in idx], self.pts[center], direction)
        return [idx[k] for k in order]

    def partition(self, M: Points, center: int, direction: Direction) -> Partition | ImmediateNeighbor:
        return scan_partition(self.radial(M, center, direction), self.colors, center, direction)

    def neighbors(self, M: Points, v: int) -> tuple[int, int]:
        hull = self.hull(M)
        k = hull.index(v)
        return hull[k - 1], hull[(k + 1) % len(hull)]

    def special(self, M: Points, r: int, b: int) -> bool:
        colors = self.colors
        if len(M) < 4:
            return False
        if any(colors[q] is not colors[r] for q in self.neighbors(M, r)):
            return False
        if any(colors[q] is not colors[b] for q in self.neighbors(M, b)):
            return False
        for center, target in ((r, b), (b, r)):
            for direction in Direction:
                part = self.partition(M, center, direction)
                if not isinstance(part, Partition) or part.p_i_plus_1 != target:
                    return False
        return True

    def _clear(self, p: int, q: int, *parts: Points) -> bool:
        """True if segment pq crosses no hull edge of any of ``parts``."""
        seg = (self.pts[p], self.pts[q])
        for part in parts:
            hull = self.hull(part)
            if len(hull) < 2:
                continue
            for k, u in enumerate(hull):
                v = hull[(k + 1) % len(hull)]
                if p in (u, v) or q in (u, v):
                    continue
                if segments_cross(seg, (self.pts[u], self.pts[v])):
                    return False
        return True

    # -- the construction ----------------------------------------------------------

    def path(self, M: Points, a: int, b: int) -> list[int]:
        """Path from a to b over M; endpoint steps are collected without recursing."""
        head: list[int] = []
        tail: list[int] = []
        while True:
            if self.colors[a] is self.colors[b]:
                step = self._step_same(M, a, b)
            else:
                step = self._step_mixed(M, a, b)
            if not isinstance(step, _Peel):
                tail.reverse()
                return head + step + tail
            M, a, b = step.rest, step.a, step.b
            if step.front is not None:
                head.append(step.front)
            if step.back is not None:
                tail.append(step.back)

    # -- opposite-coloured endpoints ------------------------------------------

    def _step_mixed(self, M: Points, a: int, b: int) -> list[int] | _Peel:
        if len(M) == 2:
            return [a, b]
        rest, arc = self.peel(M, a)
        q = self._first_other(arc, a, exclude=b)
        if q is not None:
            return _Peel(rest, q, b, front=a)
        rest, arc = self.peel(M, b)
        q = self._first_other(arc, b, exclude=a)
        if q is not None:
            return _Peel(rest, a, q, back=b)
        if b in self.neighbors(M, a):
            logger.debug("consecutive endpoints %d, %d on %d points", a + 1, b + 1, len(M))
            return self._consecutive(M, a, b)
        return self._split(M, a, b)

    def _first_other(self, arc: list[int], x: int, *, exclude: int) -> int | None:
        """First point of the other colour in ``arc``, counterclockwise."""
        want = self.colors[x].other
        for v in arc:
            if v != exclude and self.colors[v] is want:
                return v
        return None

    def _consecutive(self, M: Points, a: int, b: int) -> _Peel:
        colors = self.colors
        inner = M - {a, b}
        hull = self.hull(inner)
        seen = set(self.visible(inner, a)) & set(self.visible(inner, b))
        for k, u in enumerate(hull):
            v = hull[(k + 1) % len(hull)]
            if colors[u] is colors[v] or u not in seen or v not in seen:
                continue
            to_a, to_b = (u, v) if colors[u] is not colors[a] else (v, u)
            return _Peel(inner, to_a, to_b, front=a, back=b)
        msg = f"no bichromatic hull edge visible from both {a + 1} and {b + 1}"
        raise InternalError(msg)

    def _split(self, M: Points, a: int, b: int) -> list[int]:
        for center, other in ((a, b), (b, a)):
            for direction in (Direction.CCW, Direction.CW):
                part = self.partition(M, center, direction)
                if isinstance(part, Partition) and part.p_i_plus_1 != other:
                    logger.debug(
                        "split %d points around %d (%s) at %d",
                        len(M), center + 1, direction.value, part.p_i_plus_1 + 1,
                    )
                    route = self._join_partition(part, other)
                    return route if center == a else route[::-1]
        msg = f"points {a + 1} and {b + 1} form a special configuration"
        raise SpecialConfiguration(msg)

    def _join_partition(self, part: Partition, y: int) -> list[int]:
        x, j = part.center, part.p_i_plus_1
        S1, S2 = frozenset(part.s1), frozenset(part.s2)
        if y in S2:
            return self.path(S1 | {x, j}, x, j) + self.path(S2, j, y)[1:]
        return self.path(S2 | {x}, x, j) + self.path(S1 | {j}, j, y)[1:]

    # -- same-coloured endpoints -------------------------------------------------

    def _step_same(self, M: Points, a: int, a2: int) -> list[int] | _Peel:
        if len(M) == 1:
            return [a]
        if len(M) == 3:
            (mid,) = M - {a, a2}
            return [a, mid, a2]
        c = self.colors[a]
        rest, seen_a = self.peel(M, a)
        q = self._mixed_pick(seen_a, c)
        if q is not None:
            return _Peel(rest, q, a2, front=a)
        rest, seen_a2 = self.peel(M, a2)
        q = self._mixed_pick(seen_a2, c)
        if q is not None:
            return _Peel(rest, a, q, back=a2)
        own_a = all(self.colors[v] is c for v in seen_a)
        own_a2 = all(self.colors[v] is c for v in seen_a2)
        attempts: list[Callable[[], list[int] | None]] = []
        if own_a:
            attempts.append(lambda: self._monochrome_view(M, a, a2))
        if own_a2:
            attempts.append(lambda: _reversed(self._monochrome_view(M, a2, a)))
        if not own_a and not own_a2:
            attempts.append(lambda: self._minority_view(M, a, a2))
        attempts.append(lambda: self._radial_split(M, a, a2))
        attempts.append(lambda: _reversed(self._radial_split(M, a2, a)))
        for attempt in attempts:
            route = attempt()
            if route is not None:
                return route
        msg = f"no split joins {a + 1} and {a2 + 1} on {len(M)} points"
        raise InternalError(msg)

    def _mixed_pick(self, arc: list[int], c: Color) -> int | None:
        """First point of the minority colour in ``arc`` with a neighbour of colour ``c``."""
        colors = self.colors
        for k, v in enumerate(arc):
            if colors[v] is c:
                continue
            if (k > 0 and colors[arc[k - 1]] is c) or (k + 1 < len(arc) and colors[arc[k + 1]] is c):
                return v
        return None

    def _sides(self, part: Partition, y: int) -> tuple[Points, Points, int]:
        """Return (F, G, junction): y and the junction lie in G, the ray x-junction separates."""
        if y in part.s2:
            return frozenset(part.s1), frozenset(part.s2), part.p_i_plus_1
        return frozenset(part.s2), frozenset(part.s1), part.p_i

    def _monochrome_view(self, M: Points, x: int, y: int) -> list[int] | None:
        """x only sees its own colour: split around x, bridging the halves if needed."""
        parts = []
        for direction in Direction:
            part = self.partition(M, x, direction)
            if not isinstance(part, Partition):
                msg = f"point {x + 1} sees only its colour but its first radial point differs"
                raise InternalError(msg)
            parts.append(part)
            F, G, junction = self._sides(part, y)
            if not self.special(G, junction, y):
                logger.debug("same-colour split around %d on %d points", x + 1, len(M))
                return self.path(F | {x, junction}, x, junction) + self.path(G, junction, y)[1:]

        logger.debug("same-colour split around %d hits a special half; bridging", x + 1)
        for part in parts:
            F, G, junction = self._sides(part, y)
            route = self._bridge_same(F, G, x, y) or self._bridge_other(F, G, junction, x, y)
            if route is not None:
                return route
        return None

    def _bridge_same(self, F: Points, G: Points, x: int, y: int) -> list[int] | None:
        """x -> q, a path on F from q to a point p of x's colour, then p -> g and a path on G."""
        colors = self.colors
        c = colors[x]
        starts = [q for q in self.hull(F) if colors[q] is not c and self._clear(x, q, F, G)]
        if not starts:
            return None
        for g in self.hull(G):
            if colors[g] is c or self.special(G, g, y):
                continue
            for p in self._facing(F, g, c):
                if not self._clear(p, g, F, G):
                    continue
                for q in starts:
                    if not self.special(F, q, p):
                        return [x, *self.path(F, q, p), *self.path(G, g, y)]
        return None

    def _bridge_other(
        self, F: Points, G: Points, junction: int, x: int, y: int
    ) -> list[int] | None:
        """x -> junction, a path on F plus the junction to p, then p -> g and a path on G."""
        colors = self.colors
        c = colors[x]
        left, right = F | {junction}, G - {junction}
        for g in self.hull(right):
            if colors[g] is not c or g == y:
                continue
            for p in self._facing(left, g, c.other):
                if p != junction and self._clear(p, g, left, right):
                    return [x, *self.path(left, junction, p), *self.path(right, g, y)]
        return None

    def _facing(self, F: Points, g: int, color: Color) -> list[int]:
        """Hull vertices of F with ``color``, the tangent points from g first."""
        hull = self.hull(F)
        first: tuple[int, ...] = ()
        if len(hull) >= 3:
            idx = sorted(F)
            t1, t2 = tangents_from([self.pts[i] for i in idx], self.pts[g])
            first = (idx[t1], idx[t2])
        ordered = dict.fromkeys((*first, *hull))
        return [p for p in ordered if self.colors[p] is color]

    def _radial_split(self, M: Points, x: int, y: int) -> list[int] | None:
        """Split along any ray from x through a point p_j that leaves both sides solvable.

        The points before p_j and the points after it lie on opposite sides of
        the line x p_j, so the two sub-paths only meet at p_j.
        """
        colors = self.colors
        c = colors[x]
        for direction in Direction:
            order = self.radial(M, x, direction)
            balance = [0]
            for v in order:
                balance.append(balance[-1] + (1 if colors[v] is not c else -1))
            at_y = order.index(y)
            for j, pj in enumerate(order):
                if pj == y:
                    continue
                if j < at_y:
                    near, far, surplus = order[:j], order[j + 1:], balance[j]
                else:
                    near, far, surplus = order[j + 1:], order[:j], balance[-1] - balance[j + 1]
                head = frozenset(near) | {x, pj}
                tail = frozenset(far) | {pj}
                if colors[pj] is not c and surplus == 0 and not self.special(tail, pj, y):
                    return self.path(head, x, pj) + self.path(tail, pj, y)[1:]
                if colors[pj] is c and surplus == 1:
                    return self.path(head, x, pj) + self.path(tail, pj, y)[1:]
        return None

    def _minority_view(self, M: Points, a: int, a2: int) -> list[int] | None:
        """Both endpoints only see the other colour: start through a hull neighbour."""
        c = self.colors[a]
        for x, y in ((a, a2), (a2, a)):
            for nb in self.neighbors(M, x):
                if self.colors[nb] is c:
                    continue
                Mx, _ = self.peel(M, x)
                rest, seen = self.peel(Mx, nb)
                ours = [v for v in seen if self.colors[v] is c and v != y]
                route: list[int] | None
                if ours:
                    route = [x, nb, *self.path(rest, ours[0], y)]
                elif all(self.colors[v] is not c for v in seen):
                    route = self._through_neighbor(M, x, y, nb)
                else:
                    route = None
                if route is not None:
                    return route if x == a else route[::-1]
        return None

    def _through_neighbor(self, M: Points, x: int, y: int, nb: int) -> list[int] | None:
        Mx, arc = self.peel(M, x)
        if len(arc) < 2:
            return None
        if arc[0] == nb:
            inward = arc[1]
        elif arc[-1] == nb:
            inward = arc[-2]
        else:
            return None
        order = self.radial(Mx, nb, Direction.CCW)
        direction = Direction.CCW
        if order[0] != inward:
            if order[-1] != inward:
                return None
            order.reverse()
            direction = Direction.CW
        part = scan_partition(order, self.colors, nb, direction)
        if not isinstance(part, Partition):
            return None
        j = part.p_i_plus_1
        S1, S2 = frozenset(part.s1), frozenset(part.s2)
        if y == j:
            return [x, *self.path(S1 | {nb}, inward, nb), *self.path(S2 | {nb}, nb, y)[1:]]
        if y in S1:
            return [x, *self.path(S2 | {nb}, nb, j), *self.path(S1 | {j}, j, y)[1:]]
        return [x, *self.path(S1 | {nb, j}, nb, j), *self.path(S2, j, y)[1:]]


def _reversed(route: list[int] | None) -> list[int] | None:
    return route[::-1] if route is not None else None


def _check_on_hull(S: BicoloredSet, *indices: int) -> None:
    for i in indices:
        if not 0 <= i < len(S):
            msg = f"point {i + 1} outside 1..{len(S)}"
            raise PreconditionViolated(msg)
        if not S.on_hull(i):
            msg = f"point {i + 1} is not on the hull boundary"
            raise PreconditionViolated(msg)


def build_path(S: BicoloredSet, a: int, b: int) -> AltRoute:
    """
    Build a 1-plane Hamiltonian alternating path from ``a`` to ``b``.

    Parameters
    ----------
    S : BicoloredSet
        Points in general position (convex sets use their synthetic coordinates).
    a, b : int
        0-based hull points. Different colours need |R| = |B|; equal colours
        need one extra point of that colour.

    Returns
    -------
    AltRoute
        At most ``n - r(S)`` crossings for different colours and
        ``n - (minority runs)`` for equal colours.

    Raises
    ------
    SpecialConfiguration
        If ``(S, a, b)`` is special; no construction is guaranteed then.
    PreconditionViolated
        For colour counts or endpoints that do not fit.
    """
    _check_on_hull(S, a, b)
    if a == b:
        msg = "path endpoints must differ"
        raise PreconditionViolated(msg)
    ca, cb = S.colors[a], S.colors[b]
    if ca is not cb:
        if not S.is_balanced:
            msg = "endpoints of different colours need |R| = |B|"
            raise PreconditionViolated(msg)
        if is_special(S, a, b):
            msg = f"points {a + 1} and {b + 1} form a special configuration"
            raise SpecialConfiguration(msg)
    elif S.count(ca) != S.count(ca.other) + 1:
        msg = f"two {ca.name.lower()} endpoints need exactly one extra {ca.name.lower()} point"
        raise PreconditionViolated(msg)

    builder = _Builder(S)
    everything = frozenset(range(len(S)))
    with _recursion_limit(8 * len(S) + 1000):
        verts = builder.path(everything, a, b)
    return AltRoute.measured(S, RouteKind.PATH, verts)


def build_cycle(S: BicoloredSet) -> AltRoute:
    """
    Build a 1-plane Hamiltonian alternating cycle with at most n - max{r(S), b(S)} crossings.

    A bichromatic hull closes a path between the ends of its first bridge. A
    monochromatic hull is split around its first boundary point and the two
    halves are joined at the partition point.
    """
    if not S.is_balanced or S.n_red < 2:
        msg = f"need |R| = |B| >= 2 (got {S.n_red} red, {S.n_blue} blue)"
        raise PreconditionViolated(msg)
    builder = _Builder(S)
    everything = frozenset(range(len(S)))
    bridges = S.run_structure.bridges
    with _recursion_limit(8 * len(S) + 1000):
        if bridges:
            u, v = bridges[0]
            logger.debug("closing the path across bridge %d-%d", u + 1, v + 1)
            verts = builder.path(everything, u, v)
        else:
            r = S.boundary[0]
            part = builder.partition(everything, r, Direction.CCW)
            if not isinstance(part, Partition):
                msg = "a monochromatic hull must start its sweep with its own colour"
                raise InternalError(msg)
            j = part.p_i_plus_1
            first = builder.path(frozenset(part.s1) | {r, j}, r, j)
            second = builder.path(frozenset(part.s2) | {r}, j, r)
            verts = first + second[1:-1]
    return AltRoute.measured(S, RouteKind.CYCLE, verts)
