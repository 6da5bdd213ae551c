"""Exhaustive ground truth for small instances, plus crossing-removing edge swaps."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ._errors import PreconditionViolated, TooLarge
from .geometry import Color
from .model import BicoloredSet
from .routes import AltRoute, Edge, RouteKind, crossing_pairs, edge_key

logger = logging.getLogger(__name__)

DEFAULT_MAX_POINTS = 14
DEFAULT_KEEP = 32


@dataclass
class OracleResult:
    """Outcome of an exhaustive search.

    Attributes
    ----------
    min_crossings : int or None
        ``None`` when no Hamiltonian alternating route with the requested
        endpoints exists.
    optimal_routes : list of AltRoute
        Optimal routes in search order, at most ``keep`` of them.
    exists_1plane : bool
        Whether any (not necessarily optimal) route is 1-plane.
    all_optima_1plane : bool
        Whether every optimal route is 1-plane, counting the ones not kept.
    n_optima : int
        Number of optimal routes found (cycles counted once per orientation class).
    """

    min_crossings: int | None
    optimal_routes: list[AltRoute] = field(default_factory=list)
    exists_1plane: bool = False
    all_optima_1plane: bool = False
    n_optima: int = 0


class _Search:
    """Depth-first enumeration over bichromatic edges with bitmask crossing sets."""

    def __init__(self, S: BicoloredSet) -> None:
        n = len(S)
        self.n = n
        self.colors = S.colors
        cand = [
            (u, v) for u in range(n) for v in range(u + 1, n) if S.colors[u] is not S.colors[v]
        ]
        self.edge_id = {e: k for k, e in enumerate(cand)}
        masks = [0] * len(cand)
        for i, j in crossing_pairs(S, cand):
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        self.masks = masks
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in cand:
            self.adj[u].append(v)
            self.adj[v].append(u)

    def add(self, u: int, v: int, used: int, once: int) -> tuple[int, int, int, bool]:
        """Add edge uv; return (used, once, new crossings, still 1-plane)."""
        e = self.edge_id[edge_key(u, v)]
        hits = self.masks[e] & used
        k = hits.bit_count()
        plane = k <= 1 and not hits & once
        if k:
            once |= hits | (1 << e)
        return used | (1 << e), once, k, plane


def _feasible(S: BicoloredSet, kind: RouteKind, start: int | None, end: int | None) -> bool:
    n_red, n_blue = S.n_red, S.n_blue
    if kind is RouteKind.CYCLE:
        return n_red == n_blue and n_red >= 2
    if abs(n_red - n_blue) > 1:
        return False
    if n_red == n_blue:
        ok = {Color.RED, Color.BLUE}
    else:
        ok = {Color.RED if n_red > n_blue else Color.BLUE}
    for p in (start, end):
        if p is not None and S.colors[p] not in ok:
            return False
    if start is not None and end is not None:
        if start == end:
            return len(S) == 1
        if n_red == n_blue and S.colors[start] is S.colors[end]:
            return False
    return True


def enumerate_min(
    S: BicoloredSet,
    kind: RouteKind | str,
    endpoints: tuple[int, int] | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
    keep: int = DEFAULT_KEEP,
) -> OracleResult:
    """
    Exact minimum crossings over all Hamiltonian alternating routes.

    Parameters
    ----------
    S : BicoloredSet
    kind : RouteKind or {"path", "cycle"}
    endpoints : (int, int), optional
        0-based fixed path endpoints; ``None`` leaves both free. Ignored for cycles.
    max_points : int, default 14
        Refuse larger instances.
    keep : int, default 32
        How many optimal routes to return.

    Returns
    -------
    OracleResult

    Raises
    ------
    TooLarge
        If ``S`` has more than ``max_points`` points.

    Notes
    -----
    Crossings are counted with the same predicate as :func:`crossing_pairs`.
    Branches whose partial count already exceeds the best complete route are
    cut; ties are kept, so every optimum is seen. Cycles are enumerated from
    point 0 with the second point smaller than the last one.
    """
    kind = RouteKind(kind)
    n = len(S)
    if n > max_points:
        msg = f"{n} points exceed the oracle limit of {max_points}"
        raise TooLarge(msg)
    start, end = endpoints if endpoints is not None and kind is RouteKind.PATH else (None, None)
    if not _feasible(S, kind, start, end):
        return OracleResult(min_crossings=None)
    if n == 1:
        return OracleResult(0, [AltRoute(kind, (0,), ())], True, True, 1)

    search = _Search(S)
    best = n * n
    count = 0
    all_plane = True
    found: list[list[int]] = []

    def record(path: list[int], cross: int, plane: bool) -> None:
        nonlocal best, count, all_plane
        if cross < best:
            best = cross
            found.clear()
            count = 0
            all_plane = True
        if len(found) < keep:
            found.append(list(path))
        count += 1
        all_plane = all_plane and plane

    starts = [start] if start is not None else ([0] if kind is RouteKind.CYCLE else range(n))

    def dfs(path: list[int], visited: int, used: int, once: int, cross: int, plane: bool) -> None:
        u = path[-1]
        if len(path) == n:
            if kind is RouteKind.CYCLE:
                if path[1] > path[-1] or S.colors[u] is S.colors[path[0]]:
                    return
                used, once, k, ok = search.add(u, path[0], used, once)
                if cross + k <= best:
                    record(path, cross + k, plane and ok)
            elif end is None or u == end:
                record(path, cross, plane)
            return
        for v in search.adj[u]:
            if visited >> v & 1 or (v == end and len(path) < n - 1):
                continue
            used2, once2, k, ok = search.add(u, v, used, once)
            if cross + k > best:
                continue
            path.append(v)
            dfs(path, visited | 1 << v, used2, once2, cross + k, plane and ok)
            path.pop()

    for s in starts:
        dfs([s], 1 << s, 0, 0, 0, True)

    if not found:
        return OracleResult(min_crossings=None)
    routes = [AltRoute.measured(S, kind, p) for p in found]
    exists = all_plane or any(r.is_one_plane for r in routes)
    if not exists:
        exists = exists_one_plane(S, kind, endpoints, max_points=max_points)
    logger.debug(
        "oracle %s on %d points: min %d, %d optima", kind.value, n, best, count
    )
    return OracleResult(best, routes, exists, all_plane, count)


def exists_one_plane(
    S: BicoloredSet,
    kind: RouteKind | str,
    endpoints: tuple[int, int] | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> bool:
    """Whether some Hamiltonian alternating route is 1-plane; stops at the first one."""
    kind = RouteKind(kind)
    n = len(S)
    if n > max_points:
        msg = f"{n} points exceed the oracle limit of {max_points}"
        raise TooLarge(msg)
    start, end = endpoints if endpoints is not None and kind is RouteKind.PATH else (None, None)
    if not _feasible(S, kind, start, end):
        return False
    if n == 1:
        return True
    search = _Search(S)

    def dfs(path: list[int], visited: int, used: int, once: int) -> bool:
        u = path[-1]
        if len(path) == n:
            if kind is RouteKind.CYCLE:
                if S.colors[u] is S.colors[path[0]]:
                    return False
                return search.add(u, path[0], used, once)[3]
            return end is None or u == end
        for v in search.adj[u]:
            if visited >> v & 1 or (v == end and len(path) < n - 1):
                continue
            used2, once2, _, ok = search.add(u, v, used, once)
            if ok:
                path.append(v)
                if dfs(path, visited | 1 << v, used2, once2):
                    return True
                path.pop()
        return False

    starts = [start] if start is not None else ([0] if kind is RouteKind.CYCLE else range(n))
    return any(dfs([s], 1 << s, 0, 0) for s in starts)


def _locate(route: AltRoute, e: Edge) -> int:
    key = edge_key(*e)
    for k, f in enumerate(route.edges):
        if f == key:
            return k
    msg = f"edge {e[0] + 1}-{e[1] + 1} is not in the route"
    raise PreconditionViolated(msg)


def quadrangular_swap(S: BicoloredSet, route: AltRoute, e1: Edge, e2: Edge) -> AltRoute:
    """
    Replace two crossing route edges by the two non-crossing sides they span.

    With the route oriented as ``... p1 q1 ... p2 q2 ...``, the edges ``p1q1``
    and ``p2q2`` become ``p1p2`` and ``q1q2`` and the stretch ``q1 ... p2`` is
    reversed. Alternation survives iff ``q1`` and ``p2`` have the same colour.
    The total number of crossings strictly drops.

    Raises
    ------
    PreconditionViolated
        If an edge is missing, the edges do not cross, or the colour
        condition fails.
    """
    i, k = sorted((_locate(route, e1), _locate(route, e2)))
    edges = route.edges
    if not crossing_pairs(S, [edges[i], edges[k]]):
        msg = f"edges {edges[i]} and {edges[k]} do not cross"
        raise PreconditionViolated(msg)
    verts = list(route.vertices)
    if route.kind is RouteKind.CYCLE:
        # rotate so the first edge starts the list
        verts = verts[i:] + verts[:i]
        k -= i
        i = 0
    q1, p2 = verts[i + 1], verts[k]
    if S.colors[q1] is not S.colors[p2]:
        msg = f"points {q1 + 1} and {p2 + 1} differ in colour; the swap would break alternation"
        raise PreconditionViolated(msg)
    new = verts[: i + 1] + verts[i + 1 : k + 1][::-1] + verts[k + 1 :]
    return AltRoute.measured(S, route.kind, new)


def _eligible_swap(S: BicoloredSet, route: AltRoute) -> tuple[Edge, Edge] | None:
    position = {e: k for k, e in enumerate(route.edges)}
    verts = route.vertices
    for e, f in route.crossings or ():
        i, k = sorted((position[e], position[f]))
        if route.kind is RouteKind.CYCLE:
            q1, p2 = verts[(i + 1) % len(verts)], verts[k]
        else:
            q1, p2 = verts[i + 1], verts[k]
        if S.colors[q1] is S.colors[p2]:
            return e, f
    return None


def reduce_crossings(S: BicoloredSet, route: AltRoute) -> AltRoute:
    """Apply eligible quadrangular swaps until none is left.

    Every swap removes at least one crossing, so the loop ends after at most
    as many rounds as the route had crossings.
    """
    current = AltRoute.measured(S, route.kind, route.vertices)
    rounds = 0
    while (pair := _eligible_swap(S, current)) is not None:
        current = quadrangular_swap(S, current, *pair)
        rounds += 1
    logger.debug("reduced to %d crossings in %d swaps", current.crossing_count, rounds)
    return current


def visiting_order_holds(S: BicoloredSet, route: AltRoute) -> bool:
    """
    Check the visiting order forced on a convex 1-plane path that starts with a chord.

    For a path leaving ``p_j`` along the chord ``p_j p_k``, the side of the
    chord not holding the last point is covered in one stretch right after
    ``p_k``, it ends at the neighbour of ``p_j`` on that side, and the path
    then crosses to a boundary neighbour of ``p_j`` or ``p_k`` on the other side.

    Raises
    ------
    PreconditionViolated
        If ``S`` is not convex, the route is not a 1-plane path of at least
        three points, or its first edge is a boundary edge.
    """
    if not S.is_convex:
        msg = "the visiting order is only defined for convex sets"
        raise PreconditionViolated(msg)
    if route.kind is not RouteKind.PATH or len(route.vertices) < 3:
        msg = "need a path with at least three points"
        raise PreconditionViolated(msg)
    measured = AltRoute.measured(S, route.kind, route.vertices)
    if not measured.is_one_plane:
        msg = "the path is not 1-plane"
        raise PreconditionViolated(msg)
    h = len(S)
    verts = list(route.vertices)
    j, k, q = verts[0], verts[1], verts[-1]
    if (k - j) % h in (1, h - 1):
        msg = f"first edge {j + 1}-{k + 1} is a boundary edge"
        raise PreconditionViolated(msg)
    # clockwise index order: j+1..k-1 lies left of the chord j->k
    if 0 < (q - j) % h < (k - j) % h:
        far = [(k + t) % h for t in range(1, (j - k) % h)]
        near_j, rest = far[-1], far[:-1]
        exits = {(j + 1) % h, (k - 1) % h}
    else:
        far = [(j + t) % h for t in range(1, (k - j) % h)]
        near_j, rest = far[0], far[1:]
        exits = {(j - 1) % h, (k + 1) % h}
    m = len(rest)
    if set(verts[2 : 2 + m]) != set(rest) or verts[2 + m] != near_j:
        return False
    return len(verts) <= 3 + m or verts[3 + m] in exits
