"""Alternating routes (paths and cycles), crossing detection and route verification."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import Any

import numpy as np

from ._errors import PreconditionViolated
from .geometry import segments_cross
from .model import BicoloredSet, cycle_bound, is_special, path_bound

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
CrossingPair = tuple[Edge, Edge]


class RouteKind(StrEnum):
    PATH = "path"
    CYCLE = "cycle"


def edge_key(u: int, v: int) -> Edge:
    """Normalise an undirected edge to ``(min, max)``."""
    return (u, v) if u < v else (v, u)


def route_edges(vertices: Sequence[int], kind: RouteKind) -> list[Edge]:
    """Edges in route order; a cycle includes the closing edge."""
    edges = [edge_key(u, v) for u, v in zip(vertices, vertices[1:])]
    if kind is RouteKind.CYCLE and len(vertices) >= 3:
        edges.append(edge_key(vertices[-1], vertices[0]))
    return edges


@dataclass(frozen=True)
class AltRoute:
    """A Hamiltonian alternating path or cycle over the indices of a set.

    Attributes
    ----------
    kind : RouteKind
    vertices : tuple of int
        0-based point indices in visiting order. A cycle does not repeat its
        first vertex.
    crossings : tuple of (Edge, Edge), optional
        Unordered crossing edge pairs, as reported by whoever built the route.
        ``None`` when unknown (e.g. a route read from a file).
    """

    kind: RouteKind
    vertices: tuple[int, ...]
    crossings: tuple[CrossingPair, ...] | None = None

    @classmethod
    def measured(cls, S: BicoloredSet, kind: RouteKind | str, vertices: Sequence[int]) -> AltRoute:
        """Build a route and compute its crossings from scratch."""
        kind = RouteKind(kind)
        verts = tuple(vertices)
        edges = route_edges(verts, kind)
        pairs = tuple((edges[i], edges[j]) for i, j in crossing_pairs(S, edges))
        return cls(kind, verts, pairs)

    @property
    def edges(self) -> list[Edge]:
        return route_edges(self.vertices, self.kind)

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @cached_property
    def per_edge_crossings(self) -> dict[Edge, int]:
        """Crossing count for every edge of the route (zero entries included)."""
        counts: dict[Edge, int] = dict.fromkeys(self.edges, 0)
        for e, f in self.crossings or ():
            counts[e] = counts.get(e, 0) + 1
            counts[f] = counts.get(f, 0) + 1
        return counts

    @property
    def crossing_count(self) -> int:
        return len(self.crossings or ())

    @property
    def max_edge_crossings(self) -> int:
        return max(self.per_edge_crossings.values(), default=0)

    @property
    def is_one_plane(self) -> bool:
        return self.max_edge_crossings <= 1

    def reversed(self) -> AltRoute:
        return AltRoute(self.kind, self.vertices[::-1], self.crossings)


def crossing_pairs(S: BicoloredSet, edges: Sequence[Edge]) -> list[tuple[int, int]]:
    """Return index pairs ``(i, j)``, ``i < j``, of edges that cross properly.

    Convex sets use chord interleaving on indices. General sets prefilter with
    float bounding boxes and confirm candidates with exact predicates; float
    conversion is monotone, so the prefilter never drops a true crossing.
    """
    if len(edges) < 2:
        return []
    E = np.asarray(edges, dtype=np.int64)
    lo = E.min(axis=1)
    hi = E.max(axis=1)
    out: list[tuple[int, int]] = []
    m = len(E)
    if S.is_convex:
        for i in range(m - 1):
            a, b = lo[i], hi[i]
            c, d = lo[i + 1 :], hi[i + 1 :]
            inside_c = (a < c) & (c < b)
            inside_d = (a < d) & (d < b)
            shared = (c == a) | (c == b) | (d == a) | (d == b)
            hits = np.nonzero((inside_c ^ inside_d) & ~shared)[0]
            out.extend((i, i + 1 + int(k)) for k in hits)
        return out

    pts = S.points
    xs = np.array([float(p.x) for p in pts])
    ys = np.array([float(p.y) for p in pts])
    x0 = np.minimum(xs[E[:, 0]], xs[E[:, 1]])
    x1 = np.maximum(xs[E[:, 0]], xs[E[:, 1]])
    y0 = np.minimum(ys[E[:, 0]], ys[E[:, 1]])
    y1 = np.maximum(ys[E[:, 0]], ys[E[:, 1]])
    for i in range(m - 1):
        box = (
            (x0[i + 1 :] <= x1[i])
            & (x1[i + 1 :] >= x0[i])
            & (y0[i + 1 :] <= y1[i])
            & (y1[i + 1 :] >= y0[i])
        )
        u, v = edges[i]
        seg = (pts[u], pts[v])
        for k in np.nonzero(box)[0]:
            j = i + 1 + int(k)
            s, t = edges[j]
            if s in (u, v) or t in (u, v):
                continue
            if segments_cross(seg, (pts[s], pts[t])):
                out.append((i, j))
    return out


@dataclass
class RouteReport:
    """Outcome of :func:`verify_route`.

    ``violations`` is empty iff every check passed.
    """

    kind: RouteKind
    n_points: int
    crossings: int
    max_edge_crossings: int
    bound: int | None
    hamiltonian: bool
    alternating: bool
    one_plane: bool
    special: bool
    bridges_used: list[Edge]
    bridges_total: int
    reported_crossings: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, instance: str | None = None) -> dict[str, Any]:
        """JSON-ready dictionary with 1-based indices."""
        return {
            "instance": instance,
            "kind": self.kind.value,
            "n_points": self.n_points,
            "crossings": self.crossings,
            "max_edge_crossings": self.max_edge_crossings,
            "bound": self.bound,
            "one_plane": self.one_plane,
            "special": self.special,
            "bridges_used": [[u + 1, v + 1] for u, v in self.bridges_used],
            "bridges_total": self.bridges_total,
            "reported_crossings": self.reported_crossings,
            "checks": {
                "hamiltonian": self.hamiltonian,
                "alternating": self.alternating,
                "one_plane": self.one_plane or self.special,
                "within_bound": self.bound is None or self.crossings <= self.bound,
            },
            "passed": self.passed,
            "violations": list(self.violations),
        }


def verify_route(S: BicoloredSet, route: AltRoute) -> RouteReport:
    """Recompute every property of ``route`` on ``S`` and list what fails.

    Checks Hamiltonicity, colour alternation (including the closing edge of a
    cycle), exact pairwise crossings, 1-planarity and the applicable crossing
    bound. A path bound only applies when both endpoints lie on the hull. A
    path between the two points of a special configuration may have one edge
    crossed twice. Never raises for a bad route.
    """
    n = len(S)
    verts = list(route.vertices)
    violations: list[str] = []

    bad = [v for v in verts if not 0 <= v < n]
    if bad:
        violations.append(f"indices out of range: {sorted({v + 1 for v in bad})}")
    valid = [v for v in verts if 0 <= v < n]

    repeats = sorted(v + 1 for v, c in Counter(valid).items() if c > 1)
    missing = sorted(v + 1 for v in set(range(n)) - set(valid))
    hamiltonian = not bad and not repeats and not missing
    if repeats:
        violations.append(f"points visited more than once: {repeats}")
    if missing:
        violations.append(f"points never visited: {missing}")
    if route.kind is RouteKind.CYCLE and len(verts) < 3:
        violations.append("a cycle needs at least 3 vertices")
        hamiltonian = False

    edges = route_edges(valid, route.kind)
    mono = [e for e in edges if S.colors[e[0]] is S.colors[e[1]]]
    alternating = not mono
    if mono:
        shown = ", ".join(f"{u + 1}-{v + 1}" for u, v in mono[:5])
        violations.append(f"{len(mono)} monochromatic edge(s): {shown}")

    pairs = crossing_pairs(S, edges)
    per_edge: Counter[int] = Counter()
    for i, j in pairs:
        per_edge[i] += 1
        per_edge[j] += 1
    max_cross = max(per_edge.values(), default=0)
    one_plane = max_cross <= 1

    special = False
    bound: int | None = None
    if route.kind is RouteKind.CYCLE:
        if S.is_balanced and n >= 2:
            bound = cycle_bound(S)
    elif valid and S.on_hull(valid[0]) and S.on_hull(valid[-1]):
        a, b = valid[0], valid[-1]
        try:
            bound = path_bound(S, a, b)
        except PreconditionViolated:
            bound = None
        if bound is not None and S.colors[a] is not S.colors[b] and n >= 2:
            special = is_special(S, a, b)

    if special:
        doubled = [i for i, c in per_edge.items() if c >= 2]
        if max_cross > 2 or len(doubled) > 1:
            violations.append(
                f"special configuration allows one edge crossed twice; found max {max_cross} "
                f"on {len(doubled)} edge(s)"
            )
    elif not one_plane:
        worst = [edges[i] for i, c in per_edge.items() if c == max_cross][:3]
        shown = ", ".join(f"{u + 1}-{v + 1}" for u, v in worst)
        violations.append(f"not 1-plane: edge {shown} crossed {max_cross} times")

    if bound is not None and len(pairs) > bound:
        violations.append(f"{len(pairs)} crossings exceed the bound {bound}")

    reported = None
    if route.crossings is not None:
        reported = len(route.crossings)
        mine = {frozenset((edges[i], edges[j])) for i, j in pairs}
        theirs = {frozenset(p) for p in route.crossings}
        if mine != theirs:
            violations.append(
                f"reported crossings ({reported}) differ from recomputed ({len(pairs)})"
            )

    edge_set = set(edges)
    bridges = S.run_structure.bridges
    used = [e for e in bridges if edge_key(*e) in edge_set]
    logger.debug(
        "verified %s on %d points: %d crossings, %d violation(s)",
        route.kind.value, n, len(pairs), len(violations),
    )
    return RouteReport(
        kind=route.kind,
        n_points=n,
        crossings=len(pairs),
        max_edge_crossings=max_cross,
        bound=bound,
        hamiltonian=hamiltonian,
        alternating=alternating,
        one_plane=one_plane,
        special=special,
        bridges_used=used,
        bridges_total=len(bridges),
        reported_crossings=reported,
        violations=violations,
    )
