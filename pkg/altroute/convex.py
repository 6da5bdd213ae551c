"""Optimal alternating cycles and paths on points in convex position.

Everything here works on indices of a convex colour sequence: index order is
clockwise boundary order and two chords cross iff their endpoints interleave.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, overload

import numpy as np
import xarray as xr

from ._errors import InternalError, PreconditionViolated
from .geometry import Color, Direction
from .model import BicoloredSet, is_special
from .routes import AltRoute, CrossingPair, RouteKind, edge_key

logger = logging.getLogger(__name__)

# DP step codes stored in the parent tables
SINGLE = 0
CONSECUTIVE = 1
SPECIAL = 2
VIA_J = 3
VIA_J_PRIME = 4


@dataclass(frozen=True)
class JMap:
    """First balance partners of the points of one colour.

    ``partner[i]`` is the first point, scanning from ``i`` in ``direction``,
    such that the points from ``i`` to it are colour-balanced; -1 where
    undefined (other colour, or the extra point of an unbalanced set).
    """

    direction: Direction
    role_color: Color
    partner: np.ndarray
    unmatched: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        j = int(self.partner[i])
        if j < 0:
            raise KeyError(i)
        return j

    def get(self, i: int, default: int | None = None) -> int | None:
        j = int(self.partner[i])
        return default if j < 0 else j

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 0 <= i < len(self.partner) and self.partner[i] >= 0

    def __len__(self) -> int:
        return int(np.count_nonzero(self.partner >= 0))

    @property
    def pairs(self) -> dict[int, int]:
        idx = np.nonzero(self.partner >= 0)[0]
        return {int(i): int(self.partner[i]) for i in idx}


def _require_convex(S: BicoloredSet) -> None:
    if not S.is_convex:
        msg = "this solver needs a convex colour sequence"
        raise PreconditionViolated(msg)


def j_pairs(
    S: BicoloredSet,
    direction: Direction | str = Direction.CW,
    role_color: Color | str = Color.RED,
) -> JMap:
    """
    Pair every point of ``role_color`` with its first balance point.

    Parameters
    ----------
    S : BicoloredSet
        Convex colour sequence.
    direction : Direction, default CW
        Scan direction; CCW gives the counterclockwise partners.
    role_color : Color, default RED
        The colour whose points are paired. It must have as many points as the
        other colour, or exactly one more.

    Returns
    -------
    JMap

    Notes
    -----
    Walk the sequence twice in scan order, stepping up on role points and down
    on the others. A role point's partner sits just before the next position
    where the walk returns to the level it started from; that position is
    found by a stable sort of the walk levels. A point whose walk does not come
    back within one turn is the unpaired extra point.
    """
    _require_convex(S)
    direction = Direction(direction)
    role = Color(role_color)
    n_role, n_other = S.count(role), S.count(role.other)
    if n_role not in (n_other, n_other + 1):
        msg = (
            f"{role.name.lower()} needs as many points as {role.other.name.lower()} "
            f"or one more (got {n_role} and {n_other})"
        )
        raise PreconditionViolated(msg)
    h = len(S)
    scan = np.arange(h) if direction is Direction.CW else np.arange(h - 1, -1, -1)
    steps = S.signs[scan].astype(np.int32) * role.sign
    walk = np.zeros(2 * h + 1, dtype=np.int32)
    np.cumsum(np.concatenate((steps, steps)), out=walk[1:])
    walk -= walk.min()
    # 16-bit levels sort by radix; long runs give few, monotone stretches instead
    levels = walk.astype(np.uint16) if walk.max() < 2**16 else walk
    order = np.argsort(levels, kind="stable")
    ranked = walk[order]
    same = ranked[1:] == ranked[:-1]
    back = np.full(len(walk), -1, dtype=np.int64)
    back[order[:-1][same]] = order[1:][same]
    starts = np.flatnonzero(steps > 0)
    ends = back[starts]
    paired = (ends > starts) & (ends - starts <= h)
    partner = np.full(h, -1, dtype=np.int64)
    partner[scan[starts[paired]]] = scan[(ends[paired] - 1) % h]
    unmatched = tuple(int(i) for i in scan[starts[~paired]])
    return JMap(direction, role, partner, unmatched)


def _consecutive_route(
    seq: Sequence[int], colors: Sequence[Color], col: list[Color] | None = None
) -> tuple[list[int], list[CrossingPair]]:
    """Optimal alternating path from ``seq[0]`` to ``seq[-1]``.

    ``seq`` lists a convex subset in circular order, so its two ends are
    neighbours on the subset's hull. The colour counts must match the end
    colours (balanced for different colours, one extra of the end colour
    otherwise). ``col`` may pass the colours of ``seq`` when already at hand.
    Returns the vertices and the crossing pairs.
    """
    m = len(seq)
    if col is None:
        col = [colors[v] for v in seq]
    out: list[int] = []
    crossings: list[CrossingPair] = []
    nxt: list[int] | None = None
    prv: list[int] | None = None
    stack: list[tuple[int, int, bool] | list[int]] = [(0, m - 1, False)]
    while stack:
        task = stack.pop()
        if isinstance(task, list):
            out.extend(reversed(task))
            continue
        src, dst, skip = task
        tail: list[int] = []
        split = False
        while True:
            step = 1 if dst > src else -1
            size = (dst - src) * step + 1
            if size == 1:
                if not skip:
                    out.append(seq[src])
                break
            if size == 2:
                if not skip:
                    out.append(seq[src])
                out.append(seq[dst])
                break
            if col[src + step] is not col[src]:
                if skip:
                    skip = False
                else:
                    out.append(seq[src])
                src += step
                continue
            if col[dst - step] is not col[dst]:
                tail.append(seq[dst])
                dst -= step
                continue
            if col[src] is not col[dst]:
                if skip:
                    skip = False
                else:
                    out.append(seq[src])
                u, v, p, q = seq[src], seq[dst], seq[dst - step], seq[src + step]
                tail.append(v)
                crossings.append(((u, p) if u < p else (p, u), (q, v) if q < v else (v, q)))
                src, dst = dst - step, src + step
                continue
            # same colour at both ends with same-colour neighbours: split at the first balance
            if nxt is None or prv is None:
                nxt, prv = _balance_links([c.sign for c in col])
            k = nxt[src] - 1 if step == 1 else prv[src + 1]
            stack.append(tail)
            stack.append((k, dst, True))
            stack.append((src, k, skip))
            split = True
            break
        if not split:
            out.extend(reversed(tail))
    if len(out) != m:
        msg = f"consecutive route emitted {len(out)} of {m} points"
        raise InternalError(msg)
    return out, crossings


def _balance_links(signs: Sequence[int]) -> tuple[list[int], list[int]]:
    """Next and previous position with the same prefix balance.

    Prefix ``P[t]`` sums the first ``t`` signs; ``P`` has ``len(signs) + 1``
    entries. Missing links are -1.
    """
    P = np.concatenate(([0], np.cumsum(np.asarray(signs, dtype=np.int64))))
    order = np.argsort(P, kind="stable")
    same = P[order[1:]] == P[order[:-1]]
    nxt = np.full(len(P), -1, dtype=np.int64)
    prv = np.full(len(P), -1, dtype=np.int64)
    nxt[order[:-1][same]] = order[1:][same]
    prv[order[1:][same]] = order[:-1][same]
    return nxt.tolist(), prv.tolist()


def _special_route(
    cyc: Sequence[int], target: int, colors: Sequence[Color]
) -> tuple[list[int], list[CrossingPair]]:
    """Path from ``cyc[0]`` to ``cyc[target]`` for a special configuration.

    ``cyc`` lists the set clockwise from the start. The route runs through the
    start's side, jumps across on one connecting edge and finishes on the far
    side; the connecting edge is crossed exactly twice.
    """
    before = list(cyc[1:target])
    after = list(cyc[target + 1 :])
    first, c1 = _consecutive_route([*before, cyc[0]], colors)
    first.reverse()
    last, c3 = _consecutive_route([*after, cyc[target]], colors)
    link = edge_key(before[0], after[0])
    crossings = [
        *c1,
        *c3,
        (edge_key(first[0], first[1]), link),
        (link, edge_key(last[-2], last[-1])),
    ]
    return first + last, crossings


def _route(kind: RouteKind, verts: Sequence[int], crossings: Sequence[CrossingPair]) -> AltRoute:
    return AltRoute(kind, tuple(verts), tuple(crossings))


def optimum_cycle(S: BicoloredSet) -> AltRoute:
    """
    Minimum-crossing Hamiltonian alternating cycle of a balanced convex sequence.

    The cycle opens at the first bridge in index order; the remaining path is
    built by the linear-time consecutive routine. The result has exactly
    ``n - r(S)`` crossings, is 1-plane and uses every bridge.
    """
    _require_convex(S)
    if not S.is_balanced or S.n_red < 2:
        msg = f"need |R| = |B| >= 2 (got {S.n_red} red, {S.n_blue} blue)"
        raise PreconditionViolated(msg)
    h = len(S)
    colors = S.colors
    i = next(k for k in range(h) if colors[k] is not colors[(k + 1) % h])
    seq = [*range(i + 1, h), *range(i + 1)]
    verts, crossings = _consecutive_route(seq, colors, [*colors[i + 1 :], *colors[: i + 1]])
    logger.debug("optimum cycle on %d points: %d crossings", h, len(crossings))
    return _route(RouteKind.CYCLE, verts, crossings)


def _check_endpoints(S: BicoloredSet, a: int, b: int) -> None:
    _require_convex(S)
    h = len(S)
    if not (0 <= a < h and 0 <= b < h):
        msg = f"endpoints {a + 1}, {b + 1} outside 1..{h}"
        raise PreconditionViolated(msg)
    if a == b and h > 1:
        msg = "path endpoints must differ"
        raise PreconditionViolated(msg)
    ca, cb = S.colors[a], S.colors[b]
    if ca is not cb and not S.is_balanced:
        msg = "endpoints of different colours need |R| = |B|"
        raise PreconditionViolated(msg)
    if ca is cb and S.count(ca) != S.count(ca.other) + 1:
        msg = (
            f"two {ca.name.lower()} endpoints need exactly one more {ca.name.lower()} point "
            f"than {ca.other.name.lower()} points"
        )
        raise PreconditionViolated(msg)


def _consecutive_seq(S: BicoloredSet, a: int, b: int) -> list[int]:
    h = len(S)
    if (b - a) % h == 1:
        return [(a - k) % h for k in range(h)]
    if (a - b) % h == 1:
        return [(a + k) % h for k in range(h)]
    msg = f"points {a + 1} and {b + 1} are not neighbours on the boundary"
    raise PreconditionViolated(msg)


def consecutive_cost(S: BicoloredSet, a: int, b: int) -> int:
    """Closed-form optimum for boundary neighbours ``a`` and ``b``.

    ``n - r(S)`` for different colours, minority count minus minority runs for
    two points of the majority colour.
    """
    _check_endpoints(S, a, b)
    _consecutive_seq(S, a, b)
    rs = S.run_structure
    changes = len(rs.runs) if rs.bridges else 0
    return (len(S) - changes) // 2


def optimum_path_consecutive(S: BicoloredSet, a: int, b: int) -> AltRoute:
    """Optimal path between boundary neighbours ``a`` and ``b`` in linear time."""
    _check_endpoints(S, a, b)
    verts, crossings = _consecutive_route(_consecutive_seq(S, a, b), S.colors)
    return _route(RouteKind.PATH, verts, crossings)


def optimum_path_special(S: BicoloredSet, r: int, b: int) -> AltRoute:
    """Optimal path for a special configuration: ``n - r(S)`` crossings, one edge crossed twice."""
    _check_endpoints(S, r, b)
    if not is_special(S, r, b):
        msg = f"points {r + 1} and {b + 1} do not form a special configuration"
        raise PreconditionViolated(msg)
    h = len(S)
    cyc = [(r + k) % h for k in range(h)]
    verts, crossings = _special_route(cyc, (b - r) % h, S.colors)
    return _route(RouteKind.PATH, verts, crossings)


@dataclass
class DPTables:
    """Interval tables of the fixed-endpoint dynamic program.

    Positions are measured clockwise from ``start``; ``offset`` is the target's
    position. ``cross1[a, b - offset]`` is the optimum for the interval
    ``[a, b]`` when the path starts at ``a``; ``cross2`` when it starts at
    ``b``. -1 marks states the program never needed.
    """

    start: int
    target: int
    offset: int
    cross1: np.ndarray
    cross2: np.ndarray
    parent1: np.ndarray
    parent2: np.ndarray
    j_next: np.ndarray
    j_prev: np.ndarray

    @property
    def value(self) -> int:
        return int(self.cross1[0, -1])

    @property
    def states(self) -> int:
        return int(np.count_nonzero(self.cross1 >= 0) + np.count_nonzero(self.cross2 >= 0))

    def to_dataset(self) -> xr.Dataset:
        """Export the tables; unreached states become NaN. Labels are 1-based point indices."""
        h = len(self.j_next)
        left = (np.arange(self.offset + 1) + self.start) % h + 1
        right = (np.arange(self.offset, h) + self.start) % h + 1

        def masked(table: np.ndarray) -> np.ndarray:
            return np.where(table >= 0, table, np.nan)

        return xr.Dataset(
            {
                "cross1": (("left", "right"), masked(self.cross1)),
                "cross2": (("left", "right"), masked(self.cross2)),
                "parent1": (("left", "right"), self.parent1),
                "parent2": (("left", "right"), self.parent2),
                "j_next": ("position", self.j_next),
                "j_prev": ("position", self.j_prev),
            },
            coords={"left": left, "right": right, "position": np.arange(h)},
            attrs={"start": self.start + 1, "target": self.target + 1, "value": self.value},
        )


class _IntervalProgram:
    """State space and recurrences of the fixed-endpoint program on one rotation."""

    def __init__(self, S: BicoloredSet, s: int, t: int) -> None:
        h = len(S)
        self.h, self.s, self.t = h, s, t
        self.tt = tt = (t - s) % h
        self.colors = S.colors
        sg = np.fromiter((S.colors[(s + p) % h].sign for p in range(h)), dtype=np.int64, count=h)
        self.sg = sg.tolist()
        self.P = np.concatenate(([0], np.cumsum(sg))).tolist()
        ch = np.zeros(h, dtype=np.int64)
        ch[1:] = np.cumsum(sg[1:] != sg[:-1])
        self.CH = ch.tolist()
        self._first_balances()
        self.cross = (
            np.full((tt + 1, h - tt), -1, dtype=np.int32),
            np.full((tt + 1, h - tt), -1, dtype=np.int32),
        )
        self.parent = (
            np.full((tt + 1, h - tt), -1, dtype=np.int8),
            np.full((tt + 1, h - tt), -1, dtype=np.int8),
        )

    def _first_balances(self) -> None:
        # j2[c][a]: first m >= a with sum(a..m) == -c
        # j1[c][b]: last m <= b with sum(m..b) == -c
        h, P = self.h, self.P
        j2 = {1: [-1] * h, -1: [-1] * h}
        j1 = {1: [-1] * h, -1: [-1] * h}
        seen: dict[int, int] = {P[h]: h}
        for a in range(h - 1, -1, -1):
            for c in (1, -1):
                m1 = seen.get(P[a] - c)
                if m1 is not None:
                    j2[c][a] = m1 - 1
            seen[P[a]] = a
        seen = {}
        for b in range(h):
            seen[P[b]] = b
            for c in (1, -1):
                j1[c][b] = seen.get(P[b + 1] + c, -1)
        sg = self.sg
        self.j2, self.j1 = j2, j1
        self.nxt_bal = [j2[sg[a]][a + 1] if a + 1 < h else -1 for a in range(h)]
        self.prv_bal = [j1[sg[b]][b - 1] if b >= 1 else -1 for b in range(h)]

    def seg_cost(self, x: int, y: int) -> int:
        sg = self.sg
        changes = self.CH[y] - self.CH[x] + (sg[x] != sg[y])
        return (y - x + 1 - changes) // 2

    def base(self, a: int, b: int, side: int) -> tuple[int, int] | None:
        if a == b:
            return 0, SINGLE
        tt, sg = self.tt, self.sg
        balanced = self.P[b + 1] == self.P[a]
        if side == 0:
            if tt in (a + 1, b):
                return self.seg_cost(a, b), CONSECUTIVE
            if (
                balanced
                and sg[a] != sg[tt]
                and self.nxt_bal[a] == tt
                and self.j1[sg[a]][b] == tt
            ):
                return self.seg_cost(a, b), SPECIAL
        else:
            if tt in (b - 1, a):
                return self.seg_cost(a, b), CONSECUTIVE
            if (
                balanced
                and sg[b] != sg[tt]
                and self.prv_bal[b] == tt
                and self.j2[sg[b]][a] == tt
            ):
                return self.seg_cost(a, b), SPECIAL
        return None

    def options(self, a: int, b: int, side: int) -> list[tuple[int, tuple[int, int, int], int]]:
        tt, sg, CH = self.tt, self.sg, self.CH
        opts: list[tuple[int, tuple[int, int, int], int]] = []
        if side == 0:
            k = self.nxt_bal[a]
            if a < k < tt:
                opts.append((self.seg_cost(a, k), (k, b, 0), VIA_J))
            m = self.j1[sg[a]][b]
            if tt < m <= b:
                changes = CH[b] - CH[m] + (sg[a] != sg[m]) + (sg[b] != sg[a])
                opts.append(((b - m + 2 - changes) // 2, (a + 1, m, 1), VIA_J_PRIME))
        else:
            k = self.prv_bal[b]
            if tt < k < b:
                opts.append((self.seg_cost(k, b), (a, k, 1), VIA_J))
            m = self.j2[sg[b]][a]
            if a <= m < tt:
                changes = CH[m] - CH[a] + (sg[m] != sg[b]) + (sg[b] != sg[a])
                opts.append(((m - a + 2 - changes) // 2, (m, b - 1, 0), VIA_J_PRIME))
        return opts

    def solve(self) -> int:
        tt = self.tt
        cross, parent = self.cross, self.parent
        stack = [(0, self.h - 1, 0)]
        while stack:
            a, b, side = stack[-1]
            if cross[side][a, b - tt] >= 0:
                stack.pop()
                continue
            found = self.base(a, b, side)
            if found is not None:
                cross[side][a, b - tt], parent[side][a, b - tt] = found
                stack.pop()
                continue
            opts = self.options(a, b, side)
            if not opts:
                msg = f"no decomposition for interval [{a}, {b}] (side {side})"
                raise InternalError(msg)
            missing = [st for _, st, _ in opts if cross[st[2]][st[0], st[1] - tt] < 0]
            if missing:
                stack.extend(missing)
                continue
            best_cost, best_code = -1, -1
            for cost, (a2, b2, side2), code in opts:
                total = cost + int(cross[side2][a2, b2 - tt])
                if best_cost < 0 or total < best_cost:
                    best_cost, best_code = total, code
            cross[side][a, b - tt] = best_cost
            parent[side][a, b - tt] = best_code
            stack.pop()
        return int(cross[0][0, self.h - 1 - tt])

    def reconstruct(self) -> tuple[list[int], list[CrossingPair]]:
        h, s, tt, colors = self.h, self.s, self.tt, self.colors
        verts: list[int] = []
        crossings: list[CrossingPair] = []
        a, b, side = 0, h - 1, 0
        first = True
        while True:
            code = int(self.parent[side][a, b - tt])
            nxt_state: tuple[int, int, int] | None = None
            if code == SINGLE:
                piece, cr = [(a + s) % h], []
            elif code == CONSECUTIVE:
                if side == 0:
                    seq = list(range(a, b + 1)) if tt == b else [a, *range(b, a, -1)]
                else:
                    seq = list(range(b, a - 1, -1)) if tt == a else [b, *range(a, b)]
                piece, cr = _consecutive_route([(p + s) % h for p in seq], colors)
            elif code == SPECIAL:
                if side == 0:
                    cyc, target = list(range(a, b + 1)), tt - a
                else:
                    cyc, target = [b, *range(a, b)], tt - a + 1
                piece, cr = _special_route([(p + s) % h for p in cyc], target, colors)
            elif code in (VIA_J, VIA_J_PRIME):
                sg = self.sg
                if side == 0 and code == VIA_J:
                    k = self.nxt_bal[a]
                    seq, nxt_state = list(range(a, k + 1)), (k, b, 0)
                elif side == 0:
                    m = self.j1[sg[a]][b]
                    seq, nxt_state = [a, *range(b, m - 1, -1)], (a + 1, m, 1)
                elif code == VIA_J:
                    k = self.prv_bal[b]
                    seq, nxt_state = list(range(b, k - 1, -1)), (a, k, 1)
                else:
                    m = self.j2[sg[b]][a]
                    seq, nxt_state = [b, *range(a, m + 1)], (m, b - 1, 0)
                piece, cr = _consecutive_route([(p + s) % h for p in seq], colors)
            else:
                msg = f"state [{a}, {b}] (side {side}) was never solved"
                raise InternalError(msg)
            verts.extend(piece if first else piece[1:])
            crossings.extend(cr)
            first = False
            if nxt_state is None:
                break
            a, b, side = nxt_state
        if len(verts) != h or verts[0] != s or verts[-1] != self.t:
            msg = "reconstructed path is not Hamiltonian between the requested endpoints"
            raise InternalError(msg)
        return verts, crossings

    def tables(self) -> DPTables:
        return DPTables(
            start=self.s,
            target=self.t,
            offset=self.tt,
            cross1=self.cross[0],
            cross2=self.cross[1],
            parent1=self.parent[0],
            parent2=self.parent[1],
            j_next=np.asarray(self.nxt_bal, dtype=np.int64),
            j_prev=np.asarray(self.prv_bal, dtype=np.int64),
        )


@overload
def optimum_path(
    S: BicoloredSet, s: int, t: int, *, return_tables: Literal[False] = ...
) -> AltRoute: ...


@overload
def optimum_path(
    S: BicoloredSet, s: int, t: int, *, return_tables: Literal[True]
) -> tuple[AltRoute, DPTables | None]: ...


def optimum_path(
    S: BicoloredSet, s: int, t: int, *, return_tables: bool = False
) -> AltRoute | tuple[AltRoute, DPTables | None]:
    """
    Minimum-crossing Hamiltonian alternating path from ``s`` to ``t``.

    Parameters
    ----------
    S : BicoloredSet
        Convex colour sequence.
    s, t : int
        0-based endpoints. Different colours need |R| = |B|; equal colours need
        one extra point of that colour.
    return_tables : bool, default False
        Also return the :class:`DPTables` (``None`` when the dynamic program
        was not needed).

    Returns
    -------
    AltRoute or (AltRoute, DPTables or None)

    Notes
    -----
    Boundary neighbours use the linear-time routine and special configurations
    the dedicated construction. Everything else runs the quadratic interval
    program: a path from the interval's first point either covers the run up
    to its clockwise balance point first, or the run back to its
    counterclockwise balance point; ties go to the clockwise split. The
    counterclockwise split of an interval ``[a, b]`` is anchored at ``a``'s
    colour: it is the largest ``m`` with ``{a}`` plus ``[m, b]`` balanced, and it
    only applies when ``m`` lies beyond the target.
    """
    _check_endpoints(S, s, t)
    h = len(S)
    tables: DPTables | None = None
    if h == 1:
        route = _route(RouteKind.PATH, [s], [])
    elif (t - s) % h in (1, h - 1):
        route = optimum_path_consecutive(S, s, t)
    elif S.colors[s] is not S.colors[t] and is_special(S, s, t):
        route = optimum_path_special(S, s, t)
    else:
        program = _IntervalProgram(S, s, t)
        value = program.solve()
        verts, crossings = program.reconstruct()
        if len(crossings) != value:
            msg = f"reconstruction found {len(crossings)} crossings, tables say {value}"
            raise InternalError(msg)
        logger.debug("interval program %d -> %d on %d points: value %d", s + 1, t + 1, h, value)
        route = _route(RouteKind.PATH, verts, crossings)
        tables = program.tables()
    if return_tables:
        return route, tables
    return route
