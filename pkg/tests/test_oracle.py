"""Tests for exhaustive search and crossing-removing swaps."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altroute import (
    AltRoute,
    BicoloredSet,
    PreconditionViolated,
    RouteKind,
    TooLarge,
    enumerate_min,
)
from altroute.oracle import (
    OracleResult,
    exists_one_plane,
    quadrangular_swap,
    reduce_crossings,
    visiting_order_holds,
)

from .conftest import balanced_sequences


def test_enumerate_cycles() -> None:
    """Test the minimum crossings of the two 4-point patterns."""
    blocks = enumerate_min(BicoloredSet.from_sequence("RRBB"), "cycle")
    assert blocks.min_crossings == 1
    assert blocks.exists_1plane
    assert blocks.all_optima_1plane
    assert blocks.n_optima == 1
    assert blocks.optimal_routes[0].vertices == (0, 2, 1, 3)

    alternating = enumerate_min(BicoloredSet.from_sequence("RBRB"), RouteKind.CYCLE)
    assert alternating.min_crossings == 0


def test_enumerate_special_path() -> None:
    """Test that a special configuration has no 1-plane path."""
    S = BicoloredSet.from_sequence("RRRBBB")
    result = enumerate_min(S, "path", (1, 4))
    assert result.min_crossings == 2
    assert not result.exists_1plane
    assert not result.all_optima_1plane
    assert not exists_one_plane(S, "path", (1, 4))
    assert exists_one_plane(S, "path", (0, 3))


def test_enumerate_free_endpoints(square: BicoloredSet) -> None:
    """Test paths without fixed endpoints in general position."""
    result = enumerate_min(square, "path")
    assert result.min_crossings == 0
    assert all(len(r.vertices) == 4 for r in result.optimal_routes)


def test_enumerate_infeasible() -> None:
    """Test that colour counts without any alternating route give None."""
    assert enumerate_min(BicoloredSet.from_sequence("RRRB"), "cycle").min_crossings is None
    assert enumerate_min(BicoloredSet.from_sequence("RRBB"), "path", (0, 1)).min_crossings is None
    assert not exists_one_plane(BicoloredSet.from_sequence("RRRB"), "cycle")


def test_enumerate_refuses_large_sets() -> None:
    """Test the size cap."""
    with pytest.raises(TooLarge):
        enumerate_min(BicoloredSet.from_sequence("RB" * 3), "cycle", max_points=4)


def test_quadrangular_swap_removes_crossing() -> None:
    """Test the swap on two crossing chords whose inner ends share a colour."""
    S = BicoloredSet.from_sequence("RBRBRB")
    route = AltRoute.measured(S, "path", [0, 1, 4, 3, 2, 5])
    assert route.crossing_count == 1
    swapped = quadrangular_swap(S, route, (1, 4), (2, 5))
    assert swapped.vertices == (0, 1, 2, 3, 4, 5)
    assert swapped.crossing_count == 0


def test_quadrangular_swap_preconditions() -> None:
    """Test colour, crossing and membership checks."""
    S = BicoloredSet.from_sequence("RRBB")
    cycle = AltRoute.measured(S, "cycle", [0, 2, 1, 3])
    with pytest.raises(PreconditionViolated, match="differ in colour"):
        quadrangular_swap(S, cycle, (0, 2), (1, 3))
    with pytest.raises(PreconditionViolated, match="do not cross"):
        quadrangular_swap(S, cycle, (1, 2), (0, 3))
    with pytest.raises(PreconditionViolated, match="not in the route"):
        quadrangular_swap(S, cycle, (0, 1), (1, 3))


def test_reduce_crossings() -> None:
    """Test that repeated swaps never increase the crossing count."""
    S = BicoloredSet.from_sequence("RBRBRB")
    path = AltRoute(RouteKind.PATH, (0, 1, 4, 3, 2, 5))
    assert reduce_crossings(S, path).crossing_count == 0

    cycle = AltRoute(RouteKind.CYCLE, (0, 3, 2, 5, 4, 1))
    reduced = reduce_crossings(S, cycle)
    assert reduced.crossing_count <= 3
    assert sorted(reduced.vertices) == list(range(6))


def test_visiting_order() -> None:
    """Test the forced visiting order on a 1-plane path that starts with a chord."""
    S = BicoloredSet.from_sequence("RBRBRB")
    route = AltRoute(RouteKind.PATH, (0, 3, 4, 5, 2, 1))
    assert visiting_order_holds(S, route)


def test_visiting_order_preconditions(square: BicoloredSet) -> None:
    """Test that only convex 1-plane paths opening with a chord qualify."""
    S = BicoloredSet.from_sequence("RBRBRB")
    with pytest.raises(PreconditionViolated, match="boundary edge"):
        visiting_order_holds(S, AltRoute(RouteKind.PATH, (0, 1, 2, 3, 4, 5)))
    with pytest.raises(PreconditionViolated, match="convex"):
        visiting_order_holds(square, AltRoute(RouteKind.PATH, (0, 1, 2, 3)))
    with pytest.raises(PreconditionViolated, match="not 1-plane"):
        visiting_order_holds(S, AltRoute(RouteKind.PATH, (0, 3, 2, 5, 4, 1)))
    with pytest.raises(PreconditionViolated, match="at least three"):
        visiting_order_holds(S, AltRoute(RouteKind.CYCLE, (0, 3, 4, 5, 2, 1)))


def _summary(result: OracleResult) -> tuple[int | None, int, bool, bool]:
    return (result.min_crossings, result.n_optima, result.exists_1plane,
            result.all_optima_1plane)


@settings(max_examples=30, deadline=None)
@given(balanced_sequences(min_n=1, max_n=4), st.integers(0, 7), st.data())
def test_enumerate_ignores_rotation_and_reflection(
    seq: str, shift: int, data: st.DataObject
) -> None:
    """Test that relabelling a convex sequence leaves the optimum unchanged."""
    h = len(seq)
    k = shift % h
    rotated = seq[k:] + seq[:k]
    mirrored = seq[::-1]
    S = BicoloredSet.from_sequence(seq)
    cycle = _summary(enumerate_min(S, "cycle"))
    assert _summary(enumerate_min(BicoloredSet.from_sequence(rotated), "cycle")) == cycle
    assert _summary(enumerate_min(BicoloredSet.from_sequence(mirrored), "cycle")) == cycle

    a = data.draw(st.sampled_from([i for i, c in enumerate(seq) if c == "R"]))
    b = data.draw(st.sampled_from([i for i, c in enumerate(seq) if c == "B"]))
    path = _summary(enumerate_min(S, "path", (a, b)))
    turned = enumerate_min(BicoloredSet.from_sequence(rotated), "path", ((a - k) % h, (b - k) % h))
    assert _summary(turned) == path
    flipped = enumerate_min(BicoloredSet.from_sequence(mirrored), "path", (h - 1 - a, h - 1 - b))
    assert _summary(flipped) == path


@settings(max_examples=40, deadline=None)
@given(balanced_sequences(min_n=2, max_n=4))
def test_visiting_order_on_one_plane_optima(seq: str) -> None:
    """Test the forced visiting order on every 1-plane optimum that opens with a chord."""
    S = BicoloredSet.from_sequence(seq)
    h = len(seq)
    result = enumerate_min(S, "path", keep=10**6)
    assert len(result.optimal_routes) == result.n_optima
    for route in result.optimal_routes:
        if not route.is_one_plane:
            continue
        for oriented in (route, route.reversed()):
            first, second = oriented.vertices[:2]
            if (second - first) % h in (1, h - 1):
                continue
            assert visiting_order_holds(S, oriented), oriented.vertices
