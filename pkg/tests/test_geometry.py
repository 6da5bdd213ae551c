"""Tests for exact predicates, hulls, radial orders and visibility."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altroute import Color, ColoredPoint, DegenerateInput, Direction, convex_hull
from altroute._errors import PointInsideHull, PreconditionViolated
from altroute.generators import random_general
from altroute.geometry import (
    assert_general_position,
    orientation,
    radial_order,
    segments_cross,
    tangents_from,
    visible_points,
)

R, B = Color.RED, Color.BLUE


def p(x: int, y: int, c: Color = R) -> ColoredPoint:
    return ColoredPoint(x, y, c)


SQUARE = [p(0, 0), p(10, 0, B), p(10, 10), p(0, 10, B)]


def test_color_helpers() -> None:
    """Test colour negation and balance signs."""
    assert R.other is B
    assert B.other is R
    assert R.sign == 1
    assert B.sign == -1
    assert Direction.CW.reverse is Direction.CCW


def test_orientation() -> None:
    """Test turn signs, including a collinear triple."""
    assert orientation(p(0, 0), p(1, 0), p(0, 1)) == 1
    assert orientation(p(0, 0), p(0, 1), p(1, 0)) == -1
    assert orientation(p(0, 0), p(1, 1), p(2, 2)) == 0


def test_orientation_large_coordinates() -> None:
    """Test that 64-bit sized coordinates do not lose precision."""
    big = 2**62
    assert orientation(p(0, 0), p(big, big - 1), p(big - 1, big - 2)) == -1
    assert orientation(p(0, 0), p(big, big - 1), p(big - 1, big - 1)) == 1


def test_segments_cross() -> None:
    """Test proper crossings and shared endpoints."""
    a, b, c, d = SQUARE
    assert segments_cross((a, c), (b, d))
    assert not segments_cross((a, b), (b, c))
    assert not segments_cross((a, b), (c, d))


@given(st.lists(st.integers(-50, 50), min_size=8, max_size=8))
def test_segments_cross_symmetric(v: list[int]) -> None:
    """Test that crossing does not depend on segment or endpoint order."""
    a, b, c, d = p(v[0], v[1]), p(v[2], v[3]), p(v[4], v[5]), p(v[6], v[7])
    expected = segments_cross((a, b), (c, d))
    assert segments_cross((c, d), (a, b)) == expected
    assert segments_cross((b, a), (d, c)) == expected


def test_convex_hull_counterclockwise() -> None:
    """Test that the hull lists vertices counterclockwise and skips interior points."""
    hull = convex_hull([*SQUARE, p(3, 4)])
    assert hull.vertices == (0, 1, 2, 3)
    assert 4 not in hull
    assert hull.neighbors(0) == (3, 1)
    assert hull.adjacent(0, 1)
    assert not hull.adjacent(0, 2)


def test_convex_hull_rejects_collinear() -> None:
    """Test that collinear boundary points raise in general-position mode."""
    pts = [p(0, 0), p(1, 1), p(2, 2), p(0, 5)]
    with pytest.raises(DegenerateInput, match="collinear"):
        convex_hull(pts)


def test_convex_hull_small_inputs() -> None:
    """Test one and two points, and duplicates."""
    assert convex_hull([p(3, 3)]).vertices == (0,)
    assert convex_hull([p(5, 0), p(0, 0)]).vertices == (1, 0)
    with pytest.raises(DegenerateInput, match="duplicate"):
        convex_hull([p(1, 1), p(1, 1, B)])
    with pytest.raises(PreconditionViolated):
        convex_hull([])


def test_assert_general_position() -> None:
    """Test that interior collinear triples are found too."""
    assert_general_position(SQUARE)
    with pytest.raises(DegenerateInput):
        assert_general_position([*SQUARE, p(5, 5)])
    with pytest.raises(DegenerateInput, match="duplicate"):
        assert_general_position([*SQUARE, p(0, 0, B)])


def test_radial_order_directions() -> None:
    """Test both sweep directions around a hull vertex."""
    others = SQUARE[1:]
    assert radial_order(others, SQUARE[0], Direction.CCW) == [0, 1, 2]
    assert radial_order(others, SQUARE[0], "cw") == [2, 1, 0]


def test_radial_order_needs_hull_vertex() -> None:
    """Test that a viewpoint inside the hull is rejected."""
    triangle = [p(0, 0), p(10, 0), p(0, 10)]
    with pytest.raises(PreconditionViolated, match="not on the convex hull"):
        radial_order(triangle, p(2, 2))


def test_radial_order_collinear() -> None:
    """Test that two points in line with the center raise."""
    with pytest.raises(DegenerateInput):
        radial_order([p(1, 1), p(2, 2), p(5, 0)], p(0, 0))


def test_visible_points() -> None:
    """Test the visible arc from a point right of the square."""
    assert visible_points(SQUARE, p(20, 5)) == [1, 2]
    assert tangents_from(SQUARE, p(20, 5)) == (1, 2)
    # below the bottom-right corner both lower and right edges face the point
    assert visible_points(SQUARE, p(20, -5)) == [0, 1, 2]


def test_visible_points_rejects_inside_and_boundary() -> None:
    """Test viewpoints inside, on and in line with the hull."""
    with pytest.raises(PointInsideHull):
        visible_points(SQUARE, p(5, 4))
    with pytest.raises(PointInsideHull):
        visible_points(SQUARE, p(5, 0))
    with pytest.raises(DegenerateInput):
        visible_points(SQUARE, p(20, 0))


def test_visible_points_tiny_sets() -> None:
    """Test that one or two points are always fully visible."""
    assert visible_points([p(0, 0)], p(3, 1)) == [0]
    assert visible_points([p(0, 0), p(4, 0)], p(1, 3)) == [0, 1]


@given(st.lists(st.integers(-50, 50), min_size=6, max_size=6))
def test_orientation_antisymmetric(v: list[int]) -> None:
    """Test that swapping two points flips the turn and rotating keeps it."""
    a, b, c = p(v[0], v[1]), p(v[2], v[3]), p(v[4], v[5])
    turn = orientation(a, b, c)
    assert orientation(b, a, c) == -turn
    assert orientation(a, c, b) == -turn
    assert orientation(b, c, a) == turn


@given(st.integers(3, 12), st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_convex_hull_ignores_input_order(count: int, seed: int, rnd: random.Random) -> None:
    """Test that shuffling the input gives the same boundary in the same cyclic order."""
    pts = list(random_general(count, 0, seed=seed).points)
    shuffled = pts[:]
    rnd.shuffle(shuffled)

    def ring(points: list[ColoredPoint]) -> list[tuple[int, int]]:
        coords = [(points[i].x, points[i].y) for i in convex_hull(points).vertices]
        k = coords.index(min(coords))
        return coords[k:] + coords[:k]

    assert ring(shuffled) == ring(pts)


@given(st.integers(4, 12), st.integers(0, 10**6), st.data())
def test_visible_points_match_segment_tests(count: int, seed: int, data: st.DataObject) -> None:
    """Test the visible arc against crossing tests with every hull edge."""
    pts = list(random_general(count, 0, seed=seed).points)
    outer = convex_hull(pts).vertices
    x = pts[data.draw(st.sampled_from(outer))]
    rest = [q for q in pts if q != x]
    vs = convex_hull(rest).vertices
    edges = [(rest[vs[k]], rest[vs[(k + 1) % len(vs)]]) for k in range(len(vs))]
    expected = {i for i in vs if not any(segments_cross((x, rest[i]), e) for e in edges)}
    arc = visible_points(rest, x)
    assert set(arc) == expected
    # the arc runs counterclockwise along the hull
    k = vs.index(arc[0])
    assert list(arc) == [vs[(k + t) % len(vs)] for t in range(len(arc))]
