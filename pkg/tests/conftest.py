"""Pytest fixtures for altroute tests."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path

import pytest
from hypothesis import strategies as st

from altroute import BicoloredSet, Color, ColoredPoint

InstanceWriter = Callable[[str, str], Path]


def balanced_sequences(min_n: int = 1, max_n: int = 6) -> st.SearchStrategy[str]:
    """Colour strings with as many R as B, n points of each colour."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations("R" * n + "B" * n).map("".join)
    )


@pytest.fixture
def square() -> BicoloredSet:
    """Four points on a square, alternating in colour around it."""
    return BicoloredSet.from_points(
        [
            ColoredPoint(0, 0, Color.RED),
            ColoredPoint(10, 0, Color.BLUE),
            ColoredPoint(10, 10, Color.RED),
            ColoredPoint(0, 10, Color.BLUE),
        ]
    )


@pytest.fixture
def square_with_center() -> BicoloredSet:
    """A red square with two blue points inside and one on top of it."""
    return BicoloredSet.from_points(
        [
            ColoredPoint(0, 0, Color.RED),
            ColoredPoint(10, 0, Color.RED),
            ColoredPoint(10, 10, Color.RED),
            ColoredPoint(0, 10, Color.BLUE),
            ColoredPoint(3, 4, Color.BLUE),
            ColoredPoint(6, 7, Color.BLUE),
        ]
    )


@pytest.fixture
def write_file(tmp_path: Path) -> InstanceWriter:
    """Write text to a file under ``tmp_path`` and return its path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
