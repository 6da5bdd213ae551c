"""Utilities for recognising instance and route text files."""

from __future__ import annotations

from collections.abc import Iterator

CONVEX_PREFIX = "convex:"
ENDPOINTS_PREFIX = "endpoints:"
ROUTE_HEADERS = ("cycle", "path")


def meaningful_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, stripped_line)`` skipping blanks and ``#`` comments."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def detect_instance_kind(text: str) -> str:
    """
    Detect what a text file holds by inspecting its first meaningful line.

    Parameters
    ----------
    text : str
        File contents.

    Returns
    -------
    str
        'convex', 'points', 'route' or 'unknown'.

    Notes
    -----
    ``endpoints:`` annotations are skipped since they may precede the data.
    Only the shape of the line is checked; full validation is the parser's job.
    """
    for _, line in meaningful_lines(text):
        lowered = line.lower()
        if lowered.startswith(ENDPOINTS_PREFIX):
            continue
        if lowered.startswith(CONVEX_PREFIX):
            return "convex"
        tokens = line.split()
        if tokens[0].lower() in ROUTE_HEADERS:
            return "route"
        if len(tokens) == 3 and tokens[2] in ("R", "B"):
            try:
                int(tokens[0])
                int(tokens[1])
            except ValueError:
                return "unknown"
            return "points"
        return "unknown"
    return "unknown"
