"""SVG drawings of point sets and routes with matplotlib's SVG backend."""

from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib as mpl
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .geometry import Color
from .routes import AltRoute, Edge
from .transforms import to_canvas

if TYPE_CHECKING:
    from .model import BicoloredSet

logger = logging.getLogger(__name__)

RED = "#c0392b"
BLUE = "#2c5aa0"
EDGE = "#555555"
CROSSING = "#111111"
HASH_SALT = "altroute"


def _intersection(P: np.ndarray, e: Edge, f: Edge) -> tuple[float, float]:
    a, b = P[e[0]], P[e[1]]
    c, d = P[f[0]], P[f[1]]
    r, s = b - a, d - c
    denom = r[0] * s[1] - r[1] * s[0]
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom
    x, y = a + t * r
    return float(x), float(y)


def render_svg(
    S: BicoloredSet,
    route: AltRoute | None = None,
    *,
    size: float = 480.0,
    title: str | None = None,
) -> str:
    """
    Draw a set and optionally a route as an SVG document.

    Parameters
    ----------
    S : BicoloredSet
    route : AltRoute, optional
        Drawn under the points. Crossings are recomputed when the route does
        not carry them.
    size : float, default 480.0
        Width and height in points.
    title : str, optional
        Stored in the SVG metadata.

    Returns
    -------
    str
        SVG 1.1 text. Red points are filled, blue points hollow, each crossing
        gets an ``x`` mark. Elements carry ids ``point-i``, ``edge-i-j`` and
        ``crossing-k`` (1-based). Output is byte-identical for equal input.
    """
    P = to_canvas(S.points, size=size)
    with mpl.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        fig = Figure(figsize=(size / 72, size / 72), dpi=72)
        FigureCanvasSVG(fig)
        ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
        ax.set_xlim(0, size)
        ax.set_ylim(0, size)
        ax.set_aspect("equal")
        ax.axis("off")

        if route is not None and len(route.vertices) > 1:
            if route.crossings is None:
                route = AltRoute.measured(S, route.kind, route.vertices)
            for u, v in route.edges:
                ax.plot(
                    [P[u, 0], P[v, 0]], [P[u, 1], P[v, 1]],
                    color=EDGE, linewidth=1.2, zorder=1, gid=f"edge-{u + 1}-{v + 1}",
                )
            for k, (e, f) in enumerate(route.crossings or (), start=1):
                x, y = _intersection(P, e, f)
                ax.plot(
                    [x], [y], marker="x", markersize=7, color=CROSSING,
                    linestyle="none", zorder=2, gid=f"crossing-{k}",
                )

        for i, c in enumerate(S.colors):
            face = RED if c is Color.RED else "none"
            edge = RED if c is Color.RED else BLUE
            ax.plot(
                [P[i, 0]], [P[i, 1]], marker="o", markersize=7, markerfacecolor=face,
                markeredgecolor=edge, markeredgewidth=1.5, linestyle="none", zorder=3,
                gid=f"point-{i + 1}",
            )

        buf = io.StringIO()
        metadata: dict[str, str | None] = {"Date": None}
        if title is not None:
            metadata["Title"] = title
        fig.savefig(buf, format="svg", metadata=metadata)
    logger.debug("rendered %d points", len(S))
    return buf.getvalue()


def write_svg(
    path: str | Path,
    S: BicoloredSet,
    route: AltRoute | None = None,
    *,
    title: str | None = None,
) -> None:
    """Write :func:`render_svg` output to ``path``."""
    Path(path).write_text(render_svg(S, route, title=title))
