"""altroute: 1-plane Hamiltonian alternating cycles and paths on red/blue point sets."""

try:
    from ._version import __version__
except ImportError:
    __version__ = "unknown"

from ._errors import (
    AltrouteError,
    DegenerateInput,
    InternalError,
    ParseError,
    PointInsideHull,
    PreconditionViolated,
    SpecialConfiguration,
    TooLarge,
)
from .builder import build_cycle, build_path
from .convex import j_pairs, optimum_cycle, optimum_path
from .geometry import Color, ColoredPoint, Direction, convex_hull
from .model import BicoloredSet, cycle_bound, is_special, lower_bound, path_bound
from .oracle import enumerate_min
from .reader import open_instance_dataset, read_instance, read_route
from .render import render_svg
from .routes import AltRoute, RouteKind, verify_route
from .writer import write_instance, write_route

__all__ = [
    "__version__",
    "AltRoute",
    "AltrouteError",
    "BicoloredSet",
    "Color",
    "ColoredPoint",
    "DegenerateInput",
    "Direction",
    "InternalError",
    "ParseError",
    "PointInsideHull",
    "PreconditionViolated",
    "RouteKind",
    "SpecialConfiguration",
    "TooLarge",
    "build_cycle",
    "build_path",
    "convex_hull",
    "cycle_bound",
    "enumerate_min",
    "is_special",
    "j_pairs",
    "lower_bound",
    "open_instance_dataset",
    "optimum_cycle",
    "optimum_path",
    "path_bound",
    "read_instance",
    "read_route",
    "render_svg",
    "verify_route",
    "write_instance",
    "write_route",
]
