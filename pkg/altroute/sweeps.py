"""Exhaustive certification sweeps over short convex colour sequences.

Each sweep solves every case with the convex solvers, asks the oracle for the
true optimum and returns one :class:`xarray.Dataset` row per case, so the
results can be filtered, summarised or written to netCDF.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator

import numpy as np
import xarray as xr

from .convex import optimum_cycle, optimum_path
from .model import BicoloredSet, is_special, lower_bound
from .oracle import DEFAULT_MAX_POINTS, enumerate_min

logger = logging.getLogger(__name__)


def _canonical(seq: str) -> str:
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def necklaces(length: int, *, balance: tuple[int, ...] = (0,)) -> list[str]:
    """
    Colour sequences of ``length`` up to rotation.

    Parameters
    ----------
    length : int
    balance : tuple of int, default (0,)
        Allowed values of ``#R - #B``.

    Returns
    -------
    list of str
        The lexicographically smallest rotation of each class, sorted.
    """
    found: set[str] = set()
    for letters in itertools.product("BR", repeat=length):
        seq = "".join(letters)
        if seq.count("R") - seq.count("B") in balance:
            found.add(_canonical(seq))
    return sorted(found)


def _path_cases(seq: str) -> Iterator[tuple[int, int]]:
    h = len(seq)
    reds = seq.count("R")
    blues = h - reds
    for s, t in itertools.combinations(range(h), 2):
        if reds == blues and seq[s] != seq[t]:
            yield s, t
        elif reds != blues and seq[s] == seq[t] == ("R" if reds > blues else "B"):
            yield s, t


def certify_cycles(
    max_length: int = 12, *, min_length: int = 4, max_points: int = DEFAULT_MAX_POINTS
) -> xr.Dataset:
    """
    Compare the linear-time optimum cycle with the oracle on every balanced sequence.

    Returns
    -------
    xr.Dataset
        Dimension ``sequence``; variables ``solver``, ``oracle``,
        ``lower_bound``, ``bridges_total``, ``bridges_used``, ``one_plane`` and
        ``agrees``.
    """
    rows: dict[str, list[object]] = {
        k: []
        for k in (
            "sequence", "solver", "oracle", "lower_bound",
            "bridges_total", "bridges_used", "one_plane",
        )
    }
    for length in range(min_length, max_length + 1, 2):
        for seq in necklaces(length):
            S = BicoloredSet.from_sequence(seq)
            route = optimum_cycle(S)
            edges = set(route.edges)
            bridges = [tuple(sorted(b)) for b in S.run_structure.bridges]
            truth = enumerate_min(S, "cycle", max_points=max_points, keep=1)
            rows["sequence"].append(seq)
            rows["solver"].append(route.crossing_count)
            rows["oracle"].append(-1 if truth.min_crossings is None else truth.min_crossings)
            rows["lower_bound"].append(lower_bound(S))
            rows["bridges_total"].append(len(bridges))
            rows["bridges_used"].append(sum(b in edges for b in bridges))
            rows["one_plane"].append(route.is_one_plane)
        logger.info("cycles of length %d certified", length)
    return _to_dataset("sequence", rows, _cycle_agreement)


def _cycle_agreement(ds: xr.Dataset) -> xr.DataArray:
    return (
        (ds["solver"] == ds["oracle"])
        & (ds["solver"] == ds["lower_bound"])
        & (ds["bridges_used"] == ds["bridges_total"])
        & ds["one_plane"]
    )


def certify_paths(
    max_length: int = 10, *, min_length: int = 2, max_points: int = DEFAULT_MAX_POINTS
) -> xr.Dataset:
    """
    Compare the optimum-path solvers with the oracle for every valid endpoint pair.

    Sequences with ``#R - #B`` in {-1, 0, 1} are enumerated up to rotation.
    Opposite colours are paired on balanced sequences and two points of the
    majority colour otherwise.

    Returns
    -------
    xr.Dataset
        Dimension ``case`` with coordinates ``sequence``, ``start`` and
        ``end`` (1-based). Variables: ``special``, ``solver``, ``oracle``,
        ``exists_1plane``, ``all_optima_1plane``, ``solver_max_edge``,
        ``solver_doubled_edges`` and ``agrees``.
    """
    names = (
        "sequence", "start", "end", "special", "solver", "oracle", "exists_1plane",
        "all_optima_1plane", "solver_max_edge", "solver_doubled_edges",
    )
    rows: dict[str, list[object]] = {k: [] for k in names}
    for length in range(min_length, max_length + 1):
        for seq in necklaces(length, balance=(-1, 0, 1)):
            S = BicoloredSet.from_sequence(seq)
            for s, t in _path_cases(seq):
                special = S.is_balanced and is_special(S, s, t)
                route = optimum_path(S, s, t)
                truth = enumerate_min(S, "path", (s, t), max_points=max_points, keep=1)
                per_edge = route.per_edge_crossings.values()
                rows["sequence"].append(seq)
                rows["start"].append(s + 1)
                rows["end"].append(t + 1)
                rows["special"].append(special)
                rows["solver"].append(route.crossing_count)
                rows["oracle"].append(-1 if truth.min_crossings is None else truth.min_crossings)
                rows["exists_1plane"].append(truth.exists_1plane)
                rows["all_optima_1plane"].append(truth.all_optima_1plane)
                rows["solver_max_edge"].append(route.max_edge_crossings)
                rows["solver_doubled_edges"].append(sum(c >= 2 for c in per_edge))
        logger.info("paths of length %d certified", length)
    return _to_dataset("case", rows, _path_agreement)


def _path_agreement(ds: xr.Dataset) -> xr.DataArray:
    special = ds["special"]
    plain = (ds["solver_max_edge"] <= 1) & ds["all_optima_1plane"] & ds["exists_1plane"]
    doubled = (
        (ds["solver_max_edge"] == 2) & (ds["solver_doubled_edges"] == 1) & ~ds["exists_1plane"]
    )
    return (ds["solver"] == ds["oracle"]) & ((special & doubled) | (~special & plain))


def _to_dataset(
    dim: str,
    rows: dict[str, list[object]],
    agreement: Callable[[xr.Dataset], xr.DataArray],
) -> xr.Dataset:
    coords = {k: (dim, np.asarray(rows.pop(k))) for k in ("sequence", "start", "end") if k in rows}
    data = {k: (dim, np.asarray(v)) for k, v in rows.items()}
    ds = xr.Dataset(data, coords=coords)
    ds["agrees"] = agreement(ds)
    ds.attrs["cases"] = int(ds.sizes[dim])
    ds.attrs["failures"] = int((~ds["agrees"]).sum())
    return ds


def failures(ds: xr.Dataset) -> list[str]:
    """Human-readable rows of a sweep whose ``agrees`` flag is false."""
    dim = next(iter(ds["agrees"].dims))
    bad = ds.isel({dim: np.nonzero(~ds["agrees"].values)[0]})
    out = []
    for k in range(bad.sizes[dim]):
        row = bad.isel({dim: k})
        parts = [f"{name}={row[name].item()}" for name in bad.variables if name != "agrees"]
        out.append(", ".join(parts))
    return out
