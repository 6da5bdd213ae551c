"""End-to-end guarantees checked exhaustively against the oracle, plus timing checks."""

from __future__ import annotations

import itertools
import math
import time
from collections.abc import Callable

import numpy as np
import pytest
import xarray as xr

from altroute import (
    BicoloredSet,
    Direction,
    build_cycle,
    cycle_bound,
    enumerate_min,
    j_pairs,
    optimum_cycle,
    optimum_path,
    verify_route,
)
from altroute.generators import random_general, runs
from altroute.sweeps import certify_cycles, certify_paths, failures

from .test_convex import brute_j


def _balanced_rows(ds: xr.Dataset) -> xr.Dataset:
    seqs = ds["sequence"].values
    keep = [k for k, s in enumerate(seqs) if s.count("R") == s.count("B")]
    return ds.isel(case=keep)


def _check_path_sweep(max_length: int) -> None:
    ds = certify_paths(max_length)
    assert ds.attrs["failures"] == 0, failures(ds)
    balanced = _balanced_rows(ds)
    # a red/blue pair is special exactly when no 1-plane path exists
    np.testing.assert_array_equal(balanced["special"], ~balanced["exists_1plane"])
    special = ds.isel(case=np.nonzero(ds["special"].values)[0])
    assert (special["solver_max_edge"] == 2).all()
    assert (special["solver_doubled_edges"] == 1).all()
    plain = ds.isel(case=np.nonzero(~ds["special"].values)[0])
    assert (plain["solver_max_edge"] <= 1).all()
    assert bool(plain["all_optima_1plane"].all())


def test_cycle_sweep_short() -> None:
    """Test optimum cycles on every balanced sequence of up to eight points."""
    ds = certify_cycles(8)
    assert ds.attrs["failures"] == 0, failures(ds)
    assert (ds["oracle"] == ds["lower_bound"]).all()


@pytest.mark.slow
def test_cycle_sweep_full() -> None:
    """Test optimum cycles on every balanced sequence of up to twelve points."""
    ds = certify_cycles(12)
    assert ds.attrs["failures"] == 0, failures(ds)
    assert (ds["bridges_used"] == ds["bridges_total"]).all()


def test_path_sweep_short() -> None:
    """Test the special-configuration verdict and path optima up to seven points."""
    _check_path_sweep(7)


@pytest.mark.slow
def test_path_sweep_full() -> None:
    """Test the special-configuration verdict and path optima up to twelve points."""
    _check_path_sweep(12)


def test_extremal_runs() -> None:
    """Test the two ends of the crossing range for fifty points of each colour."""
    assert optimum_cycle(runs("R50B50")).crossing_count == 49
    assert optimum_cycle(runs("R1B1*50")).crossing_count == 0


@pytest.mark.slow
def test_j_pairs_exhaustive() -> None:
    """Test the pairing against direct scanning on every balanced sequence up to 14 points."""
    for length in range(2, 15, 2):
        for letters in itertools.product("RB", repeat=length):
            seq = "".join(letters)
            if seq.count("R") != seq.count("B"):
                continue
            S = BicoloredSet.from_sequence(seq)
            for direction in Direction:
                assert j_pairs(S, direction).pairs == brute_j(seq, direction, "R"), seq


@pytest.mark.parametrize("seed", range(60))
def test_random_cycles_short(seed: int) -> None:
    """Test 1-plane cycles within the bound on seeded random point sets."""
    n = 2 + seed % 6
    S = random_general(n, seed=seed)
    report = verify_route(S, build_cycle(S))
    assert report.passed, report.violations
    assert report.max_edge_crossings <= 1
    assert report.crossings <= cycle_bound(S)


@pytest.mark.slow
def test_random_cycles_full() -> None:
    """Test five hundred random instances and compare small ones with the oracle."""
    for seed in range(500):
        n = 2 + seed % 6
        S = random_general(n, seed=1000 + seed)
        route = build_cycle(S)
        report = verify_route(S, route)
        assert report.passed, (seed, report.violations)
        assert report.crossings <= cycle_bound(S)
        if n <= 6 and seed % 10 == 0:
            truth = enumerate_min(S, "cycle", keep=1)
            assert truth.min_crossings is not None
            assert report.crossings >= truth.min_crossings


def _best_time(fn: Callable[[], object], repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


@pytest.mark.slow
def test_build_cycle_scaling() -> None:
    """Test that doubling n up to 2000 costs no more than n squared log n predicts."""
    sizes = (250, 500, 1000, 2000)
    sets = [random_general(n, seed=n) for n in sizes]
    times = [_best_time(lambda S=S: build_cycle(S), repeat=1) for S in sets]
    for (n, small), (_, large) in itertools.pairwise(zip(sizes, times)):
        ratio = 4 * math.log(2 * n) / math.log(n)
        # 15% allowance for timer noise on a single run
        assert large <= 1.15 * ratio * small, (n, small, large)


@pytest.mark.slow
def test_linear_solvers_on_a_million_points() -> None:
    """Test the pairing in under 50 ms and the optimum cycle in under a second."""
    k = 500_000
    S = runs(f"R{k}B{k}")
    assert len(j_pairs(S)) == k
    assert _best_time(lambda: j_pairs(S)) < 0.05
    assert optimum_cycle(S).crossing_count == k - 1
    assert _best_time(lambda: optimum_cycle(S)) < 1.0


@pytest.mark.slow
def test_interval_program_on_1500_points() -> None:
    """Test the quadratic path program on a large convex sequence."""
    rng = np.random.default_rng(0)
    seq = "".join(rng.permutation(list("R" * 750 + "B" * 750)))
    S = BicoloredSet.from_sequence(seq)
    s = seq.index("R")
    t = next(k for k in range(len(seq) - 1, s + 1, -1) if seq[k] == "B")
    start = time.perf_counter()
    route = optimum_path(S, s, t)
    assert time.perf_counter() - start < 30.0
    assert verify_route(S, route).passed
