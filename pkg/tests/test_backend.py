"""Tests for xarray backend integration."""

from __future__ import annotations

import xarray as xr

from altroute import open_instance_dataset
from altroute.backend import AltrouteBackendEntrypoint

from .conftest import InstanceWriter

SQUARE = "0 0 R\n10 0 B\n10 10 R\n0 10 B\n"


def test_backend_registered() -> None:
    """Test that the altroute backend is registered with xarray."""
    import xarray.backends.plugins as plugins

    backend = plugins.get_backend("altroute")
    assert backend is not None
    assert backend.description == "Open red/blue point instance files (altroute format) in xarray"


def test_open_dataset_with_backend(write_file: InstanceWriter) -> None:
    """Test opening an instance through xarray."""
    path = write_file("square.alt", SQUARE)
    ds = xr.open_dataset(path, engine="altroute")
    assert ds.sizes["point"] == 4
    assert {"x", "y", "color", "on_hull", "run_id"} <= set(ds.data_vars)
    assert ds.attrs["mode"] == "general"


def test_open_dataset_convex_option(write_file: InstanceWriter) -> None:
    """Test the convex renumbering option through the backend."""
    path = write_file("square.txt", "0 0 R\n10 10 R\n10 0 B\n0 10 B\n")
    ds = xr.open_dataset(path, engine="altroute", convex=True)
    assert ds.attrs["mode"] == "convex"
    assert "".join(ds["color"].values.tolist()) == "BRBR"


def test_drop_variables(write_file: InstanceWriter) -> None:
    """Test that requested variables are dropped."""
    path = write_file("square.alt", SQUARE)
    ds = xr.open_dataset(path, engine="altroute", drop_variables=["run_id"])
    assert "run_id" not in ds.data_vars


def test_backend_vs_direct_function(write_file: InstanceWriter) -> None:
    """Test that the backend matches the direct reader."""
    path = write_file("rrbb.alt", "endpoints: 1 3\nconvex: RRBB\n")
    via_backend = xr.open_dataset(path, engine="altroute")
    direct = open_instance_dataset(path)
    xr.testing.assert_identical(via_backend, direct)


def test_guess_can_open(write_file: InstanceWriter) -> None:
    """Test extension and content sniffing."""
    entry = AltrouteBackendEntrypoint()
    assert entry.guess_can_open("anything.alt")
    assert entry.guess_can_open(write_file("points.txt", SQUARE))
    assert entry.guess_can_open(str(write_file("convex.txt", "convex: RB\n")))
    assert not entry.guess_can_open(write_file("route.txt", "cycle\n1 2\n"))
    assert not entry.guess_can_open(write_file("notes.txt", "hello\n"))
    assert not entry.guess_can_open("missing.txt")
    assert not entry.guess_can_open("image.zarr")
    assert not entry.guess_can_open(42)
