"""Tests for the command line interface."""

from __future__ import annotations

import json
import re
from pathlib import Path

import pytest

from altroute import InternalError, RouteKind, read_instance, read_route, verify_route
from altroute import cli
from altroute.cli import EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, main

from .conftest import InstanceWriter

SQUARE = "0 0 R\n10 0 B\n10 10 R\n0 10 B\n"


def test_gen_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that gen prints the instance when no file is given."""
    assert main(["gen", "--family", "runs", "--pattern", "R2B2"]) == EXIT_OK
    assert capsys.readouterr().out == "convex: RRBB\n"


def test_gen_to_file(tmp_path: Path) -> None:
    """Test a random instance written to disk."""
    out = tmp_path / "random.alt"
    assert main(["gen", "-n", "4", "--seed", "2", "--out", str(out)]) == EXIT_OK
    S = read_instance(out).points
    assert (S.n_red, S.n_blue) == (4, 4)


def test_cycle_json(write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]) -> None:
    """Test a cycle on a point file with a JSON report."""
    path = write_file("square.alt", SQUARE)
    assert main(["cycle", str(path), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["instance"] == str(path)
    assert data["kind"] == "cycle"
    assert data["passed"] is True
    assert data["crossings"] == 0


def test_cycle_text_summary(write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the one-line summary of a convex instance."""
    path = write_file("rrbb.alt", "convex: RRBB\n")
    assert main(["-q", "cycle", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "crossings=1" in out
    assert out.rstrip().endswith("PASS")


def test_path_writes_route_and_svg(write_file: InstanceWriter, tmp_path: Path) -> None:
    """Test the route file and drawing of a path between two given points."""
    path = write_file("square.alt", SQUARE)
    route_file = tmp_path / "square.route"
    svg_file = tmp_path / "square.svg"
    code = main(
        ["path", str(path), "--from", "1", "--to", "2", "--out", str(route_file),
         "--svg", str(svg_file)]
    )
    assert code == EXIT_OK
    route = read_route(route_file)
    assert route.kind is RouteKind.PATH
    assert (route.vertices[0], route.vertices[-1]) == (0, 1)
    assert verify_route(read_instance(path).points, route).passed
    assert 'id="point-1"' in svg_file.read_text()


def test_path_with_convex_renumbering(
    write_file: InstanceWriter, tmp_path: Path
) -> None:
    """Test that --convex keeps endpoints and routes in file numbering."""
    path = write_file("square.txt", "0 0 R\n10 10 R\n10 0 B\n0 10 B\n")
    route_file = tmp_path / "square.route"
    code = main(["path", str(path), "--convex", "--from", "1", "--to", "3",
                 "--out", str(route_file)])
    assert code == EXIT_OK
    route = read_route(route_file)
    assert (route.vertices[0], route.vertices[-1]) == (0, 2)
    assert main(["check", str(path), str(route_file), "--convex"]) == EXIT_OK


def test_special_convex_path(
    write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that a special configuration passes with one edge crossed twice."""
    path = write_file("special.alt", "endpoints: 2 5\nconvex: RRRBBB\n")
    assert main(["path", str(path), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["special"] is True
    assert data["max_edge_crossings"] == 2
    assert data["crossings"] == 2


def test_path_needs_endpoints(write_file: InstanceWriter) -> None:
    """Test missing or half-given endpoints."""
    path = write_file("square.alt", SQUARE)
    assert main(["path", str(path)]) == EXIT_INPUT
    assert main(["path", str(path), "--from", "1"]) == EXIT_INPUT
    assert main(["path", str(path), "--from", "1", "--to", "9"]) == EXIT_INPUT


def test_parse_error_exit_code(
    write_file: InstanceWriter, caplog: pytest.LogCaptureFixture
) -> None:
    """Test that malformed input exits with the input error code."""
    path = write_file("bad.alt", "0 0 R\n1 x B\n")
    assert main(["cycle", str(path)]) == EXIT_INPUT
    assert "line 2, column 3" in caplog.text


def test_missing_file(tmp_path: Path) -> None:
    """Test that unreadable files are input errors."""
    assert main(["cycle", str(tmp_path / "nope.alt")]) == EXIT_INPUT


def test_check_pass_and_fail(write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]) -> None:
    """Test route verification from files."""
    path = write_file("square.alt", SQUARE)
    good = write_file("good.route", "cycle\n1 2 3 4\n")
    bad = write_file("bad.route", "cycle\n1 3 2 4\n")
    assert main(["check", str(path), str(good)]) == EXIT_OK
    capsys.readouterr()
    assert main(["check", str(path), str(bad), "--json"]) == EXIT_FAILED
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False
    assert data["checks"]["alternating"] is False


def test_several_instances_in_parallel(
    write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that --jobs solves every instance and reports them in order."""
    a = write_file("a.alt", SQUARE)
    b = write_file("b.alt", "convex: RRRBBB\n")
    assert main(["cycle", str(a), str(b), "--jobs", "2", "--json"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)["reports"]
    assert [r["instance"] for r in reports] == [str(a), str(b)]
    assert all(r["passed"] for r in reports)


def test_out_needs_single_instance(write_file: InstanceWriter, tmp_path: Path) -> None:
    """Test that --out refuses several instances."""
    a = write_file("a.alt", SQUARE)
    b = write_file("b.alt", SQUARE)
    assert main(["cycle", str(a), str(b), "--out", str(tmp_path / "r")]) == EXIT_INPUT


def test_internal_error_exit_code(
    write_file: InstanceWriter, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Test that a broken construction assumption exits with code 3."""

    def broken(*args: object, **kwargs: object) -> None:
        raise InternalError("no candidate split")

    monkeypatch.setattr(cli, "solve", broken)
    path = write_file("square.alt", SQUARE)
    assert main(["cycle", str(path)]) == EXIT_INTERNAL


def test_oracle_json(write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the exhaustive optimum of a small cycle instance."""
    path = write_file("rrbb.alt", "convex: RRBB\n")
    assert main(["oracle", str(path), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["min_crossings"] == 1
    assert data["n_optima"] == 1
    assert data["exists_1plane"] is True
    assert data["example"] == [1, 3, 2, 4]
    assert data["endpoints"] is None


def test_oracle_path(write_file: InstanceWriter, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the oracle on a special path."""
    path = write_file("special.alt", "convex: RRRBBB\n")
    code = main(["oracle", str(path), "--kind", "path", "--from", "2", "--to", "5", "--json"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["endpoints"] == [2, 5]
    assert data["min_crossings"] == 2
    assert data["exists_1plane"] is False


def test_oracle_needs_instance_or_sweep() -> None:
    """Test the oracle with nothing to do."""
    assert main(["oracle"]) == EXIT_INPUT


def test_oracle_sweep(capsys: pytest.CaptureFixture[str]) -> None:
    """Test a small certification sweep of the cycle solver."""
    assert main(["oracle", "--sweep", "6", "--kind", "cycle", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "cycle"
    assert data["failures"] == 0
    assert data["failed"] == []
    assert data["cases"] > 0
    assert main(["oracle", "--sweep", "3"]) == EXIT_INPUT


def test_svg_command(write_file: InstanceWriter, tmp_path: Path) -> None:
    """Test drawing an instance with and without a route."""
    path = write_file("square.alt", SQUARE)
    route = write_file("r.route", "cycle 1 2 3 4\n")
    out = tmp_path / "square.svg"
    assert main(["svg", str(path), str(route), "--out", str(out)]) == EXIT_OK
    assert out.read_text().count('id="edge-') == 4
    assert main(["svg", str(path), "--out", str(out)]) == EXIT_OK
    assert 'id="edge-' not in out.read_text()


def test_svg_command_with_convex_renumbering(
    write_file: InstanceWriter, tmp_path: Path
) -> None:
    """Test that svg --convex renumbers points and maps the route file."""
    path = write_file("square.txt", "0 0 R\n10 10 R\n10 0 B\n0 10 B\n")
    route = write_file("r.route", "cycle 1 3 2 4\n")
    out = tmp_path / "square.svg"
    assert main(["svg", str(path), str(route), "--convex", "--out", str(out)]) == EXIT_OK
    edges = re.findall(r'id="edge-(\d+)-(\d+)"', out.read_text())
    assert len(edges) == 4
    # the route is the hull itself, so every edge joins hull neighbours
    assert all(abs(int(i) - int(j)) in (1, 3) for i, j in edges)

    inside = write_file("inside.txt", "0 0 R\n10 0 B\n5 10 R\n5 3 B\n")
    assert main(["svg", str(inside), "--convex", "--out", str(out)]) == EXIT_INPUT


def test_verbosity_flags_are_exclusive() -> None:
    """Test that -v and -q cannot be combined."""
    with pytest.raises(SystemExit):
        main(["-v", "-q", "gen"])
