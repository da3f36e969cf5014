import json

import pytest

from src import cli


def test_tessellate_writes_off(tmp_path, capsys):
    path = tmp_path / "cells.off"
    assert cli.main(["tessellate", "--n", "2", "--format", "off", "--output", str(path)]) == cli.EXIT_OK
    assert path.read_text(encoding="utf-8").startswith("OFF")
    assert "cells=3 facets=6 edges=6 vertices=6" in capsys.readouterr().out


def test_tessellate_json_for_high_n(tmp_path):
    path = tmp_path / "lattice.json"
    assert cli.main(["tessellate", "--n", "5", "--output", str(path)]) == cli.EXIT_OK
    assert json.loads(path.read_text(encoding="utf-8"))["n"] == 5


@pytest.mark.parametrize("argv", [["tessellate", "--n", "5", "--format", "obj"], ["tessellate", "--n", "0"]])
def test_tessellate_user_errors(argv, tmp_path, capsys):
    assert cli.main(argv + ["--output", str(tmp_path / "x")]) == cli.EXIT_FAIL
    assert capsys.readouterr().err.startswith("Error:")


def test_verify_passes_and_writes_report(tmp_path):
    report = tmp_path / "report.json"
    code = cli.main(["verify", "--n", "2", "--samples", "200", "--report", str(report)])
    assert code == cli.EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["verdict"] == "pass"
    assert data["reports"][0]["n"] == 2
    assert data["schema_version"] == "1"


def test_verify_with_injected_flip_fails(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = cli.main(["verify", "--n", "2", "--samples", "0", "--inject-sign-flip", "--report", str(report)])
    assert code == cli.EXIT_FAIL
    assert "coamoeba_route" in capsys.readouterr().out
    assert json.loads(report.read_text(encoding="utf-8"))["verdict"] == "fail"


def test_verify_rejects_a_small_window(tmp_path):
    code = cli.main(["verify", "--n", "3", "--window-radius", "2", "--report", str(tmp_path / "r.json")])
    assert code == cli.EXIT_FAIL


def test_quotient_by_the_finite_subgroup(tmp_path, capsys):
    path = tmp_path / "quotient.json"
    assert cli.main(["quotient", "--n", "2", "--output", str(path)]) == cli.EXIT_OK
    assert "objects=9" in capsys.readouterr().out
    assert len(json.loads(path.read_text(encoding="utf-8"))["objects"]) == 9


@pytest.mark.parametrize("sublattice", ["1,1;2,2", "a,b;c,d", "1,0"])
def test_quotient_rejects_bad_sublattices(sublattice, tmp_path):
    argv = ["quotient", "--n", "2", "--sublattice", sublattice, "--output", str(tmp_path / "q.json")]
    assert cli.main(argv) == cli.EXIT_FAIL


@pytest.mark.parametrize("kind", cli.EXPORT_KINDS)
def test_export_kinds(kind, tmp_path):
    path = tmp_path / f"{kind}.json"
    assert cli.main(["export", kind, "--n", "2", "--output", str(path)]) == cli.EXIT_OK
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["n"] == 2


def test_missing_required_argument_exits_via_argparse():
    with pytest.raises(SystemExit) as exc:
        cli.main(["tessellate"])
    assert exc.value.code == 2


def test_unexpected_exception_is_internal(monkeypatch, tmp_path):
    def boom(args, settings):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.COMMANDS, "tessellate", boom)
    assert cli.main(["tessellate", "--n", "2", "--output", str(tmp_path / "x")]) == cli.EXIT_INTERNAL


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n", "2", "--samples", "50", "--report"],
        ["export", "cones", "--n", "2", "--output"],
        ["quotient", "--n", "2", "--output"],
    ],
)
def test_repeated_runs_write_identical_bytes(argv, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    assert cli.main(argv + [str(first)]) == cli.EXIT_OK
    assert cli.main(argv + [str(second)]) == cli.EXIT_OK
    assert first.read_bytes() == second.read_bytes()
