import io
import json
import math
import subprocess
import sys

import pytest

from lostatsea.cli import EXIT_ACCEPTANCE, EXIT_NO_CONVERGENCE, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, (json.loads(out.getvalue()) if out.getvalue() else None)


def test_optimize_strip2():
    code, data = run("optimize", "strip2")
    assert code == 0 and data["schema_version"] == "1.0"
    assert data["params"] == pytest.approx([1.04327, 1.37349], abs=1e-5)
    assert data["value"] == pytest.approx(0.88697, abs=1e-5)
    assert data["strategy"]["alpha"]["deg"] == pytest.approx(78.695, abs=1e-3)
    assert data["converged"] and data["evaluations"] > 0


def test_optimize_disk_grid():
    code, data = run("optimize", "disk2", "--grid")
    assert code == 0
    assert data["strategy"]["alpha"]["rad"] == pytest.approx(math.pi)
    assert data["value"] == pytest.approx(8 / (3 * math.pi), abs=1e-6)


def test_optimize_nonconvergence_exit_code():
    code, data = run("optimize", "strip2", "--max-evals", "10")
    assert code == EXIT_NO_CONVERGENCE and not data["converged"]


def test_evaluate_degrees_in():
    code, data = run("evaluate", "--kind", "strip2", "--r", "1.3017", "--alpha", "64.3")
    assert code == 0
    assert data["expected_length"] == pytest.approx(0.9188, abs=5e-4)
    assert data["strategy"]["alpha"]["rad"] == pytest.approx(math.radians(64.3))
    code, data = run("evaluate", "--kind", "disk2", "--r", "2", "--alpha", "30")
    assert data["expected_length"] == pytest.approx(8 / (3 * math.pi), abs=1e-6)


def test_evaluate_errors():
    assert run("evaluate", "--kind", "strip2", "--r", "0.5", "--alpha", "10")[0] == EXIT_USAGE
    assert run("evaluate", "--kind", "strip3", "--r", "1.1", "--alpha", "80")[0] == EXIT_USAGE
    assert run("evaluate", "--kind", "straight")[0] == EXIT_USAGE
    assert run("no-such-command")[0] == EXIT_USAGE
    assert run("median", "--n", "abc")[0] == EXIT_USAGE


def test_simulate_and_median():
    code, data = run("simulate", "strip", "--kind", "straight", "--n", "100000")
    assert code == 0 and data["warnings"]
    code, data = run("median", "strip", "--strategy", "straight", "--n", "100000", "--seed", "1")
    assert data["median"]["point"] == pytest.approx(0.78, abs=0.01)
    assert data["median"]["n"] == 100000 and data["median"]["seed"] == 1
    _, again = run("median", "strip", "--strategy", "straight", "--n", "100000", "--seed", "1")
    assert again == data


def test_zalgaller_command():
    code, data = run("zalgaller")
    assert code == 0
    assert data["r"] == pytest.approx(1.3017, abs=1e-3)
    assert data["alpha_deg"] == pytest.approx(64.3, abs=0.2)
    assert data["expected"] == pytest.approx(0.9188, abs=5e-4)


def test_gevirtz_curve_file(tmp_path):
    path = tmp_path / "straight.curve"
    path.write_text("0 0\n")
    code, data = run("gevirtz", "--curve", str(path))
    assert code == 0
    assert data["a_gamma"] == pytest.approx(0.8488263631, abs=1e-9)
    assert abs(data["slack"]) < 1e-9


def test_plot_writes_svg(tmp_path):
    out = tmp_path / "fig2.svg"
    code, data = run("plot", "fig2", "--out", str(out))
    assert code == 0 and out.read_text().startswith("<svg")
    assert len(set(data["cases"])) == 3
    code, data = run("plot", "custom", "--kind", "disk2", "--r", "0.5", "--alpha", "20",
                     "--state", "0.5", "45", "--out", str(tmp_path / "c.svg"))
    assert code == 0 and data["cases"] == ["Case 2'"]
    assert run("plot", "fig6", "--out", str(tmp_path / "missing" / "x.svg"))[0] == EXIT_USAGE


def test_paper_check_subset():
    code, data = run("paper-check", "--only", "1", "6")
    assert code == 0 and [row["number"] for row in data["criteria"]] == [1, 6]


def test_paper_check_failure_exit(monkeypatch):
    from lostatsea import acceptance
    monkeypatch.setattr(acceptance, "CRITERIA",
                        [lambda: acceptance.Row(1, "stub", False, "forced")])
    assert run("paper-check")[0] == EXIT_ACCEPTANCE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lostatsea.cli", "zalgaller"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["command"] == "zalgaller"


def test_median_sweep_csv():
    out = io.StringIO()
    code = main(["median", "disk", "--sweep-r", "0.5", "2", "--alpha", "60", "--n", "20000",
                 "--format", "csv"], out=out)
    lines = out.getvalue().splitlines()
    assert code == 0 and lines[0].startswith("strategy,r,alpha,median")
    assert len(lines) == 3
