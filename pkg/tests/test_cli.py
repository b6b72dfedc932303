"""Tests for the command-line interface."""

import os
import subprocess
import sys
from pathlib import Path

import pytest
from typer.testing import CliRunner

from complex_splitting.artifacts import CsvWriter
from complex_splitting.main import app
from complex_splitting.methods import dump_method
from complex_splitting.models.study import StudyResult, StudyRow
from complex_splitting.splitting import strang

runner = CliRunner()

SMALL_COMPLEX_ODE = [
    "--problem",
    "complex-ode",
    "--methods",
    "strang,clt2",
    "--dt0",
    "0.1",
    "--rungs",
    "3",
    "--set",
    "complex_ode.t_final=2",
    "--set",
    "complex_ode.samples=2",
]


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Run every command away from any config/config.yaml in the checkout."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("SPLITTING_CONFIG", raising=False)
    monkeypatch.delenv("SPLITTING_OUTPUT_DIR", raising=False)


class TestEntryPoint:
    """Tests for importing the CLI module on its own."""

    def test_fresh_interpreter_import(self):
        """Test that the entry-point module imports first, with nothing preloaded."""
        src = Path(__file__).parents[1] / "src"
        env = {**os.environ, "PYTHONPATH": str(src)}
        completed = subprocess.run(
            [sys.executable, "-c", "import complex_splitting.main"],
            env=env,
            capture_output=True,
            text=True,
            check=False,
        )
        assert completed.returncode == 0, completed.stderr


class TestListMethods:
    """Tests for list-methods."""

    def test_lists(self):
        """Test that the catalog is printed."""
        result = runner.invoke(app, ["list-methods", "--n", "3"])
        assert result.exit_code == 0
        assert "Built-in methods" in result.output


class TestVerifyOrder:
    """Tests for verify-order."""

    def test_pass(self):
        """Test a method that reaches its order."""
        result = runner.invoke(app, ["verify-order", "clt2", "strang", "--n", "4"])
        assert result.exit_code == 0

    def test_fail(self):
        """Test Lie-Trotter held to second order."""
        result = runner.invoke(app, ["verify-order", "lt-4", "--order", "2"])
        assert result.exit_code == 1

    def test_unknown_method(self):
        """Test that unknown ids exit with an error."""
        result = runner.invoke(app, ["verify-order", "nope"])
        assert result.exit_code == 1
        assert "Unknown method" in result.output


class TestStudies:
    """Tests for the study commands."""

    def test_convergence(self, tmp_path):
        """Test a small convergence study end to end."""
        out = tmp_path / "results"
        result = runner.invoke(app, ["convergence", *SMALL_COMPLEX_ODE, "--out", str(out)])
        assert result.exit_code == 0, result.output
        csv_text = (out / "convergence_complex-ode.csv").read_text(encoding="utf-8")
        assert csv_text.startswith("method,dt,error,rhs_evals_total,rhs_evals_op1")
        assert len(csv_text.strip().splitlines()) == 7
        assert (out / "convergence_complex-ode.svg").exists()

    def test_work_precision(self, tmp_path):
        """Test a small work-precision study."""
        out = tmp_path / "wp"
        result = runner.invoke(app, ["work-precision", *SMALL_COMPLEX_ODE, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "work-precision_complex-ode.csv").exists()

    def test_method_from_file(self, tmp_path):
        """Test a study mixing a built-in method with a table loaded from YAML."""
        path = tmp_path / "my_strang.yaml"
        path.write_text(dump_method(strang(3)), encoding="utf-8")
        args = [*SMALL_COMPLEX_ODE, "--methods", f"strang,file:{path}", "--out", str(tmp_path)]
        result = runner.invoke(app, ["convergence", *args])
        assert result.exit_code == 0, result.output
        csv_text = (tmp_path / "convergence_complex-ode.csv").read_text(encoding="utf-8")
        assert f"file:{path}" in csv_text

    def test_compare_forms(self, tmp_path):
        """Test the complex/realified comparison with its artifacts."""
        out = tmp_path / "wp"
        args = [*SMALL_COMPLEX_ODE, "--compare-forms", "--out", str(out)]
        result = runner.invoke(app, ["work-precision", *args])
        assert result.exit_code == 0, result.output
        assert "identical" in result.output
        assert (out / "work-precision_complex-ode.csv").exists()
        assert (out / "work-precision_complex-ode-real.csv").exists()

    def test_compare_forms_needs_complex_ode(self, tmp_path):
        """Test that ADR has no second form to compare against."""
        args = ["--problem", "adr2d", "--compare-forms", "--out", str(tmp_path)]
        result = runner.invoke(app, ["work-precision", *args])
        assert result.exit_code == 1
        assert "no complex/realified pair" in result.output

    def test_incompatible_ladder(self, tmp_path):
        """Test that a step size missing the sample times is an error."""
        args = [*SMALL_COMPLEX_ODE, "--dt0", "0.3", "--out", str(tmp_path)]
        result = runner.invoke(app, ["convergence", *args])
        assert result.exit_code == 1

    def test_missing_config(self, tmp_path):
        """Test that an explicit missing config file is an error."""
        result = runner.invoke(app, ["convergence", "--config", str(tmp_path / "none.yaml")])
        assert result.exit_code == 1
        assert "Configuration error" in result.output


class TestBchCheck:
    """Tests for bch-check."""

    def test_random(self):
        """Test the default random set at a smaller t0."""
        result = runner.invoke(app, ["bch-check", "--t0", "0.05"])
        assert result.exit_code == 0, result.output

    def test_commuting(self):
        """Test the commuting case."""
        result = runner.invoke(app, ["bch-check", "--commuting"])
        assert result.exit_code == 0
        assert "exact" in result.output


class TestRender:
    """Tests for render."""

    def test_render(self, tmp_path):
        """Test rendering a CSV written earlier."""
        rows = [
            StudyRow(
                method="lt",
                dt=dt,
                error=dt,
                rhs_evals_total=int(1 / dt),
                rhs_evals=(int(1 / dt),),
                wall_seconds=0.0,
            )
            for dt in (0.5, 0.25)
        ]
        path = CsvWriter(tmp_path).write(StudyResult(n_operators=1, rows=rows), "study")
        result = runner.invoke(app, ["render", str(path)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "study.svg").exists()

    def test_missing_csv(self, tmp_path):
        """Test that a missing CSV is an error."""
        result = runner.invoke(app, ["render", str(tmp_path / "none.csv")])
        assert result.exit_code == 1


class TestValidate:
    """Tests for validate."""

    def test_defaults(self):
        """Test that built-in defaults validate."""
        result = runner.invoke(app, ["validate"])
        assert result.exit_code == 0
        assert "built-in defaults" in result.output

    def test_unknown_method(self):
        """Test that an unknown method id fails validation."""
        result = runner.invoke(app, ["validate", "--set", "study.methods=strang,nope"])
        assert result.exit_code == 1
