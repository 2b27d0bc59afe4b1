"""Tests for the command-line interface."""

import numpy as np
import pandas as pd
import pytest
from typer.testing import CliRunner

from tests.conftest import integration_test, unit_test

runner = CliRunner()


def _invoke(*args):
    from main import app

    return runner.invoke(app, ["--log-level", "ERROR", *args])


@integration_test
class TestBenchCommandIntegration:
    """regusolve bench"""

    def test_csv_output(self, temp_dir):
        from src.bench import CSV_COLUMNS

        out = temp_dir / "shaw.csv"
        result = _invoke(
            "bench", "--problem", "shaw", "--n", "32", "--method", "rgsvd", "-l", "10",
            "--reps", "2", "--seed-noise", "5", "--out", str(out),
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert list(frame.columns) == CSV_COLUMNS
        assert frame["seed_noise"].tolist() == [5, 6]
        assert frame["l"].tolist() == [10, 10]
        assert (frame["operator"] == "d2").all()

    def test_markdown_output(self, temp_dir):
        out = temp_dir / "table.md"
        result = _invoke("bench", "--problem", "heat", "--n", "32", "--reps", "2", "--format", "md", "--out", str(out))
        assert result.exit_code == 0, result.output
        lines = out.read_text(encoding="utf-8").strip().splitlines()
        assert len(lines) == 3
        assert "CGSVD T(s)" in lines[0]
        assert lines[2].startswith("| heat | 32 |")

    def test_problem_params_and_plot_data(self, temp_dir):
        out = temp_dir / "gravity.csv"
        plot = temp_dir / "plot.csv"
        result = _invoke(
            "bench", "--problem", "gravity", "--n", "32", "--param", "d=0.5", "--reps", "1",
            "--out", str(out), "--plot-out", str(plot),
        )
        assert result.exit_code == 0, result.output
        data = pd.read_csv(plot)
        assert list(data.columns) == ["index", "x", "x_exact"]
        assert len(data) == 32
        from src.problems import generate

        np.testing.assert_allclose(data["x_exact"], generate("gravity", 32, d=0.5).x_exact, rtol=1e-12)

    def test_config_file(self, temp_dir):
        out = temp_dir / "from_config.csv"
        config = temp_dir / "case.conf"
        config.write_text(
            "# bench case\n"
            "problem = foxgood\n"
            "n = 32\n"
            "method = csvd\n"
            "reps = 3\n"
            f"out = {out}\n",
            encoding="utf-8",
        )
        result = _invoke("bench", "--config", str(config), "--reps", "2")
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert len(frame) == 2
        assert (frame["method"] == "csvd").all()
        assert (frame["operator"] == "identity").all()

    def test_usage_errors(self, temp_dir):
        assert _invoke("bench", "--n", "32").exit_code == 2
        assert _invoke("bench", "--problem", "shaw", "--n", "32", "--format", "json").exit_code == 2
        assert _invoke("bench", "--problem", "shaw", "--n", "32", "--param", "d").exit_code == 2

        config = temp_dir / "bad.conf"
        config.write_text("problem = shaw\nn = 32\ncolour = blue\n", encoding="utf-8")
        assert _invoke("bench", "--config", str(config)).exit_code == 2

    def test_invalid_case_exits_with_one(self):
        assert _invoke("bench", "--problem", "shaw", "--n", "4").exit_code == 1
        assert _invoke("bench", "--problem", "baart", "--n", "32").exit_code == 1
        result = _invoke("bench", "--problem", "shaw", "--n", "16", "--method", "rsvd_std", "-l", "15", "--reps", "1")
        assert result.exit_code == 1
        assert "Error" in result.output


@integration_test
class TestSolveCommandIntegration:
    """regusolve solve"""

    @pytest.fixture
    def exported(self, temp_dir):
        result = _invoke("export", "--problem", "shaw", "--n", "32", "--out-dir", str(temp_dir))
        assert result.exit_code == 0, result.output
        from src.problems import read_vectors_csv

        vectors = read_vectors_csv(temp_dir / "vectors.csv")
        rhs = temp_dir / "b.csv"
        pd.DataFrame(vectors["b_exact"]).to_csv(rhs, header=False, index=False, float_format="%.17g")
        return temp_dir / "A.csv", rhs

    def test_fixed_mu_matches_library(self, exported, temp_dir):
        from src.bench import solve_system
        from src.problems import derivative_operator, generate

        matrix, rhs = exported
        out = temp_dir / "x.csv"
        result = _invoke(
            "solve", "--matrix", str(matrix), "--rhs", str(rhs),
            "--operator", "d2", "--mu", "1e-3", "--out", str(out),
        )
        assert result.exit_code == 0, result.output

        problem = generate("shaw", 32)
        expected = solve_system(problem.A, derivative_operator("d2", 32).matrix, problem.b_exact, "cgsvd", mu=1e-3).x
        x = pd.read_csv(out)["x"].to_numpy()
        np.testing.assert_allclose(x, expected, rtol=1e-10, atol=1e-12)

    def test_operator_file_and_sketch(self, exported, temp_dir):
        from src.problems import derivative_operator

        matrix, rhs = exported
        op = temp_dir / "L.csv"
        pd.DataFrame(derivative_operator("d1", 32).matrix).to_csv(op, header=False, index=False)
        out = temp_dir / "x.csv"
        result = _invoke(
            "solve", "--matrix", str(matrix), "--rhs", str(rhs), "--operator-file", str(op),
            "--method", "rgsvd", "-l", "12", "--augment", "--out", str(out),
        )
        assert result.exit_code == 0, result.output
        assert len(pd.read_csv(out)) == 32

    def test_errors(self, exported, temp_dir):
        matrix, rhs = exported
        op = temp_dir / "L.csv"
        op.write_text("1,0\n0,1\n", encoding="utf-8")
        both = _invoke("solve", "--matrix", str(matrix), "--rhs", str(rhs), "--operator-file", str(op), "--operator", "d1")
        assert both.exit_code == 2

        # operator with the wrong number of columns
        assert _invoke("solve", "--matrix", str(matrix), "--rhs", str(rhs), "--operator-file", str(op)).exit_code == 1
        # discrepancy rule without a noise level
        assert _invoke("solve", "--matrix", str(matrix), "--rhs", str(rhs), "--rule", "discrepancy").exit_code == 1
        assert _invoke("solve", "--matrix", str(temp_dir / "missing.csv"), "--rhs", str(rhs)).exit_code == 2


@integration_test
class TestTableAndExportIntegration:
    """regusolve table / export"""

    def test_table_merges_runs(self, temp_dir):
        first = temp_dir / "cgsvd.csv"
        second = temp_dir / "rgsvd.csv"
        assert _invoke("bench", "--problem", "phillips", "--n", "32", "--reps", "2", "--out", str(first)).exit_code == 0
        assert _invoke(
            "bench", "--problem", "phillips", "--n", "32", "--reps", "2", "--method", "rgsvd", "-l", "12",
            "--out", str(second),
        ).exit_code == 0

        out = temp_dir / "table.md"
        result = _invoke("table", str(first), str(second), "--out", str(out))
        assert result.exit_code == 0, result.output
        lines = out.read_text(encoding="utf-8").strip().splitlines()
        assert len(lines) == 3
        assert "CGSVD err" in lines[0] and "RGSVD err" in lines[0]

    def test_table_rejects_foreign_csv(self, temp_dir):
        other = temp_dir / "other.csv"
        other.write_text("a,b\n1,2\n", encoding="utf-8")
        assert _invoke("table", str(other)).exit_code == 1

    def test_export(self, temp_dir):
        from src.problems import generate, read_matrix_csv

        result = _invoke("export", "--problem", "i_laplace", "--n", "16", "--param", "eg=3", "--out-dir", str(temp_dir))
        assert result.exit_code == 0, result.output
        A = read_matrix_csv(temp_dir / "A.csv")
        problem = generate("i_laplace", 16, eg=3)
        np.testing.assert_array_equal(A, problem.A)

    def test_export_unknown_problem(self, temp_dir):
        assert _invoke("export", "--problem", "baart", "--n", "16", "--out-dir", str(temp_dir)).exit_code == 1


@unit_test
class TestKeyValueFileUnit:
    """--config file parsing."""

    def test_comments_quotes_and_key_normalization(self, temp_dir):
        from config.settings import load_key_value_file

        path = temp_dir / "case.conf"
        path.write_text(
            "# header\n"
            "\n"
            "problem = shaw   # inline comment\n"
            "sample-size=20\n"
            'out = "results/run one.csv"\n'
            "plot_out = ${HOME}/plot.csv\n",
            encoding="utf-8",
        )
        assert load_key_value_file(path) == {
            "problem": "shaw",
            "sample_size": "20",
            "out": "results/run one.csv",
            "plot_out": "${HOME}/plot.csv",
        }

    def test_line_without_value_rejected(self, temp_dir):
        from config.settings import load_key_value_file

        path = temp_dir / "bad.conf"
        path.write_text("problem = shaw\nverbose\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_key_value_file(path)

    def test_missing_file(self, temp_dir):
        from config.settings import load_key_value_file

        with pytest.raises(FileNotFoundError):
            load_key_value_file(temp_dir / "absent.conf")
