"""CLI surface: subcommands, CSV schemas, exit codes, figures, determinism."""

import numpy as np
import pytest
from click.testing import CliRunner

from lcinterp.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def csv_body(text):
    lines = [ln for ln in text.strip().splitlines() if ln and not ln.startswith("#")]
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]


class TestNodes:
    def test_row_count_and_schema(self, runner):
        result = invoke(runner, "nodes", "--pair", "7,5")
        assert result.exit_code == 0
        header, rows = csv_body(result.output)
        assert header == ["i", "j", "x", "y", "class", "weight"]
        assert len(rows) == 24

    def test_weight_column_sums_to_one(self, runner):
        result = invoke(runner, "nodes", "--pair", "3,2")
        _, rows = csv_body(result.output)
        assert sum(float(r[5]) for r in rows) == pytest.approx(1.0, abs=1e-12)

    def test_consistency_note_present(self, runner):
        result = invoke(runner, "nodes", "--pair", "5,4")
        assert "# consistency: grid-vs-curve" in result.output

    def test_metadata_comment_records_config_and_version(self, runner):
        result = invoke(runner, "nodes", "--pair", "3,2")
        meta = result.output.strip().splitlines()[-1]
        assert meta.startswith("# config:")
        assert "version=" in meta and "pairs=3,2" in meta

    def test_non_coprime_pair_fails(self, runner):
        result = runner.invoke(cli, ["nodes", "--pair", "4,2"])
        assert result.exit_code != 0
        assert "CoprimalityError" in result.output

    def test_writes_csv_and_figure(self, runner, tmp_path):
        out = tmp_path / "nodes.csv"
        result = invoke(runner, "nodes", "--pair", "7,5", "--out", str(out))
        assert result.exit_code == 0
        assert out.exists()
        assert (tmp_path / "nodes.png").exists()

    def test_no_plot_skips_figure(self, runner, tmp_path):
        out = tmp_path / "nodes.csv"
        invoke(runner, "nodes", "--pair", "7,5", "--out", str(out), "--no-plot")
        assert out.exists()
        assert not (tmp_path / "nodes.png").exists()


class TestInterpError:
    def test_small_run(self, runner, tmp_path):
        out = tmp_path / "rate.csv"
        result = invoke(
            runner, "interp-error", "--seq", "padua:4..16", "--corpus", "hbv_step",
            "--p", "1", "--points", "256", "--window", "3", "--out", str(out),
        )
        assert result.exit_code == 0
        header, rows = csv_body(out.read_text())
        assert header == ["experiment", "m", "n", "error", "slope"]
        assert [r[0] for r in rows] == ["hbv_step:p1"] * 3
        slopes = {r[4] for r in rows}
        assert len(slopes) == 1
        assert float(slopes.pop()) < 0
        assert (tmp_path / "rate.png").exists()

    def test_explicit_pairs(self, runner):
        result = invoke(
            runner, "interp-error", "--pair", "3,2", "--pair", "5,4", "--pair", "7,5",
            "--corpus", "cos_3x_2y", "--p", "2", "--points", "128", "--window", "3",
        )
        assert result.exit_code == 0
        _, rows = csv_body(result.output)
        errs = [float(r[3]) for r in rows]
        assert errs == sorted(errs, reverse=True)  # analytic errors shrink with degree

    def test_unknown_corpus_id_fails(self, runner):
        result = runner.invoke(cli, ["interp-error", "--pair", "3,2", "--corpus", "nope"])
        assert result.exit_code != 0


class TestLebesgue:
    def test_schema_and_trend(self, runner, tmp_path):
        out = tmp_path / "leb.csv"
        result = invoke(
            runner, "lebesgue", "--seq", "padua:4..8", "--grid", "64",
            "--check-trend", "--out", str(out),
        )
        assert result.exit_code == 0
        header, rows = csv_body(out.read_text())
        assert header == ["m", "n", "grid", "value", "ratio"]
        assert len(rows) == 2
        assert all(float(r[3]) >= 1.0 for r in rows)
        assert (tmp_path / "leb.png").exists()


class TestMz:
    def test_deterministic_rerun_bytes(self, runner, tmp_path):
        args = ["mz", "--pair", "3,2", "--p", "2", "--trials", "8", "--seed", "42"]
        first = invoke(runner, *args)
        second = invoke(runner, *args)
        assert first.output == second.output
        assert first.output.startswith("m,n,p,ratio_min,ratio_max,trials,seed")

    def test_seed_changes_band(self, runner):
        a = invoke(runner, "mz", "--pair", "3,2", "--trials", "8", "--seed", "1")
        b = invoke(runner, "mz", "--pair", "3,2", "--trials", "8", "--seed", "2")
        assert a.output != b.output


class TestVdv:
    def test_property_checks_pass(self, runner):
        result = invoke(runner, "vdv", "--check-lemma56", "--n", "2")
        assert result.exit_code == 0
        header, rows = csv_body(result.output)
        assert header == ["check", "n", "observed", "bound", "status"]
        assert {r[0] for r in rows} == {
            "degree_bound", "interpolates_samples", "reproduces_low_order",
        }
        assert all(r[4] == "pass" for r in rows)

    def test_property_flag_alias(self, runner):
        assert invoke(runner, "vdv", "--check-properties", "--n", "2").exit_code == 0

    def test_kernel_table(self, runner, tmp_path):
        out = tmp_path / "kernel.csv"
        result = invoke(runner, "vdv", "--kernel-table", "--n", "3",
                        "--points", "64", "--out", str(out))
        assert result.exit_code == 0
        header, rows = csv_body(out.read_text())
        assert header == ["phi", "value"]
        assert len(rows) == 64
        assert float(rows[0][1]) == pytest.approx(9.0, abs=1e-10)  # peak 3n at 0
        assert (tmp_path / "kernel.png").exists()

    def test_rate_run(self, runner):
        result = invoke(runner, "vdv", "--rate", "--n-seq", "8..32",
                        "--p", "1", "--points", "4096")
        assert result.exit_code == 0
        header, rows = csv_body(result.output)
        assert header == ["experiment", "m", "n", "error", "slope"]
        assert len(rows) == 3

    def test_mode_flags_are_exclusive(self, runner):
        result = runner.invoke(cli, ["vdv", "--rate", "--kernel-table"])
        assert result.exit_code != 0


class TestCorpus:
    def test_listing(self, runner):
        result = invoke(runner, "corpus")
        assert result.exit_code == 0
        header, rows = csv_body(result.output)
        assert header == ["id", "domain", "regularity", "breakpoints", "facts"]
        ids = {r[0] for r in rows}
        assert {"const_one", "hbv_step", "kink_xy", "torus_step"} <= ids
