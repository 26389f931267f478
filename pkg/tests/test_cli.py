from __future__ import annotations

import os

import pytest

from pareto_judge.cli import run

FRONT_CSV = """dataset,method,fold,solution_id,tp,fn,fp,tn
ds1,moo,0,0,4,6,1,9
ds1,moo,0,1,9,1,6,4
ds1,moo,0,2,7,3,3,7
ds1,moo,1,0,4,6,1,9
ds1,moo,1,1,9,1,6,4
ds1,moo,1,2,7,3,3,7
"""

REFS_CSV = """dataset,method,fold,solution_id,tp,fn,fp,tn
ds1,base,0,0,6,4,4,6
ds1,base,1,0,6,4,4,6
ds1,weak,0,0,2,8,8,2
ds1,weak,1,0,2,8,8,2
"""

DATASETS_CSV = """name,n_features,n_samples,n_minority
pima,8,768,268
ecoli4,7,336,20
poker-8-9_vs_5,10,2075,25
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "front.csv").write_text(FRONT_CSV, encoding="utf-8")
    (tmp_path / "refs.csv").write_text(REFS_CSV, encoding="utf-8")
    (tmp_path / "table.csv").write_text(DATASETS_CSV, encoding="utf-8")
    return tmp_path


def _compare_args(workdir, out="report.csv", extra=()):
    return [
        "compare",
        "--front",
        str(workdir / "front.csv"),
        "--refs",
        str(workdir / "refs.csv"),
        "--indicators",
        "ed,hv,sdr,ndr",
        "--out",
        str(workdir / out),
        *extra,
    ]


class TestExitCodes:
    def test_compare_happy_path(self, workdir):
        assert run(_compare_args(workdir)) == 0
        assert (workdir / "report.csv").is_file()

    def test_missing_input_exits_one_and_names_file(self, workdir, capsys):
        args = _compare_args(workdir)
        args[2] = str(workdir / "missing.csv")
        assert run(args) == 1
        assert "missing.csv" in capsys.readouterr().err

    def test_unknown_flag_exits_two(self, workdir, capsys):
        assert run(_compare_args(workdir, extra=["--bogus"])) == 2

    def test_unknown_subcommand_exits_two(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_no_output_on_validation_failure(self, workdir, capsys):
        (workdir / "refs.csv").write_text(
            "dataset,method,fold,solution_id,tp,fn,fp,tn\nds1,base,0,0,1,1,1,1\n",
            encoding="utf-8",
        )  # fold coverage no longer matches the front
        assert run(_compare_args(workdir, out="never.csv")) == 1
        assert not (workdir / "never.csv").exists()
        assert "cover different" in capsys.readouterr().err

    def test_parse_error_reports_file_and_line(self, workdir, capsys):
        (workdir / "front.csv").write_text(
            "dataset,method,fold,solution_id,tp,fn,fp,tn\nds1,moo,0,0,-2,1,1,1\n",
            encoding="utf-8",
        )
        assert run(_compare_args(workdir)) == 1
        err = capsys.readouterr().err
        assert "front.csv:2:" in err and "tp" in err


class TestCompare:
    def test_report_values(self, workdir):
        assert run(_compare_args(workdir)) == 0
        lines = (workdir / "report.csv").read_text(encoding="utf-8").splitlines()
        cells = {tuple(line.split(",")[:3]): line.split(",")[3:] for line in lines[1:]}
        sdr_mean = float(cells[("SDR", "base", "ds1")][0])
        ndr_mean = float(cells[("NDR", "base", "ds1")][0])
        assert sdr_mean == 1 / 3
        assert ndr_mean == 1.0
        assert all(float(v[1]) == 0.0 for v in cells.values())  # identical folds

    def test_fold_filter(self, workdir):
        assert run(_compare_args(workdir, extra=["--fold", "0"])) == 0
        lines = (workdir / "report.csv").read_text(encoding="utf-8").splitlines()
        assert all(line.endswith(",1") for line in lines[1:])  # one fold per cell

    def test_filter_front_flag(self, workdir):
        # (0.4, 0.9) and (0.9, 0.4) and (0.7, 0.7) are mutually non-dominated,
        # so filtering must not change the ratios here
        assert run(_compare_args(workdir, out="plain.csv")) == 0
        assert run(_compare_args(workdir, out="filtered.csv", extra=["--filter-front"])) == 0
        plain = (workdir / "plain.csv").read_text(encoding="utf-8")
        filtered = (workdir / "filtered.csv").read_text(encoding="utf-8")
        assert plain == filtered

    def test_markdown_format(self, workdir):
        assert run(_compare_args(workdir, out="report.md", extra=["--format", "markdown"])) == 0
        text = (workdir / "report.md").read_text(encoding="utf-8")
        assert "## SDR" in text and "| base |" in text

    def test_seed_flag_does_not_change_2d_results(self, workdir):
        assert run(_compare_args(workdir, out="a.csv", extra=["--seed", "1"])) == 0
        assert run(_compare_args(workdir, out="b.csv", extra=["--seed", "2"])) == 0
        assert (workdir / "a.csv").read_bytes() == (workdir / "b.csv").read_bytes()

    def test_byte_identical_reruns(self, workdir):
        assert run(_compare_args(workdir, out="a.csv")) == 0
        assert run(_compare_args(workdir, out="b.csv")) == 0
        assert (workdir / "a.csv").read_bytes() == (workdir / "b.csv").read_bytes()

    def test_objectives_payload_with_negated_column(self, workdir):
        # obj_2 is a cost: smaller is better, so the front point beats the
        # reference only after sign-flipping that column
        (workdir / "obj_front.csv").write_text(
            "dataset,method,fold,solution_id,obj_1,obj_2\nds1,moo,0,0,0.9,0.2\n",
            encoding="utf-8",
        )
        (workdir / "obj_refs.csv").write_text(
            "dataset,method,fold,solution_id,obj_1,obj_2\nds1,base,0,0,0.5,0.3\n",
            encoding="utf-8",
        )
        args = [
            "compare",
            "--front",
            str(workdir / "obj_front.csv"),
            "--refs",
            str(workdir / "obj_refs.csv"),
            "--payload",
            "objectives",
            "--negate",
            "obj_2",
            "--indicators",
            "sdr",
            "--out",
            str(workdir / "neg.csv"),
        ]
        assert run(args) == 0
        line = (workdir / "neg.csv").read_text(encoding="utf-8").splitlines()[1]
        assert line.startswith("SDR,base,ds1,1.0,")


class TestThreadsEnv:
    def test_invalid_value_exits_one(self, workdir, capsys, monkeypatch):
        monkeypatch.setenv("PARETO_JUDGE_THREADS", "zero")
        assert run(_compare_args(workdir)) == 1
        assert "PARETO_JUDGE_THREADS" in capsys.readouterr().err

    def test_thread_cap_does_not_change_output(self, workdir, monkeypatch):
        assert run(_compare_args(workdir, out="serial.csv")) == 0
        monkeypatch.setenv("PARETO_JUDGE_THREADS", "4")
        assert run(_compare_args(workdir, out="capped.csv")) == 0
        assert (workdir / "serial.csv").read_bytes() == (workdir / "capped.csv").read_bytes()


class TestReportSubcommand:
    def test_rerenders_saved_csv(self, workdir):
        assert run(_compare_args(workdir)) == 0
        out = workdir / "tables.md"
        args = ["report", "--in", str(workdir / "report.csv"), "--out", str(out)]
        assert run(args) == 0
        assert "## HV (×10³)" in out.read_text(encoding="utf-8")


class TestMetricsSubcommand:
    def test_per_record_metrics(self, workdir):
        out = workdir / "metrics.csv"
        assert run(["metrics", "--in", str(workdir / "front.csv"), "--out", str(out)]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "dataset,method,fold,solution_id,tpr,tnr,ppv,bac,gmean,f1,degenerate"
        first = lines[1].split(",")
        assert first[:4] == ["ds1", "moo", "0", "0"]
        assert float(first[4]) == 0.4 and float(first[5]) == 0.9
        assert first[-1] == "0"

    def test_degenerate_rows_flagged(self, workdir):
        (workdir / "degenerate.csv").write_text(
            "dataset,method,fold,solution_id,tp,fn,fp,tn\nds1,m,0,0,0,0,3,7\n",
            encoding="utf-8",
        )
        out = workdir / "metrics.csv"
        assert run(["metrics", "--in", str(workdir / "degenerate.csv"), "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").splitlines()[1].endswith(",1")


class TestDatasetsSubcommand:
    def test_stdout_table(self, workdir, capsys):
        assert run(["datasets", "--in", str(workdir / "table.csv")]) == 0
        text = capsys.readouterr().out
        assert "| pima | 8 | 768 | 268 | 1.87 |" in text
        assert "| poker-8-9_vs_5 | 10 | 2075 | 25 | 82.00 |" in text

    def test_csv_output_file(self, workdir):
        out = workdir / "ir.csv"
        args = ["datasets", "--in", str(workdir / "table.csv"), "--format", "csv", "--out", str(out)]
        assert run(args) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[1] == "pima,8,768,268,1.87"
        assert lines[2] == "ecoli4,7,336,20,15.80"


class TestFigureSubcommands:
    def test_fbeta_plot_writes_one_file_per_dataset(self, workdir):
        out = workdir / "plots"
        args = [
            "fbeta-plot",
            "--front",
            str(workdir / "front.csv"),
            "--refs",
            str(workdir / "refs.csv"),
            "--fold",
            "0",
            "--out",
            str(out),
        ]
        assert run(args) == 0
        assert (out / "ds1_fbeta.svg").is_file()

    def test_fbeta_plot_beta_grid_override(self, workdir):
        out = workdir / "plots"
        args = [
            "fbeta-plot",
            "--front",
            str(workdir / "front.csv"),
            "--refs",
            str(workdir / "refs.csv"),
            "--fold",
            "0",
            "--beta-min",
            "0.5",
            "--beta-max",
            "2.0",
            "--beta-count",
            "51",
            "--out",
            str(out),
        ]
        assert run(args) == 0
        assert (out / "ds1_fbeta.svg").is_file()

    def test_region_plot_requires_single_reference_method(self, workdir, capsys):
        args = [
            "region-plot",
            "--front",
            str(workdir / "front.csv"),
            "--refs",
            str(workdir / "refs.csv"),
            "--mode",
            "dominance",
            "--fold",
            "0",
            "--out",
            str(workdir / "plots"),
        ]
        assert run(args) == 1
        assert "--ref-method" in capsys.readouterr().err
        assert run(args + ["--ref-method", "base"]) == 0
        assert (workdir / "plots" / "ds1_region-dominance.svg").is_file()

    def test_region_plot_unknown_ref_method(self, workdir, capsys):
        args = [
            "region-plot",
            "--front",
            str(workdir / "front.csv"),
            "--refs",
            str(workdir / "refs.csv"),
            "--mode",
            "hypervolume",
            "--fold",
            "0",
            "--ref-method",
            "nosuch",
            "--out",
            str(workdir / "plots"),
        ]
        assert run(args) == 1
        assert "nosuch" in capsys.readouterr().err

    def test_plot_determinism_across_directories(self, workdir):
        for name in ("p1", "p2"):
            args = [
                "region-plot",
                "--front",
                str(workdir / "front.csv"),
                "--refs",
                str(workdir / "refs.csv"),
                "--mode",
                "hypervolume",
                "--fold",
                "1",
                "--ref-method",
                "base",
                "--out",
                str(workdir / name),
            ]
            assert run(args) == 0
        a = (workdir / "p1" / "ds1_region-hypervolume.svg").read_bytes()
        b = (workdir / "p2" / "ds1_region-hypervolume.svg").read_bytes()
        assert a == b

    def test_isocurves(self, workdir):
        out = workdir / "iso.svg"
        args = ["isocurves", "--metric", "gmean", "--levels", "0.2,0.4,0.6,0.8", "--out", str(out)]
        assert run(args) == 0
        again = workdir / "iso2.svg"
        args[-1] = str(again)
        assert run(args) == 0
        assert out.read_bytes() == again.read_bytes()

    def test_isocurves_bad_levels(self, workdir, capsys):
        args = ["isocurves", "--metric", "f1", "--levels", "0.5,oops", "--out", "x.svg"]
        assert run(args) == 1
        assert "levels" in capsys.readouterr().err


class TestNoPartialOutputs:
    def test_temp_files_are_not_left_behind(self, workdir):
        assert run(_compare_args(workdir)) == 0
        leftovers = [name for name in os.listdir(workdir) if name.startswith(".tmp-")]
        assert leftovers == []
