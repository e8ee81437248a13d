from __future__ import annotations

import pytest

import fasbound.cli as cli
from fasbound import parse_csv, parse_edgelist


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "fasbound" in capsys.readouterr().out


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve"])  # --in is required
    assert exc.value.code == 2


def test_gen_solve_pipeline(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    code, out, _ = run_cli(capsys, "gen", "--model", "tournament", "--n", "5", "--seed", "7", "--out", str(gpath))
    assert code == 0
    g = parse_edgelist(gpath.read_text())
    assert g.n == 5 and g.m == 10

    code, out, _ = run_cli(capsys, "solve", "--in", str(gpath), "--method", "exact")
    assert code == 0
    fields = dict(line.split("=", 1) for line in out.strip().splitlines())
    y, x = int(fields["y_star"]), int(fields["x_star"])
    assert y + x == 10
    assert fields["exact"] == "true"
    assert sorted(int(v) for v in fields["ordering"].split()) == [0, 1, 2, 3, 4]

    code, out2, _ = run_cli(capsys, "solve", "--in", str(gpath), "--method", "brute")
    assert int(dict(line.split("=", 1) for line in out2.strip().splitlines())["y_star"]) == y


def test_gen_to_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen", "--model", "gnm", "--n", "6", "--m", "4", "--seed", "1")
    assert code == 0
    assert parse_edgelist(out).m == 4


def test_gen_er_alias(capsys):
    code, out, _ = run_cli(capsys, "gen", "--model", "er", "--n", "6", "--p", "1.0", "--seed", "1")
    assert code == 0
    assert parse_edgelist(out).m == 15


def test_gen_unknown_model_exits_3(capsys):
    code, _, err = run_cli(capsys, "gen", "--model", "mystery", "--n", "5")
    assert code == 3 and "unknown model" in err


def test_solve_missing_file_exits_3(tmp_path, capsys):
    code, _, err = run_cli(capsys, "solve", "--in", str(tmp_path / "absent.txt"))
    assert code == 3


def test_bounds_text(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--n", "50", "--p", "0.5")
    assert code == 0
    assert "612.5" in out and "24.5" in out
    assert "heuristic estimate" in out and "183.87" in out


def test_bounds_csv_row(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--n", "18", "--m", "144", "--csv")
    assert code == 0
    header, row = out.strip().splitlines()
    cells = dict(zip(header.split(","), row.split(",")))
    assert float(cells["lower_bound"]) == pytest.approx(10.796063866500958)
    assert float(cells["failure_prob"]) == pytest.approx(1.9384599518676114e-07)


def test_verify_union_bound_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "union-bound", "--n", "4", "--m", "4")
    assert code == 0
    assert "passed=True" in out


def test_experiment_verify_verbs_match(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "union-bound", "--n", "3", "--m", "3")
    code2, out2, _ = run_cli(capsys, "experiment", "verify-union-bound", "--n", "3", "--m", "3")
    assert (code1, out1) == (code2, out2)


def test_verify_lower_bound_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "lower-bound", "--n", "10", "--m", "30", "--trials", "20", "--seed", "1")
    assert code == 0
    assert "violations=0" in out and "passed=True" in out


def test_verification_failure_exits_1(capsys, monkeypatch):
    import fasbound.experiments as experiments

    real = experiments.verify_union_bound

    def fake(n, m, max_configurations=10 ** 6):
        report = real(n, m, max_configurations)
        return type(report)(
            n=report.n, m=report.m, total_configurations=report.total_configurations,
            rows=report.rows, passed=False,
        )

    monkeypatch.setattr(cli, "verify_union_bound", fake)
    code, out, _ = run_cli(capsys, "verify", "union-bound", "--n", "3", "--m", "2")
    assert code == 1
    assert "passed=False" in out


def test_sweep_n_stdout_and_determinism(capsys):
    argv = ["experiment", "sweep-n", "--model", "gnp", "--p", "0.5",
            "--n", "8:12:2", "--trials", "5", "--seed", "42"]
    code1, out1, _ = run_cli(capsys, *argv, "--jobs", "1")
    code2, out2, _ = run_cli(capsys, *argv, "--jobs", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    records = parse_csv(out1)
    assert [r.n for r in records] == [8, 10, 12]


def test_sweep_p_csv_and_plot(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    svg_path = tmp_path / "sweep.svg"
    code, _, err = run_cli(
        capsys, "experiment", "sweep-p", "--n", "10", "--p", "0.2:0.8:0.3",
        "--trials", "4", "--seed", "9", "--out", str(csv_path), "--plot", str(svg_path),
    )
    assert code == 0
    records = parse_csv(csv_path.read_text())
    assert [r.p for r in records] == [0.2, 0.5, 0.8]
    assert svg_path.read_text().startswith("<svg")


def test_plot_subcommand(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    run_cli(capsys, "experiment", "sweep-n", "--model", "tournament",
            "--n", "6:10:2", "--trials", "4", "--seed", "3", "--out", str(csv_path))
    svg_path = tmp_path / "out.svg"
    code, _, _ = run_cli(capsys, "plot", "--in", str(csv_path), "--out", str(svg_path),
                         "--overlays", "lower,heuristic,half_m,tournament")
    assert code == 0
    text = svg_path.read_text()
    assert "tournament bound" in text and "</svg>" in text


def test_gnm_sweep_requires_m(capsys):
    code, _, err = run_cli(capsys, "experiment", "sweep-n", "--model", "gnm",
                           "--n", "6:8", "--trials", "2", "--seed", "0")
    assert code == 3


def test_bad_range_exits_3(capsys):
    code, _, err = run_cli(capsys, "experiment", "sweep-n", "--model", "gnp", "--p", "0.5",
                           "--n", "10:5", "--trials", "2", "--seed", "0")
    assert code == 3 and "range" in err
