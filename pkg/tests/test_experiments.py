from __future__ import annotations

import math
from fractions import Fraction

import pytest

from fasbound import (
    SolverBudget,
    SweepConfig,
    TooLargeError,
    TooManyConfigurationsError,
    derive_seed,
    emit_csv,
    empirical_ystar_distribution,
    fas_lower_bound,
    format_csv,
    parse_csv,
    read_csv,
    run_sweep,
    sample_gnm_oriented,
    solve_exact_dp,
    verify_lower_bound_montecarlo,
    verify_union_bound,
)
from fasbound.errors import FasboundError
from fasbound.experiments import CSV_HEADER


class TestEnumeration:
    def test_triangle(self):
        dist = empirical_ystar_distribution(3, 3)
        assert dist.total_configurations == 8
        assert dist.pmf == {0: Fraction(3, 4), 1: Fraction(1, 4)}

    def test_single_arc_never_cyclic(self):
        dist = empirical_ystar_distribution(3, 1)
        assert dist.pmf == {0: Fraction(1)}

    def test_n4_m4_support(self):
        dist = empirical_ystar_distribution(4, 4)
        assert dist.total_configurations == 240
        assert sum(dist.pmf.values()) == 1
        assert set(dist.pmf) == {0, 1}

    def test_support_within_half_m(self):
        for n, m in [(3, 3), (4, 5), (5, 6)]:
            dist = empirical_ystar_distribution(n, m)
            assert sum(dist.pmf.values()) == 1
            assert all(0 <= y <= m / 2 for y in dist.pmf)

    def test_guard(self):
        with pytest.raises(TooManyConfigurationsError):
            empirical_ystar_distribution(8, 10)

    def test_matches_montecarlo(self):
        # n=4, m=4: exact Pr(Y*=0) = 31/40; 50000 samples within 3 s.e.
        dist = empirical_ystar_distribution(4, 4)
        p0 = float(dist.pmf[0])
        hits = 0
        trials = 50_000
        for t in range(trials):
            g = sample_gnm_oriented(4, 4, derive_seed(314, t))
            if solve_exact_dp(g).feedback_count == 0:
                hits += 1
        se = math.sqrt(p0 * (1 - p0) / trials)
        assert abs(hits / trials - p0) <= 3 * se


class TestUnionBoundVerification:
    def test_triangle_is_tight_at_zero(self):
        report = verify_union_bound(3, 3)
        assert report.passed
        row0 = report.rows[0]
        assert row0.exact_cdf == Fraction(3, 4)
        assert row0.bound == Fraction(3, 4)
        assert row0.exact_cdf <= row0.bound  # tight, not violated

    def test_triangle_k1_saturates(self):
        report = verify_union_bound(3, 3)
        assert report.rows[1].exact_cdf == 1
        assert report.rows[1].bound == 1

    def test_n4_m5_all_k(self):
        report = verify_union_bound(4, 5)
        assert report.total_configurations == 192
        assert report.passed and all(row.ok for row in report.rows)

    def test_float_bound_tracks_rational(self):
        report = verify_union_bound(4, 4)
        for row in report.rows:
            assert row.bound_float == pytest.approx(float(row.bound), rel=1e-12)

    def test_small_grid_never_violated(self):
        for n in (2, 3, 4):
            for m in range(0, min(7, n * (n - 1) // 2) + 1):
                assert verify_union_bound(n, m).passed, (n, m)


class TestLowerBoundMonteCarlo:
    def test_vacuous_negative_bound(self):
        report = verify_lower_bound_montecarlo(2, 1, trials=100, seed=0)
        assert report.bound < 0
        assert report.violations == 0 and report.passed

    def test_midsize_instance(self):
        report = verify_lower_bound_montecarlo(14, 70, trials=50, seed=3)
        assert report.violations == 0 and report.passed
        assert report.min_ystar >= report.bound

    def test_requires_exact_solver(self):
        with pytest.raises(TooLargeError):
            verify_lower_bound_montecarlo(30, 100, trials=10, seed=0)


class TestSweeps:
    def test_empty_gnm_point(self):
        cfg = SweepConfig(kind="gnm", sweep="n", values=(10,), m=0, trials=5, seed=1)
        (rec,) = run_sweep(cfg)
        assert rec.ystar_mean == 0.0 and rec.ystar_max == 0.0
        assert rec.m_realized_mean == 0.0
        assert math.isnan(rec.lower_bound)  # no arcs, no bound

    def test_jobs_do_not_change_output(self):
        cfg = SweepConfig(kind="gnp", sweep="n", values=(8, 10, 12), p=0.5, trials=8, seed=42)
        assert format_csv(run_sweep(cfg, jobs=1)) == format_csv(run_sweep(cfg, jobs=4))

    def test_point_statistics_are_consistent(self):
        cfg = SweepConfig(kind="gnp", sweep="p", values=(0.2, 0.6), n=12, trials=10, seed=5)
        for rec in run_sweep(cfg):
            assert rec.ystar_min <= rec.ystar_mean <= rec.ystar_max
            assert 0.0 <= rec.exact_fraction <= 1.0
            assert rec.exact_fraction == 1.0  # n=12 fits the exact budget
            assert rec.ystar_mean <= rec.m_realized_mean / 2 + 1e-9
            assert rec.half_m == rec.m_expected / 2

    @pytest.mark.slow
    def test_dense_tournament_sweep_brackets_mean(self):
        cfg = SweepConfig(
            kind="gnp",
            sweep="n",
            values=tuple(range(10, 25, 2)),
            p=1.0,
            trials=20,
            seed=11,
            budget=SolverBudget(exact_vertex_limit=24),
        )
        for rec in run_sweep(cfg):
            assert rec.exact_fraction == 1.0
            bound, _ = fas_lower_bound(rec.n, rec.m_expected)
            assert bound < rec.ystar_mean < rec.half_m
            if bound > 0:
                assert rec.ystar_min >= bound

    def test_solver_error_yields_diagnostic_record(self):
        # exact limit 30 lets n=30 through to the DP, which trips the memory guard
        cfg = SweepConfig(
            kind="tournament", sweep="n", values=(30,), trials=3, seed=0,
            budget=SolverBudget(exact_vertex_limit=30),
        )
        (rec,) = run_sweep(cfg)
        assert rec.trials == 0
        assert math.isnan(rec.ystar_mean) and math.isnan(rec.m_realized_mean)
        assert rec.exact_fraction == 0.0
        assert "nan" in format_csv([rec])

    def test_validation(self):
        with pytest.raises(FasboundError):
            SweepConfig(kind="gnp", sweep="p", values=(), n=10)
        with pytest.raises(FasboundError):
            SweepConfig(kind="gnm", sweep="p", values=(0.5,), n=10)
        with pytest.raises(FasboundError):
            SweepConfig(kind="gnp", sweep="n", values=(10,), p=0.5, trials=0)
        with pytest.raises(FasboundError):
            SweepConfig(kind="gnp", sweep="n", values=(10,))  # p missing


def _records():
    cfg = SweepConfig(kind="gnp", sweep="n", values=(8, 10), p=0.5, trials=4, seed=2)
    return run_sweep(cfg)


class TestCsv:
    def test_header_only_when_empty(self):
        assert format_csv([]) == ",".join(CSV_HEADER) + "\n"

    def test_one_record_two_lines(self):
        recs = _records()[:1]
        assert format_csv(recs).count("\n") == 2

    def test_round_trip(self, tmp_path):
        recs = _records()
        path = tmp_path / "sweep.csv"
        emit_csv(recs, path)
        back = read_csv(path)
        assert back == recs
        emit_csv(back, tmp_path / "again.csv")
        assert (tmp_path / "again.csv").read_bytes() == path.read_bytes()

    def test_round_trip_gnm_blank_p(self):
        cfg = SweepConfig(kind="gnm", sweep="n", values=(6,), m=5, trials=3, seed=4)
        recs = run_sweep(cfg)
        assert recs[0].p is None
        assert parse_csv(format_csv(recs)) == recs

    def test_header_check(self):
        with pytest.raises(FasboundError):
            parse_csv("nope,really\n1,2\n")
