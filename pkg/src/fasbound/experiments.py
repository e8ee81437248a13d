"""Monte Carlo sweeps, exhaustive small-case enumeration, and verification.

A sweep samples ``trials`` graphs per point, solves each, and records
aggregate minimum-feedback statistics next to the closed-form bound
values for that point.  Per-trial seeds are ``derive_seed(master,
point_index, trial_index)``, so any single trial can be replayed from
the CSV alone and results never depend on execution order.

The enumeration routines walk every equiprobable configuration (choice
of m pairs times 2^m orientations) of the small random graphs, giving
exact distributions to check the probabilistic bounds against.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bounds import (
    fas_lower_bound,
    heuristic_fas_estimate,
    permutation_union_bound,
)
from .errors import FasboundError, TooLargeError, TooManyConfigurationsError
from .graph import OrientedDigraph, is_acyclic
from .models import ModelSpec, derive_seed, sample, sample_gnm_oriented
from .solvers import (
    DEFAULT_BRUTE_LIMIT,
    DEFAULT_EXACT_LIMIT,
    SolverBudget,
    _min_feedback_brute,
    solve_auto,
    solve_exact_dp,
)

MAX_CONFIGURATIONS = 1_000_000


@dataclass(frozen=True)
class SweepConfig:
    """One Monte Carlo sweep: a model family, a swept axis, and budgets.

    ``sweep`` is "n" (vary the vertex count; gnm needs a fixed ``m``,
    gnp a fixed ``p``) or "p" (vary the inclusion probability of a gnp
    model at fixed ``n``).
    """

    kind: str
    sweep: str
    values: tuple
    n: int | None = None
    p: float | None = None
    m: int | None = None
    trials: int = 20
    seed: int = 0
    budget: SolverBudget = field(default_factory=SolverBudget)

    def __post_init__(self):
        if self.sweep not in ("n", "p"):
            raise FasboundError(f"sweep must be 'n' or 'p', got {self.sweep!r}")
        if not self.values:
            raise FasboundError("sweep needs at least one point")
        if self.trials < 1:
            raise FasboundError(f"trials must be >= 1, got {self.trials}")
        if self.sweep == "p" and self.kind != "gnp":
            raise FasboundError("p-sweeps only make sense for the gnp model")
        # fail fast on missing fixed parameters
        for value in self.values:
            self.point_spec(value)

    def point_spec(self, value) -> ModelSpec:
        """ModelSpec for one sweep point."""
        if self.sweep == "n":
            n = int(value)
            if self.kind == "gnm":
                return ModelSpec("gnm", n, m=self.m)
            if self.kind == "gnp":
                return ModelSpec("gnp", n, p=self.p)
            return ModelSpec("tournament", n)
        return ModelSpec("gnp", self.n, p=float(value))


@dataclass(frozen=True)
class ExperimentRecord:
    """Aggregated results plus bound overlays for one sweep point."""

    model: str
    n: int
    p: float | None
    m_expected: float
    m_realized_mean: float
    trials: int
    ystar_mean: float
    ystar_std: float
    ystar_min: float
    ystar_max: float
    exact_fraction: float
    lower_bound: float
    heuristic_est: float
    half_m: float
    seed: int


@dataclass(frozen=True)
class YstarDistribution:
    """Exact distribution of the minimum feedback count over all configurations."""

    n: int
    m: int
    pmf: dict[int, Fraction]
    total_configurations: int

    def cdf(self, k: int) -> Fraction:
        return sum((pr for y, pr in self.pmf.items() if y <= k), Fraction(0))


@dataclass(frozen=True)
class UnionBoundRow:
    k: int
    exact_cdf: Fraction
    bound: Fraction
    bound_float: float
    ok: bool


@dataclass(frozen=True)
class UnionBoundReport:
    """Exhaustive check of Pr(Y* <= k) <= min(1, n! Pr(Y <= k)) at every k."""

    n: int
    m: int
    total_configurations: int
    rows: tuple[UnionBoundRow, ...]
    passed: bool


@dataclass(frozen=True)
class LowerBoundTrialReport:
    """Monte Carlo check that exact minima stay above the closed-form bound."""

    n: int
    m: int
    trials: int
    seed: int
    bound: float
    failure_cap: float
    violations: int
    violation_rate: float
    min_ystar: int
    passed: bool


def _exact_ystar(n: int, arcs) -> int:
    if n <= DEFAULT_BRUTE_LIMIT:
        return _min_feedback_brute(n, arcs)[0]
    g = OrientedDigraph(n, arcs)
    if n <= DEFAULT_EXACT_LIMIT:
        return solve_exact_dp(g).feedback_count
    if is_acyclic(g):
        return 0
    raise TooLargeError(f"cannot solve n={n} exactly")


def empirical_ystar_distribution(
    n: int, m: int, max_configurations: int = MAX_CONFIGURATIONS
) -> YstarDistribution:
    """Exact pmf of the minimum feedback count by full enumeration.

    Every configuration (an m-subset of the C(n,2) pairs plus one of the
    2^m orientations) is equiprobable; each is solved exactly.
    """
    npairs = n * (n - 1) // 2
    if not 0 <= m <= npairs:
        raise FasboundError(f"m={m} outside 0..C({n},2)={npairs}")
    total = math.comb(npairs, m) * 2 ** m
    if total > max_configurations:
        raise TooManyConfigurationsError(
            f"(n={n}, m={m}) has {total} configurations, guard is {max_configurations}"
        )
    all_pairs = list(combinations(range(n), 2))
    counts: dict[int, int] = {}
    for chosen in combinations(all_pairs, m):
        for bits in range(2 ** m):
            arcs = [
                (u, v) if not bits >> i & 1 else (v, u)
                for i, (u, v) in enumerate(chosen)
            ]
            y = _exact_ystar(n, arcs)
            counts[y] = counts.get(y, 0) + 1
    pmf = {y: Fraction(c, total) for y, c in sorted(counts.items())}
    return YstarDistribution(n=n, m=m, pmf=pmf, total_configurations=total)


def verify_union_bound(n: int, m: int, max_configurations: int = MAX_CONFIGURATIONS) -> UnionBoundReport:
    """Compare the exact CDF of Y* against n! times the binomial tail, all k.

    Both sides are exact rationals, so a pass means the inequality holds
    with no tolerance at all; the float evaluation of the bound is
    recorded alongside for reference.
    """
    dist = empirical_ystar_distribution(n, m, max_configurations)
    n_fact = math.factorial(n)
    denom = 2 ** m
    rows = []
    running = 0
    passed = True
    for k in range(m + 1):
        cdf = dist.cdf(k)
        running += math.comb(m, k)
        bound = min(Fraction(1), n_fact * Fraction(running, denom))
        bound_float = min(1.0, permutation_union_bound(n, m, k))
        ok = cdf <= bound
        passed = passed and ok
        rows.append(UnionBoundRow(k=k, exact_cdf=cdf, bound=bound, bound_float=bound_float, ok=ok))
    return UnionBoundReport(
        n=n,
        m=m,
        total_configurations=dist.total_configurations,
        rows=tuple(rows),
        passed=passed,
    )


def verify_lower_bound_montecarlo(
    n: int,
    m: int,
    trials: int,
    seed: int,
    exact_vertex_limit: int = DEFAULT_EXACT_LIMIT,
) -> LowerBoundTrialReport:
    """Count exact-solved random instances falling below the lower bound.

    Trial t draws its graph with ``derive_seed(seed, t)``.  The check
    requires exact minima, so n must fit the subset-DP limit.
    """
    if n > exact_vertex_limit:
        raise TooLargeError(f"exact verification needs n <= {exact_vertex_limit}, got n={n}")
    if trials < 1:
        raise FasboundError(f"trials must be >= 1, got {trials}")
    bound, cap = fas_lower_bound(n, float(m))
    violations = 0
    min_y = m
    for t in range(trials):
        g = sample_gnm_oriented(n, m, derive_seed(seed, t))
        y = solve_exact_dp(g, exact_vertex_limit).feedback_count
        min_y = min(min_y, y)
        if y < bound:
            violations += 1
    rate = violations / trials
    return LowerBoundTrialReport(
        n=n,
        m=m,
        trials=trials,
        seed=seed,
        bound=bound,
        failure_cap=cap,
        violations=violations,
        violation_rate=rate,
        min_ystar=min_y,
        passed=rate <= cap,
    )


def _aggregate_point(
    cfg: SweepConfig, point_index: int, spec: ModelSpec, jobs: int
) -> ExperimentRecord:
    def run_one(trial: int) -> tuple[int, int, bool]:
        g = sample(spec, derive_seed(cfg.seed, point_index, trial))
        res = solve_auto(g, cfg.budget)
        return g.m, res.feedback_count, res.exact

    m_expected = spec.expected_m()
    try:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(run_one, range(cfg.trials)))
        else:
            outcomes = [run_one(t) for t in range(cfg.trials)]
    except FasboundError:
        nan = float("nan")
        outcomes = None
        stats = (nan, nan, nan, nan, nan, 0.0)
    if outcomes is not None:
        ys = [float(y) for _, y, _ in outcomes]
        mean = math.fsum(ys) / len(ys)
        std = math.sqrt(math.fsum((y - mean) ** 2 for y in ys) / len(ys))
        m_real = math.fsum(float(mm) for mm, _, _ in outcomes) / len(ys)
        exact_frac = sum(1 for _, _, ex in outcomes if ex) / len(ys)
        stats = (mean, std, min(ys), max(ys), m_real, exact_frac)
    mean, std, y_min, y_max, m_real, exact_frac = stats

    if spec.n >= 2 and m_expected > 0:
        lb, _ = fas_lower_bound(spec.n, m_expected)
        heur = heuristic_fas_estimate(spec.n, m_expected)
    else:
        lb = heur = float("nan")
    return ExperimentRecord(
        model=cfg.kind,
        n=spec.n,
        p=spec.p,
        m_expected=m_expected,
        m_realized_mean=m_real,
        trials=cfg.trials if outcomes is not None else 0,
        ystar_mean=mean,
        ystar_std=std,
        ystar_min=y_min,
        ystar_max=y_max,
        exact_fraction=exact_frac,
        lower_bound=lb,
        heuristic_est=heur,
        half_m=m_expected / 2.0,
        seed=cfg.seed,
    )


def run_sweep(cfg: SweepConfig, jobs: int = 1) -> list[ExperimentRecord]:
    """Run every sweep point; output is identical for any ``jobs`` value."""
    return [
        _aggregate_point(cfg, i, cfg.point_spec(value), jobs)
        for i, value in enumerate(cfg.values)
    ]


CSV_HEADER = (
    "model", "n", "p", "m_expected", "m_realized_mean", "trials",
    "ystar_mean", "ystar_std", "ystar_min", "ystar_max", "exact_fraction",
    "lower_bound", "heuristic_est", "half_m", "seed",
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(records: list[ExperimentRecord]) -> str:
    """Render records as CSV text (header always present)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.model, r.n, _csv_cell(r.p), _csv_cell(r.m_expected),
            _csv_cell(r.m_realized_mean), r.trials, _csv_cell(r.ystar_mean),
            _csv_cell(r.ystar_std), _csv_cell(r.ystar_min), _csv_cell(r.ystar_max),
            _csv_cell(r.exact_fraction), _csv_cell(r.lower_bound),
            _csv_cell(r.heuristic_est), _csv_cell(r.half_m), r.seed,
        ])
    return buf.getvalue()


def emit_csv(records: list[ExperimentRecord], path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_csv(records))


def parse_csv(text: str) -> list[ExperimentRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise FasboundError(f"unexpected CSV header {header!r}")
    records = []
    for row in reader:
        if not row:
            continue
        records.append(ExperimentRecord(
            model=row[0],
            n=int(row[1]),
            p=float(row[2]) if row[2] else None,
            m_expected=float(row[3]),
            m_realized_mean=float(row[4]),
            trials=int(row[5]),
            ystar_mean=float(row[6]),
            ystar_std=float(row[7]),
            ystar_min=float(row[8]),
            ystar_max=float(row[9]),
            exact_fraction=float(row[10]),
            lower_bound=float(row[11]),
            heuristic_est=float(row[12]),
            half_m=float(row[13]),
            seed=int(row[14]),
        ))
    return records


def read_csv(path) -> list[ExperimentRecord]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_csv(fh.read())
