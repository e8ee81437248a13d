"""Random oriented digraphs, minimum feedback arc set solvers, and bounds."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    binomial_tail_exact,
    fas_lower_bound,
    heuristic_fas_estimate,
    hoeffding_tail_bound,
    log_binomial_tail_exact,
    log_factorial_exact,
    log_permutation_union_bound,
    make_bound_report,
    optimal_t,
    permutation_union_bound,
    stirling_log_factorial_upper,
    tournament_lower_bound,
)
from .errors import (
    BadDomainError,
    BadProbabilityError,
    DuplicateArcError,
    FasboundError,
    GraphError,
    LengthMismatchError,
    MemoryBudgetExceededError,
    MixedSweepError,
    SelfLoopError,
    TooLargeError,
    TooManyArcsError,
    TooManyConfigurationsError,
    TwoCycleError,
    VertexOutOfRangeError,
)
from .experiments import (
    CSV_HEADER,
    ExperimentRecord,
    LowerBoundTrialReport,
    SweepConfig,
    UnionBoundReport,
    UnionBoundRow,
    YstarDistribution,
    emit_csv,
    empirical_ystar_distribution,
    format_csv,
    parse_csv,
    read_csv,
    run_sweep,
    verify_lower_bound_montecarlo,
    verify_union_bound,
)
from .graph import (
    FasResult,
    OrientedDigraph,
    VertexOrdering,
    average_degree,
    count_feedback_arcs,
    format_edgelist,
    is_acyclic,
    parse_edgelist,
    read_edgelist,
    relabel,
    write_edgelist,
)
from .models import (
    ModelSpec,
    RandomStream,
    derive_seed,
    expected_edges,
    sample,
    sample_gnm_oriented,
    sample_gnp_oriented,
    sample_tournament,
    splitmix64,
)
from .plotting import emit_plot
from .solvers import (
    SolverBudget,
    local_search_insertion,
    solve_auto,
    solve_brute_force,
    solve_exact_dp,
    solve_greedy,
)
