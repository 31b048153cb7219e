"""Budgeted link-query measurement of hidden networks.

A hidden graph sits behind a pair-query oracle; measurement strategies
spend a query budget discovering links, efficiency metrics score how early
the links arrived, and bias reports compare the observed sample against
the ground truth.
"""

from .bias import BiasReport, SampleStats, bias_report, observed_graph, sample_stats
from .edgelist import EdgeListResult, load_edge_list, write_edge_list
from .generators import (
    GeneratorSpec,
    build_graph,
    erdos_renyi,
    parse_generator_spec,
    preferential_attachment,
    small_world,
)
from .graph import (
    Graph,
    GraphStats,
    clustering_coefficient,
    density,
    graph_stats,
    local_clustering,
    transitivity,
)
from .metrics import (
    EfficiencyReport,
    build_report,
    efficiency,
    efficiency_max,
    efficiency_min,
    efficiency_random_exact,
    efficiency_random_expected,
    normalized_efficiency,
    relative_efficiency,
)
from .oracle import (
    BudgetExhaustedError,
    DuplicateQueryError,
    MeasurementError,
    MeasurementState,
    MeasurementTrace,
    QueryEvent,
)
from .strategies import (
    STRATEGY_NAMES,
    StrategySpec,
    run_measurement,
    run_strategy,
    strat_complete,
    strat_complete_simple,
    strat_random,
    strat_tbf,
    strat_tbf_complete,
    strat_v_random,
)

__version__ = "0.1.0"

__all__ = [
    "BiasReport",
    "BudgetExhaustedError",
    "DuplicateQueryError",
    "EdgeListResult",
    "EfficiencyReport",
    "GeneratorSpec",
    "Graph",
    "GraphStats",
    "MeasurementError",
    "MeasurementState",
    "MeasurementTrace",
    "QueryEvent",
    "STRATEGY_NAMES",
    "SampleStats",
    "StrategySpec",
    "bias_report",
    "build_graph",
    "build_report",
    "clustering_coefficient",
    "density",
    "efficiency",
    "efficiency_max",
    "efficiency_min",
    "efficiency_random_exact",
    "efficiency_random_expected",
    "erdos_renyi",
    "graph_stats",
    "load_edge_list",
    "local_clustering",
    "normalized_efficiency",
    "observed_graph",
    "parse_generator_spec",
    "preferential_attachment",
    "relative_efficiency",
    "run_measurement",
    "run_strategy",
    "sample_stats",
    "small_world",
    "strat_complete",
    "strat_complete_simple",
    "strat_random",
    "strat_tbf",
    "strat_tbf_complete",
    "strat_v_random",
    "transitivity",
    "write_edge_list",
    "__version__",
]
