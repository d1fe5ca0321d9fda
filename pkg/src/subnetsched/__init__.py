"""Sub-network scheduling on wireless conflict graphs with local views."""

from .cliques import (
    CliqueVertex,
    ConsolidatedGraph,
    build_temp_graph,
    enumerate_r_cliques,
    induced_diameter,
    local_temp_graph,
    temp_graph,
)
from .experiment import ConfigError, ExperimentConfig, MetricsRow, figure_recipes, get_preset, run_experiment
from .generators import GenSpec, barabasi_albert, erdos_renyi, geometric, line_clique, line_star
from .graph import (
    DISCONNECTED,
    UNREACHABLE,
    ConflictGraph,
    GraphInputError,
    InterferenceNetwork,
    ball,
    bfs_distance,
    max_degree,
    read_edge_list,
    write_edge_list,
)
from .metrics import (
    AlphaReport,
    NetRateBounds,
    alpha_aggressive_ratio,
    alpha_aggressive_sum,
    alpha_conservative,
    alpha_dc,
    alpha_empirical,
    alpha_ms,
    ms_schedule,
    net_rate_bounds,
)
from .scheduler import ColorAssignment, kuhn_k, multicolor, schedule
from .selection import (
    InvariantViolation,
    SelectionResult,
    aggressive_centralized,
    aggressive_distributed,
    check_view_consistency,
    conservative_select,
)

__version__ = "0.1.0"
