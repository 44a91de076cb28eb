"""Resistance distances, Kirchhoff indices and group resistance minimisation
on strongly connected weighted digraphs."""
from .errors import (
    BudgetExceededError,
    DirresError,
    GeneratorError,
    GraphError,
    NumericalError,
    ParseError,
    SingularMatrixError,
)
from .generators import GenSpec, gen_directed_er, gen_directed_sf, gen_directed_ws
from .graph import (
    Digraph,
    StationaryDistribution,
    build_digraph,
    is_strongly_connected,
    largest_scc,
    stationary_distribution,
    transition_matrix,
)
from .rdm import (
    SelectionResult,
    baseline_min_res,
    baseline_random,
    baseline_top_degree,
    brute_force_rdm,
    greedy_rdm,
    marginal_gain,
)
from .resistance import (
    ResistanceEngine,
    build_engine,
    group_resistance,
    group_resistance_point,
    resistance_via_submatrix,
)

__version__ = "0.1.0"
