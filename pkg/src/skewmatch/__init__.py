"""Matching numbers, NEB trees and prescribed skew spectra on graphs."""

from .errors import ConvergenceError, DomainError, JacobianError, ParseError, SkewMatchError
from .graph import (
    Graph,
    Matching,
    VertexRelabeling,
    brute_force_matching_number,
    connected_components,
    maximum_matching,
    odd_components_after_deletion,
    parse_graph,
    relabel_for_matching,
    spanning_tree_containing,
    tutte_has_perfect_matching,
)
from .neb import NebReport, RootedSubtreeRef, minimal_non_neb_subtree, neb_at, neb_report, subtree_after_path
from .solver import SolverConfig, SolverResult, SpectralTarget, seed_matrix, solve, verify_solution
from .spectral import (
    SkewMatrix,
    SkewPattern,
    SkewSpectrum,
    build_pattern,
    eigenvalue_derivative,
    evaluate_pattern,
    jacobian_x,
    max_skew_rank,
    rank_exact_rational,
    rank_numeric,
    skew_eigen,
)

__version__ = "0.1.0"
