"""Rankability of pairwise-comparison data via Laplacian spectra."""

from rankability.digraph import (
    CycleReport,
    Digraph,
    SccDecomposition,
    is_acyclic,
    laplacian,
    out_degrees,
    scc,
    simple_cycles,
)
from rankability.errors import (
    ConvergenceError,
    InputError,
    LimitError,
    RankabilityError,
)
from rankability.measures import (
    EdgeRankabilityResult,
    RankabilityReport,
    dominance_graph,
    edge_r_exact,
    is_complete_dominance,
    perturb_edge,
    spec_r,
)
from rankability.spectral import (
    HausdorffResult,
    Spectrum,
    eigen_condition_numbers,
    eigenvalues,
    hausdorff,
    spectral_variation,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CycleReport",
    "Digraph",
    "EdgeRankabilityResult",
    "HausdorffResult",
    "InputError",
    "LimitError",
    "RankabilityError",
    "RankabilityReport",
    "SccDecomposition",
    "Spectrum",
    "dominance_graph",
    "edge_r_exact",
    "eigen_condition_numbers",
    "eigenvalues",
    "hausdorff",
    "is_acyclic",
    "is_complete_dominance",
    "laplacian",
    "out_degrees",
    "perturb_edge",
    "scc",
    "simple_cycles",
    "spec_r",
    "spectral_variation",
]
