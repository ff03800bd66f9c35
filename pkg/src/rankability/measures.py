"""Rankability measures: the spectral-degree score and the exact edge-change score."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from rankability.digraph import Digraph, laplacian, out_degrees
from rankability.errors import InputError, LimitError
from rankability.spectral import Spectrum, eigenvalues, hausdorff, mult_tolerance

DEFAULT_MAX_N = 9
DEFAULT_MAX_ORDERS = 10


@dataclass(frozen=True)
class RankabilityReport:
    spec_r: float
    hd_degree: float
    hd_laplacian: float
    n: int
    degree_spectrum: Spectrum
    laplacian_spectrum: Spectrum


@dataclass(frozen=True)
class EdgeRankabilityResult:
    k: int
    p: int
    edge_r: float
    k_max: int
    p_max: int
    optimal_orders: list[tuple[int, ...]] = field(default_factory=list)


def _check_unit_weights(g: Digraph) -> None:
    if np.any(g.weights > 1.0):
        i, j = np.argwhere(g.weights > 1.0)[0]
        raise InputError(f"weight {g.weights[i, j]} on edge ({i}, {j}) is outside [0, 1]")


def dominance_spectrum(n: int) -> Spectrum:
    return Spectrum.from_values(np.arange(n - 1, -1, -1, dtype=float))


def spec_r(g: Digraph) -> RankabilityReport:
    """Spectral-degree rankability of ``g``.

    Compares both the out-degree multiset and the Laplacian spectrum with
    ``{n-1, ..., 0}``, the shared values of every complete dominance graph,
    and scales the summed Hausdorff distances by ``2(n-1)``. A single vertex
    scores 1 by convention.

    Raises
    ------
    InputError
        If any weight lies outside ``[0, 1]``.
    """
    _check_unit_weights(g)
    n = g.n
    degrees = Spectrum.from_values(out_degrees(g))
    lap = eigenvalues(laplacian(g))
    target = dominance_spectrum(n)
    if n == 1:
        return RankabilityReport(1.0, 0.0, 0.0, 1, degrees, lap)
    hd_d = hausdorff(degrees, target).distance
    hd_l = hausdorff(lap, target).distance
    score = 1.0 - (hd_d + hd_l) / (2.0 * (n - 1))
    return RankabilityReport(score, hd_d, hd_l, n, degrees, lap)


def dominance_graph(n: int, order: Sequence[int] | None = None) -> Digraph:
    """Acyclic tournament in which ``order[a]`` beats ``order[b]`` whenever ``a < b``."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if order is None:
        order = range(n)
    order = [int(v) for v in order]
    if sorted(order) != list(range(n)):
        raise InputError(f"{order} is not a permutation of 0..{n - 1}")
    w = np.zeros((n, n))
    for a, u in enumerate(order):
        w[u, order[a + 1 :]] = 1.0
    return Digraph(w)


def is_complete_dominance(g: Digraph) -> bool:
    """Test the spectral-degree characterization numerically.

    True when the out-degrees are ``{n-1, ..., 0}`` to within ``1e-8`` and the
    Laplacian spectrum matches the same multiset to within the multiplicity
    tolerance.
    """
    _check_unit_weights(g)
    n = g.n
    target = np.arange(n - 1, -1, -1, dtype=float)
    if np.max(np.abs(np.sort(out_degrees(g))[::-1] - target)) > 1e-8:
        return False
    lap = laplacian(g)
    return hausdorff(eigenvalues(lap), dominance_spectrum(n)).distance <= mult_tolerance(lap)


def perturb_edge(g: Digraph, i: int, j: int, new_weight: float) -> Digraph:
    """Copy of ``g`` with the weight of edge ``i -> j`` replaced."""
    if i == j:
        raise InputError(f"cannot set a self-loop on vertex {i}")
    if not (new_weight >= 0):
        raise InputError(f"edge weights must be non-negative, got {new_weight}")
    w = g.weights.copy()
    w[i, j] = new_weight
    return Digraph(w, g.labels)


def ordering_costs(adjacency: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """Edge changes needed to turn ``adjacency`` into each ranking's dominance graph.

    Row ``r`` of ``perms`` lists vertices best first. Each unordered pair
    ``{u, v}`` with ``u`` above ``v`` costs one change if ``u -> v`` is missing
    plus one if ``v -> u`` is present.
    """
    pair_cost = (1 - adjacency + adjacency.T).astype(np.int64)
    n = perms.shape[1]
    total = np.zeros(perms.shape[0], dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            total += pair_cost[perms[:, a], perms[:, b]]
    return total


def edge_r_exact(
    g: Digraph, max_n: int = DEFAULT_MAX_N, max_orders: int = DEFAULT_MAX_ORDERS
) -> EdgeRankabilityResult:
    """Edge-change rankability by exhaustive search over all rankings.

    Every complete dominance graph on the vertex set is the dominance pattern
    of exactly one ranking, so scoring all ``n!`` rankings yields the minimum
    number of edge changes ``k`` and the number ``p`` of dominance graphs
    reachable with ``k`` changes.

    Raises
    ------
    InputError
        If a weight is not 0 or 1.
    LimitError
        If ``g.n > max_n``.
    """
    if not np.all((g.weights == 0) | (g.weights == 1)):
        raise InputError("edge-change rankability needs binary weights")
    n = g.n
    if n > max_n:
        raise LimitError(f"n = {n} exceeds max_n = {max_n}; raise --max-n to allow {math.factorial(n)} orderings")
    k_max = (n * n - n) // 2
    p_max = math.factorial(n)
    if n == 1:
        return EdgeRankabilityResult(0, 1, 1.0, 0, 1, [(0,)])

    adjacency = g.weights.astype(np.int64)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    costs = ordering_costs(adjacency, perms)
    k = int(costs.min())
    winners = np.flatnonzero(costs == k)
    p = int(winners.size)
    orders = [tuple(int(v) for v in perms[r]) for r in winners[:max_orders]]
    return EdgeRankabilityResult(k, p, 1.0 - k * p / (k_max * p_max), k_max, p_max, orders)
