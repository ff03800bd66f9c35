"""Weighted simple digraphs and their combinatorial structure.

Vertices are indexed ``0..n-1`` internally; ``labels`` carry display names.
An edge ``i -> j`` exists exactly when ``weights[i, j] > 0``.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from rankability.errors import InputError

DEFAULT_CYCLE_LIMIT = 10**6


@dataclass(frozen=True, eq=False)
class Digraph:
    """A finite simple digraph with non-negative edge weights.

    Parameters
    ----------
    weights
        Square matrix; entry ``(i, j)`` is the weight of edge ``i -> j``.
        The diagonal must be zero and every entry non-negative.
    labels
        Optional unique vertex names, one per row of ``weights``.
    """

    weights: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise InputError(f"weight matrix must be square and non-empty, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise InputError("weight matrix contains non-finite entries")
        if np.any(w < 0):
            i, j = np.argwhere(w < 0)[0]
            raise InputError(f"negative weight {w[i, j]} on edge ({i}, {j})")
        diag = np.flatnonzero(np.diag(w))
        if diag.size:
            raise InputError(f"self-loop on vertex {int(diag[0])}; simple digraphs only")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != w.shape[0]:
                raise InputError(f"expected {w.shape[0]} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise InputError("vertex labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int] | tuple[int, int, float]],
        labels: Sequence[str] | None = None,
    ) -> "Digraph":
        """Build from ``(i, j)`` or ``(i, j, w)`` tuples with 0-based vertices."""
        w = np.zeros((n, n))
        for edge in edges:
            i, j = edge[0], edge[1]
            w[i, j] = edge[2] if len(edge) > 2 else 1.0
        return cls(w, None if labels is None else tuple(labels))

    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(i), int(j), float(self.weights[i, j])) for i, j in np.argwhere(self.weights > 0)]

    def successors(self) -> list[list[int]]:
        return [np.flatnonzero(row).tolist() for row in self.weights > 0]

    def vertex_name(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i + 1)

    def relabel(self, order: Sequence[int]) -> "Digraph":
        """Return the graph whose vertex ``k`` is this graph's vertex ``order[k]``."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise InputError(f"{order} is not a permutation of 0..{self.n - 1}")
        labels = None if self.labels is None else tuple(self.labels[i] for i in order)
        return Digraph(self.weights[np.ix_(order, order)], labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.weights, other.weights)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components in Frobenius normal form order.

    ``components[k]`` only has edges into components ``k+1, ...``; the
    concatenation of components is ``permutation``.
    """

    components: tuple[tuple[int, ...], ...]
    permutation: tuple[int, ...]
    isolated_flags: tuple[bool, ...]

    @property
    def isolated_count(self) -> int:
        return sum(self.isolated_flags)


@dataclass(frozen=True)
class CycleReport:
    count: int
    cycles: list[list[int]] = field(default_factory=list)
    truncated: bool = False


def out_degrees(g: Digraph) -> np.ndarray:
    """Row sums of the weight matrix."""
    return g.weights.sum(axis=1)


def laplacian(g: Digraph) -> np.ndarray:
    """Return ``D - A``: out-degree diagonal minus the weight matrix."""
    lap = -g.weights.copy()
    lap[np.diag_indices(g.n)] = out_degrees(g)
    return lap


def _tarjan(adj: dict[int, Sequence[int]]) -> list[list[int]]:
    # Iterative Tarjan; components come out sinks-first.
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    result: list[list[int]] = []
    counter = 0
    for root in adj:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    result.append(comp)
    return result


def scc(g: Digraph) -> SccDecomposition:
    """Decompose ``g`` into strongly connected components.

    Components are ordered topologically in the condensation (sources first),
    breaking ties by the smallest vertex they contain, so permuting the
    Laplacian by ``permutation`` gives a block upper-triangular matrix.
    """
    succ = g.successors()
    raw = _tarjan({v: succ[v] for v in range(g.n)})
    comp_of = [0] * g.n
    comps = [tuple(sorted(c)) for c in raw]
    for k, c in enumerate(comps):
        for v in c:
            comp_of[v] = k

    out_edges: list[set[int]] = [set() for _ in comps]
    indeg = [0] * len(comps)
    for v in range(g.n):
        for w in succ[v]:
            a, b = comp_of[v], comp_of[w]
            if a != b and b not in out_edges[a]:
                out_edges[a].add(b)
                indeg[b] += 1

    heap = [(comps[k][0], k) for k in range(len(comps)) if indeg[k] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        _, k = heapq.heappop(heap)
        order.append(k)
        for b in out_edges[k]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (comps[b][0], b))

    components = tuple(comps[k] for k in order)
    return SccDecomposition(
        components=components,
        permutation=tuple(v for c in components for v in c),
        isolated_flags=tuple(not out_edges[k] for k in order),
    )


def is_acyclic(g: Digraph) -> bool:
    return all(len(c) == 1 for c in scc(g).components)


def _unblock(v: int, blocked: set[int], b_sets: dict[int, set[int]]) -> None:
    todo = [v]
    while todo:
        u = todo.pop()
        if u in blocked:
            blocked.discard(u)
            todo.extend(b_sets[u])
            b_sets[u].clear()


def iter_simple_cycles(g: Digraph) -> Iterator[list[int]]:
    """Yield every simple directed cycle of ``g`` once (Johnson, 1975).

    Each cycle starts at its smallest vertex. Weights are ignored; only the
    edge support matters.
    """
    succ = g.successors()
    sub = {v: set(succ[v]) for v in range(g.n)}
    pending = [c for c in _tarjan({v: sorted(s) for v, s in sub.items()}) if len(c) > 1]
    while pending:
        comp = pending.pop()
        members = set(comp)
        start = min(comp)
        local = {v: sorted(sub[v] & members) for v in comp}

        path = [start]
        blocked = {start}
        closed: set[int] = set()
        b_sets: dict[int, set[int]] = defaultdict(set)
        stack = [(start, list(reversed(local[start])))]
        while stack:
            v, nbrs = stack[-1]
            if nbrs:
                w = nbrs.pop()
                if w == start:
                    yield list(path)
                    closed.update(path)
                elif w not in blocked:
                    path.append(w)
                    stack.append((w, list(reversed(local[w]))))
                    closed.discard(w)
                    blocked.add(w)
                    continue
            if not nbrs:
                if v in closed:
                    _unblock(v, blocked, b_sets)
                else:
                    for w in local[v]:
                        b_sets[w].add(v)
                stack.pop()
                path.pop()

        rest = members - {start}
        rest_adj = {v: sorted(sub[v] & rest) for v in sorted(rest)}
        pending.extend(c for c in _tarjan(rest_adj) if len(c) > 1)


def simple_cycles(g: Digraph, cap: int | None = None, limit: int = DEFAULT_CYCLE_LIMIT) -> CycleReport:
    """Count simple cycles, listing at most ``cap`` of them.

    Counting stops at ``limit`` cycles, in which case ``truncated`` is set and
    ``count`` is a lower bound.
    """
    if cap is not None and cap < 1:
        raise InputError(f"cap must be positive, got {cap}")
    listed: list[list[int]] = []
    count = 0
    for cycle in iter_simple_cycles(g):
        if count >= limit:
            return CycleReport(count, listed, truncated=True)
        count += 1
        if cap is None or len(listed) < cap:
            listed.append(cycle)
    return CycleReport(count, listed, truncated=False)
