"""Named reference digraphs.

The eight six-vertex binary graphs are the classic rankability benchmarks
(complete dominance down to empty). The two eight-team graphs are Big East
football seasons 2001 and 2007 with vertices numbered by final Elo rank.
Vertex numbers in the edge lists below are 1-based, as in their sources.
"""

from __future__ import annotations

from rankability.digraph import Digraph

_DOMINANCE_6 = [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]

_EDGES: dict[str, list[tuple[int, int]]] = {
    "complete_dominance": _DOMINANCE_6,
    "perturbed_dominance": [e for e in _DOMINANCE_6 if e != (2, 3)] + [(3, 1)],
    "perturbed_random_c": [
        (1, 2), (1, 3), (1, 6), (2, 4), (2, 5), (4, 1), (4, 2),
        (4, 6), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3), (6, 5),
    ],
    "nearly_disconnected": [(1, 2), (1, 3), (1, 4), (2, 3), (4, 5), (4, 6), (5, 6)],
    "random": [
        (1, 2), (1, 3), (1, 6), (2, 4), (2, 5), (4, 1),
        (4, 6), (5, 1), (5, 2), (6, 2), (6, 3), (6, 5),
    ],
    "cycle": [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)],
    "completely_connected": [(i, j) for i in range(1, 7) for j in range(1, 7) if i != j],
    "empty": [],
}

# most to least rankable
BENCHMARK_NAMES = tuple(_EDGES)

_BIG_EAST: dict[int, list[tuple[int, int]]] = {
    2001: [
        (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8),
        (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
        (3, 5), (3, 6), (3, 7), (3, 8),
        (4, 3), (4, 6), (4, 7), (4, 8),
        (5, 4), (5, 6), (5, 7), (5, 8),
        (6, 7), (6, 8),
        (7, 8),
    ],
    2007: [
        (1, 2), (1, 3), (1, 5), (1, 6), (1, 8),
        (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
        (3, 2), (3, 4), (3, 5), (3, 8),
        (4, 1), (4, 6), (4, 7), (4, 8),
        (5, 4), (5, 7), (5, 8),
        (6, 3), (6, 5), (6, 7),
        (7, 1), (7, 3), (7, 8),
        (8, 6),
    ],
}


def _build(n: int, edges: list[tuple[int, int]]) -> Digraph:
    return Digraph.from_edges(n, [(i - 1, j - 1) for i, j in edges], labels=[str(v) for v in range(1, n + 1)])


def benchmark(name: str) -> Digraph:
    try:
        edges = _EDGES[name]
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARK_NAMES)}") from None
    return _build(6, edges)


def complete_dominance() -> Digraph:
    return benchmark("complete_dominance")


def perturbed_dominance() -> Digraph:
    """Dominance graph with edge 2->3 removed and edge 3->1 added."""
    return benchmark("perturbed_dominance")


def perturbed_random_c() -> Digraph:
    """``random()`` plus edges 4->2 and 6->1."""
    return benchmark("perturbed_random_c")


def nearly_disconnected() -> Digraph:
    return benchmark("nearly_disconnected")


def random() -> Digraph:
    return benchmark("random")


def cycle() -> Digraph:
    return benchmark("cycle")


def completely_connected() -> Digraph:
    return benchmark("completely_connected")


def empty() -> Digraph:
    return benchmark("empty")


def example_three_cycle() -> Digraph:
    """Three vertices, edges 1->3, 2->1, 3->1: dominance spectrum without dominance."""
    return _build(3, [(1, 3), (2, 1), (3, 1)])


def big_east(year: int) -> Digraph:
    """Binary win digraph of a Big East season; vertex ``k`` finished ``k``-th by Elo."""
    try:
        return _build(8, _BIG_EAST[year])
    except KeyError:
        raise KeyError(f"no Big East digraph shipped for {year}; have {sorted(_BIG_EAST)}") from None
