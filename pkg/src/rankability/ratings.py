"""Elo ratings and the statistics used to validate rankability against them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rankability.errors import InputError
from rankability.ingest import RoundSeries

OUTCOMES = (0.0, 0.5, 1.0)


@dataclass(frozen=True)
class EloConfig:
    """Elo parameters. Chess uses ``k_factor=40, xi=400``; college football ``32, 1000``."""

    k_factor: float = 40.0
    xi: float = 400.0
    initial_rating: float = 0.0
    home_advantage: float = 0.0

    def __post_init__(self) -> None:
        if not self.k_factor > 0:
            raise InputError(f"k_factor must be positive, got {self.k_factor}")
        if not self.xi > 0:
            raise InputError(f"xi must be positive, got {self.xi}")


CHESS = EloConfig(40.0, 400.0)
FOOTBALL = EloConfig(32.0, 1000.0)


@dataclass(frozen=True, eq=False)
class EloTable:
    """Ratings after each round; row 0 holds the initial ratings."""

    entities: tuple[str, ...]
    ratings_by_round: np.ndarray

    @property
    def current(self) -> np.ndarray:
        return self.ratings_by_round[-1]

    @property
    def rounds(self) -> int:
        return self.ratings_by_round.shape[0] - 1

    def final_ratings(self) -> dict[str, float]:
        return {name: float(x) for name, x in zip(self.entities, self.current)}


def expected_score(diff: float, xi: float) -> float:
    """Logistic expectation ``1 / (1 + 10**(-diff / xi))`` for a rating lead of ``diff``."""
    return 1.0 / (1.0 + 10.0 ** (-diff / xi))


def elo_update(rating_i: float, rating_j: float, outcome_s: float, cfg: EloConfig = CHESS) -> tuple[float, float]:
    """Ratings of ``i`` and ``j`` after one game; ``outcome_s`` is ``i``'s score (0, 0.5 or 1)."""
    if outcome_s not in OUTCOMES:
        raise InputError(f"outcome must be one of {OUTCOMES}, got {outcome_s}")
    d = rating_i - rating_j
    mu_i = expected_score(d, cfg.xi)
    mu_j = expected_score(-d, cfg.xi)
    return (
        rating_i + cfg.k_factor * (outcome_s - mu_i),
        rating_j + cfg.k_factor * ((1.0 - outcome_s) - mu_j),
    )


def _outcome(score_a: float, score_b: float) -> float:
    if score_a > score_b:
        return 1.0
    if score_a < score_b:
        return 0.0
    return 0.5


def run_elo(rounds: RoundSeries, cfg: EloConfig = CHESS, entities: Sequence[str] | None = None) -> EloTable:
    """Play every match in round order (file order within a round).

    ``entities`` fixes the rated pool; it defaults to the series registry.
    """
    pool = tuple(entities) if entities is not None else rounds.entities
    idx = {name: i for i, name in enumerate(pool)}
    history = np.full((rounds.max_round + 1, len(pool)), cfg.initial_rating, dtype=float)
    current = history[0].copy()
    rnd = 1
    for rec in rounds.records:
        while rnd < rec.round:
            history[rnd] = current
            rnd += 1
        for name in (rec.entity_a, rec.entity_b):
            if name not in idx:
                raise InputError(f"round {rec.round}: unknown entity {name!r}")
        i, j = idx[rec.entity_a], idx[rec.entity_b]
        current[i], current[j] = elo_update(current[i], current[j], _outcome(rec.score_a, rec.score_b), cfg)
    while rnd <= rounds.max_round:
        history[rnd] = current
        rnd += 1
    history.setflags(write=False)
    return EloTable(pool, history)


def average_ranks(x: np.ndarray) -> np.ndarray:
    """1-based ranks, tied values sharing the mean of their positions."""
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="mergesort")
    sorted_x = x[order]
    ranks = np.empty(x.size)
    start = 0
    while start < x.size:
        stop = start + 1
        while stop < x.size and sorted_x[stop] == sorted_x[start]:
            stop += 1
        ranks[order[start:stop]] = 0.5 * (start + stop - 1) + 1.0
        start = stop
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError(f"spearman needs two vectors of equal length, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise InputError("spearman needs at least two observations")
    rx = average_ranks(x) - (x.size + 1) / 2.0
    ry = average_ranks(y) - (y.size + 1) / 2.0
    sx = np.sqrt(rx @ rx)
    sy = np.sqrt(ry @ ry)
    if sx == 0 or sy == 0:
        raise InputError("spearman is undefined for a constant vector")
    return float(np.clip((rx @ ry) / (sx * sy), -1.0, 1.0))


def round_correlations(table: EloTable) -> list[float]:
    """Spearman correlation of consecutive rating vectors, rounds 2..r."""
    x = table.ratings_by_round
    return [spearman(x[m], x[m - 1]) for m in range(2, table.rounds + 1)]


def rating_correlation(table: EloTable) -> float:
    """Weighted mean of consecutive-round correlations, later rounds weighted more.

    Round ``m`` gets weight ``m - 1``; the weights sum to ``r(r-1)/2``.
    """
    r = table.rounds
    if r < 2:
        raise InputError(f"rating correlation needs at least 2 rounds, got {r}")
    ys = round_correlations(table)
    return 2.0 * sum((m - 1) * y for m, y in zip(range(2, r + 1), ys)) / (r * (r - 1))


def backward_predictability(
    table: EloTable, rounds: RoundSeries, cfg: EloConfig = CHESS, tie_credit: float = 0.5
) -> float:
    """Share of decided matches won by the entity the final ratings favour.

    The home side gets ``cfg.home_advantage`` added before comparing. Draws
    are left out entirely; equal adjusted ratings earn ``tie_credit``.
    """
    if not rounds.records:
        raise InputError("backward predictability needs at least one match")
    idx = {name: i for i, name in enumerate(table.entities)}
    final = table.current
    correct = 0.0
    decided = 0
    for rec in rounds.records:
        if rec.is_draw:
            continue
        for name in (rec.entity_a, rec.entity_b):
            if name not in idx:
                raise InputError(f"round {rec.round}: unknown entity {name!r}")
        ra = final[idx[rec.entity_a]] + (cfg.home_advantage if rec.home == "a" else 0.0)
        rb = final[idx[rec.entity_b]] + (cfg.home_advantage if rec.home == "b" else 0.0)
        decided += 1
        if ra == rb:
            correct += tie_credit
        elif (ra > rb) == (rec.score_a > rec.score_b):
            correct += 1
    if decided == 0:
        raise InputError("every match was drawn; nothing to predict")
    return correct / decided
