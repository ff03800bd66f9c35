import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from rankability import InputError
from rankability.ingest import parse_matches
from rankability.ratings import (
    CHESS,
    FOOTBALL,
    EloConfig,
    EloTable,
    average_ranks,
    backward_predictability,
    elo_update,
    expected_score,
    rating_correlation,
    round_correlations,
    run_elo,
    spearman,
)

ratings = st.floats(-3000, 3000, allow_nan=False)


def test_elo_update_examples():
    assert elo_update(0.0, 0.0, 1.0, CHESS) == (20.0, -20.0)
    assert elo_update(0.0, 0.0, 0.5, CHESS) == (0.0, 0.0)
    assert elo_update(0.0, 0.0, 0.0, FOOTBALL) == (-16.0, 16.0)
    assert expected_score(400, 400) == pytest.approx(10 / 11, abs=1e-15)
    assert expected_score(0, 1000) == 0.5


def test_elo_rejects_bad_outcome_and_config():
    with pytest.raises(InputError):
        elo_update(0, 0, 0.7)
    with pytest.raises(InputError):
        EloConfig(k_factor=0)
    with pytest.raises(InputError):
        EloConfig(xi=-1)


@given(ratings, ratings, st.sampled_from([0.0, 0.5, 1.0]))
def test_elo_is_zero_sum(ri, rj, s):
    ni, nj = elo_update(ri, rj, s, CHESS)
    assert abs((ni + nj) - (ri + rj)) <= 1e-12 * max(1.0, abs(ri), abs(rj))


@given(st.floats(-2000, 2000, allow_nan=False), st.floats(1e-3, 500))
def test_winner_gain_decreases_with_lead(d, step):
    gain = lambda lead: elo_update(lead, 0.0, 1.0, CHESS)[0] - lead
    assert gain(d + step) < gain(d)


@given(st.floats(-5000, 5000, allow_nan=False))
def test_expected_score_range(d):
    mu = expected_score(d, 400)
    assert 0 < mu < 1
    assert mu + expected_score(-d, 400) == pytest.approx(1, abs=1e-15)


def test_average_ranks():
    assert average_ranks([10, 20, 20, 5]).tolist() == [2, 3.5, 3.5, 1]


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=2, max_size=20))
def test_spearman_matches_scipy(pairs):
    x, y = map(np.array, zip(*pairs))
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        with pytest.raises(InputError):
            spearman(x, y)
        return
    assert spearman(x, y) == pytest.approx(stats.spearmanr(x, y).statistic, abs=1e-12)


@settings(max_examples=100)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=15, unique=True))
def test_spearman_invariant_under_monotone_maps(x):
    x = np.array(x, dtype=float) / 10
    y = np.arange(len(x))[::-1].astype(float)
    base = spearman(x, y)
    assert spearman(np.exp(x), y) == pytest.approx(base, abs=1e-12)
    assert spearman(x, 3 * y + 7) == pytest.approx(base, abs=1e-12)


def test_spearman_errors():
    with pytest.raises(InputError):
        spearman([1, 2], [1, 2, 3])
    with pytest.raises(InputError):
        spearman([1], [1])
    with pytest.raises(InputError):
        spearman([1, 1, 1], [1, 2, 3])


def _table(rows):
    return EloTable(("a", "b", "c", "d"), np.array(rows, dtype=float))


def test_rating_correlation_identical_rankings():
    rows = [[0, 0, 0, 0]] + [[4 * m, 3 * m, 2 * m, m] for m in range(1, 6)]
    assert rating_correlation(_table(rows)) == pytest.approx(1.0)
    assert round_correlations(_table(rows)) == pytest.approx([1.0] * 4)


def test_rating_correlation_weights_later_rounds():
    rows = [[0, 0, 0, 0], [4, 3, 2, 1], [1, 2, 3, 4], [1, 2, 3, 4]]
    # y_2 = -1 with weight 1, y_3 = 1 with weight 2, over r(r-1)/2 = 3
    assert rating_correlation(_table(rows)) == pytest.approx(1 / 3)
    with pytest.raises(InputError):
        rating_correlation(_table([[0, 0, 0, 0], [1, 2, 3, 4]]))


def test_rating_correlation_of_shuffled_rounds_below_one():
    rng = np.random.default_rng(7)
    rows = [np.zeros(4)] + [rng.permutation(4).astype(float) for _ in range(12)]
    assert rating_correlation(_table(rows)) < 1.0


SEASON = """round,entity_a,entity_b,score_a,score_b,home
1,A,B,3,1,a
1,C,D,2,0,b
2,A,C,1,0,neutral
2,B,D,5,2,a
3,A,D,7,0,
3,B,C,1,0,
"""


def test_run_elo_history():
    series = parse_matches(SEASON)
    table = run_elo(series, CHESS)
    assert table.ratings_by_round.shape == (4, 4)
    assert table.ratings_by_round[0].tolist() == [0, 0, 0, 0]
    assert table.ratings_by_round[1].tolist() == [20, -20, 20, -20]
    assert table.ratings_by_round.sum(axis=1) == pytest.approx(0, abs=1e-12)
    assert list(table.final_ratings()) == ["A", "B", "C", "D"]
    assert np.argsort(-table.current).tolist() == [0, 1, 2, 3]
    assert not table.ratings_by_round.flags.writeable


def test_run_elo_sparse_rounds_and_unknown_entity():
    series = parse_matches("round,entity_a,entity_b,score_a,score_b\n2,x,y,1,0\n")
    table = run_elo(series)
    assert table.ratings_by_round[1].tolist() == [0, 0]
    assert table.ratings_by_round[2].tolist() == [20, -20]
    with pytest.raises(InputError, match="round 2"):
        run_elo(series, entities=["x"])


def test_backward_predictability():
    series = parse_matches(SEASON)
    table = run_elo(series)
    assert backward_predictability(table, series) == 1.0
    upset = parse_matches(SEASON + "4,D,A,1,0,a\n4,B,C,1,1,\n")
    table = run_elo(upset)
    # the draw is ignored; D's home win over A is the lone miss
    assert backward_predictability(table, upset) == pytest.approx(6 / 7)
    # a huge home bonus flips the miss: D's home win is called, C's road win at D is not
    boosted = EloConfig(home_advantage=1e4)
    assert backward_predictability(table, upset, boosted) == pytest.approx(6 / 7)
    road = parse_matches(SEASON.replace(",a\n", ",b\n"))
    # now B hosts A and D hosts B; both road teams won, so two misses plus C at D
    assert backward_predictability(run_elo(road), road, boosted) == pytest.approx(3 / 6)


def test_backward_predictability_ties_and_draws():
    series = parse_matches("round,entity_a,entity_b,score_a,score_b\n1,x,y,1,0\n")
    flat = EloTable(("x", "y"), np.zeros((2, 2)))
    assert backward_predictability(flat, series) == 0.5
    assert backward_predictability(flat, series, tie_credit=0.0) == 0.0
    drawn = parse_matches("round,entity_a,entity_b,score_a,score_b\n1,x,y,1,1\n")
    with pytest.raises(InputError):
        backward_predictability(flat, drawn)
