import itertools
from importlib import resources

import numpy as np
import pytest

from rankability import Digraph, InputError, structured
from rankability.ingest import (
    Mode,
    build_digraph,
    format_digraph,
    is_digraph_csv,
    parse_digraph,
    parse_matches,
    round_by_round_rankability,
)

HEADER = "round,entity_a,entity_b,score_a,score_b\n"


def test_header_only_file():
    series = parse_matches(HEADER)
    assert series.records == () and series.entities == () and series.max_round == 0
    with pytest.raises(InputError):
        round_by_round_rankability(series)
    with pytest.raises(InputError):
        build_digraph(series)


def test_single_draw_row():
    series = parse_matches(HEADER + "1,Carlsen,Liren,0.5,0.5\n")
    (rec,) = series.records
    assert (rec.round, rec.entity_a, rec.entity_b) == (1, "Carlsen", "Liren")
    assert rec.is_draw and rec.winner is None and rec.home is None


@pytest.mark.parametrize(
    "body, message",
    [
        ("1,a,a,1,0\n", "line 2: 'a' cannot play itself"),
        ("1,a,b,1,0\n1,a,b,-1,0\n", "line 3: negative score"),
        ("x,a,b,1,0\n", "line 2: round"),
        ("0,a,b,1,0\n", "line 2: round must be >= 1"),
        ("1,a,b,one,0\n", "line 2: score_a"),
        ("1,a,b,nan,0\n", "line 2: score_a must be finite"),
        ("1,a,b,1\n", "line 2: expected 5 fields"),
        ("1,,b,1,0\n", "line 2: empty entity"),
    ],
)
def test_malformed_rows(body, message):
    with pytest.raises(InputError, match=message):
        parse_matches(HEADER + body)


def test_header_and_encoding_errors():
    with pytest.raises(InputError, match="empty input"):
        parse_matches("")
    with pytest.raises(InputError, match="score_b"):
        parse_matches("round,entity_a,entity_b,score_a\n")
    with pytest.raises(InputError, match="UTF-8"):
        parse_matches(b"round,entity_a,entity_b,score_a,score_b\n1,\xff,b,1,0\n")
    with pytest.raises(InputError, match="line 2: home"):
        parse_matches("round,entity_a,entity_b,score_a,score_b,home\n1,a,b,1,0,away\n")


def test_crlf_bom_extra_columns_and_ordering():
    text = "﻿event,round,entity_a,entity_b,score_a,score_b,home\r\nx,2,c,a,1,0,A\r\nx,1,a,b,0,1,neutral\r\n\r\nx,1,b,c,1,0,\r\n"
    series = parse_matches(text.encode("utf-8"))
    assert series.entities == ("c", "a", "b")
    assert [(r.round, r.entity_a) for r in series.records] == [(1, "a"), (1, "b"), (2, "c")]
    assert [r.home for r in series.records] == ["neutral", None, "a"]


def test_weights_by_mode():
    series = parse_matches(HEADER + "1,i,j,1,0\n1,k,i,1,1\n2,i,k,0,3\n2,i,j,0,1\n")
    wp = build_digraph(series, 1)
    assert wp.weights.tolist() == [[0, 1, 0.5], [0, 0, 0], [0.5, 0, 0]]
    full = build_digraph(series)
    assert full.weights[0, 1] == full.weights[1, 0] == 0.5
    assert full.weights[0, 2] == pytest.approx(0.25) and full.weights[2, 0] == pytest.approx(0.75)
    assert full.labels == ("i", "j", "k")
    decided = parse_matches(HEADER + "1,i,j,1,0\n2,j,i,2,0\n3,i,k,1,0\n")
    assert build_digraph(decided, mode="binary").weights.tolist() == [[0, 1, 1], [1, 0, 0], [0, 0, 0]]
    with pytest.raises(InputError, match="draw"):
        build_digraph(series, mode=Mode.BINARY)
    with pytest.raises(InputError, match="through_round"):
        build_digraph(series, 3)


def _random_schedule(rng, n, rounds, draws=True):
    names = [f"p{i}" for i in range(n)]
    lines = [HEADER]
    for r in range(1, rounds + 1):
        for _ in range(int(rng.integers(1, n))):
            a, b = rng.choice(n, 2, replace=False)
            sa, sb = (0.5, 0.5) if draws and rng.random() < 0.2 else ((1, 0) if rng.random() < 0.5 else (0, 1))
            lines.append(f"{r},{names[a]},{names[b]},{sa},{sb}\n")
    return "".join(lines)


def test_prefix_property_and_pair_sums(rng):
    for _ in range(30):
        text = _random_schedule(rng, int(rng.integers(2, 8)), int(rng.integers(2, 6)))
        full = parse_matches(text)
        lines = text.splitlines(keepends=True)
        for m in range(1, full.max_round + 1):
            snap = build_digraph(full, m)
            prefix = parse_matches(lines[0] + "".join(l for l in lines[1:] if int(l.split(",")[0]) <= m))
            keep = [full.entities.index(e) for e in prefix.entities]
            assert np.array_equal(snap.weights[np.ix_(keep, keep)], build_digraph(prefix, m).weights)
            idle = [i for i in range(len(full.entities)) if i not in keep]
            assert not snap.weights[idle].any() and not snap.weights[:, idle].any()
            w = snap.weights
            played = (w + w.T) > 0
            assert np.all((w >= 0) & (w <= 1))
            assert np.allclose((w + w.T)[played], 1.0)


def test_total_order_schedule_reaches_one():
    n = 5
    pairs = list(itertools.combinations(range(n), 2))
    text = HEADER + "".join(f"{r},t{i},t{j},1,0\n" for r, (i, j) in enumerate(pairs, start=1))
    series = parse_matches(text)
    curve = round_by_round_rankability(series)
    assert [m for m, _ in curve] == list(range(1, len(pairs) + 1))
    assert curve[-1][1] == pytest.approx(1.0, abs=1e-12)
    assert all(r < 1.0 - 1e-9 for _, r in curve[:-1])


def test_digraph_csv_round_trip():
    g = Digraph(np.array([[0, 1, 0.25], [0, 0, 1], [0.5, 0, 0]]), ("A", "B", "C"))
    text = format_digraph(g)
    assert text.splitlines()[0] == "label,A,B,C"
    assert is_digraph_csv(text) and not is_digraph_csv(HEADER)
    assert parse_digraph(text) == g
    assert parse_digraph(format_digraph(Digraph(np.zeros((3, 3))))).labels == ("1", "2", "3")


@pytest.mark.parametrize(
    "text, message",
    [
        ("round,a\n", "label"),
        ("label\n", "no vertices"),
        ("label,A,B\nA,0,1\n", "expected 2 matrix rows"),
        ("label,A,B\nA,0,1\nC,0,0\n", "line 3: row label"),
        ("label,A,B\nA,0,1\nB,0\n", "line 3: expected 3 fields"),
        ("label,A,B\nA,1,0\nB,0,0\n", "self-loop"),
    ],
)
def test_digraph_csv_errors(text, message):
    with pytest.raises(InputError, match=message):
        parse_digraph(text)


def _shipped(*parts):
    return resources.files("rankability").joinpath("data", *parts).read_bytes()


@pytest.mark.parametrize("name", structured.BENCHMARK_NAMES)
def test_shipped_benchmarks_match_constructors(name):
    assert parse_digraph(_shipped("fig3", f"{name}.csv")) == structured.benchmark(name)


@pytest.mark.parametrize("year", [2001, 2007])
def test_shipped_big_east_matches_constructors(year):
    assert parse_digraph(_shipped("bigeast", f"fig4_{year}.csv")) == structured.big_east(year)
