"""Match-result files, round snapshots and digraph files.

Match files are UTF-8 CSV with header ``round,entity_a,entity_b,score_a,score_b``
and an optional ``home`` column (``a``, ``b`` or ``neutral``). Extra columns
are ignored. Digraph files are adjacency matrices whose header starts with
``label``::

    label,A,B,C
    A,0,1,1
    B,0,0,1
    C,0,0,0
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from rankability.digraph import Digraph
from rankability.errors import InputError
from rankability.measures import spec_r

REQUIRED_COLUMNS = ("round", "entity_a", "entity_b", "score_a", "score_b")
HOME_VALUES = ("a", "b", "neutral")


class Mode(str, Enum):
    WINNING_PERCENTAGE = "wp"
    BINARY = "binary"


@dataclass(frozen=True)
class MatchRecord:
    round: int
    entity_a: str
    entity_b: str
    score_a: float
    score_b: float
    home: str | None = None

    @property
    def is_draw(self) -> bool:
        return self.score_a == self.score_b

    @property
    def winner(self) -> str | None:
        if self.score_a > self.score_b:
            return self.entity_a
        if self.score_b > self.score_a:
            return self.entity_b
        return None


@dataclass(frozen=True)
class RoundSeries:
    records: tuple[MatchRecord, ...]
    entities: tuple[str, ...]

    @property
    def max_round(self) -> int:
        return max((r.round for r in self.records), default=0)

    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.entities)}

    def __len__(self) -> int:
        return len(self.records)


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not valid UTF-8: {exc}") from None
    return data


def _number(value: str, what: str, line: int) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise InputError(f"line {line}: {what} {value!r} is not a number") from None
    if not np.isfinite(x):
        raise InputError(f"line {line}: {what} must be finite")
    return x


def parse_matches(data: bytes | str) -> RoundSeries:
    """Parse a match CSV into a validated, round-ordered series.

    Entity ids follow first appearance in file order. Records are stably
    sorted by round, so matches within a round keep their file order.
    """
    reader = csv.reader(io.StringIO(_decode(data), newline=""))
    header = next(reader, None)
    if header is None:
        raise InputError("empty input: missing header line")
    header = [h.strip() for h in header]
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise InputError(f"line 1: header lacks column(s) {', '.join(missing)}")
    col = {name: header.index(name) for name in REQUIRED_COLUMNS}
    home_col = header.index("home") if "home" in header else None

    records: list[MatchRecord] = []
    entities: dict[str, None] = {}
    for line, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise InputError(f"line {line}: expected {len(header)} fields, got {len(row)}")
        rnd_text = row[col["round"]].strip()
        try:
            rnd = int(rnd_text)
        except ValueError:
            raise InputError(f"line {line}: round {rnd_text!r} is not an integer") from None
        if rnd < 1:
            raise InputError(f"line {line}: round must be >= 1, got {rnd}")
        a = row[col["entity_a"]].strip()
        b = row[col["entity_b"]].strip()
        if not a or not b:
            raise InputError(f"line {line}: empty entity name")
        if a == b:
            raise InputError(f"line {line}: {a!r} cannot play itself")
        sa = _number(row[col["score_a"]].strip(), "score_a", line)
        sb = _number(row[col["score_b"]].strip(), "score_b", line)
        if sa < 0 or sb < 0:
            raise InputError(f"line {line}: negative score")
        home = None
        if home_col is not None:
            home = row[home_col].strip().lower() or None
            if home is not None and home not in HOME_VALUES:
                raise InputError(f"line {line}: home must be one of {HOME_VALUES}, got {home!r}")
        entities.setdefault(a)
        entities.setdefault(b)
        records.append(MatchRecord(rnd, a, b, sa, sb, home))

    records.sort(key=lambda r: r.round)
    return RoundSeries(tuple(records), tuple(entities))


def build_digraph(series: RoundSeries, through_round: int | None = None, mode: Mode | str = Mode.WINNING_PERCENTAGE) -> Digraph:
    """Digraph of all results up to and including ``through_round``.

    In winning-percentage mode ``w[i, j]`` is the share of games between
    ``i`` and ``j`` won by ``i``, a draw counting half. In binary mode
    ``w[i, j] = 1`` if ``i`` beat ``j`` at least once. Every registered
    entity is a vertex, played or not.
    """
    mode = Mode(mode)
    if not series.entities:
        raise InputError("no entities: the series is empty")
    if through_round is None:
        through_round = series.max_round
    if not 1 <= through_round <= series.max_round:
        raise InputError(f"through_round must lie in 1..{series.max_round}, got {through_round}")
    idx = series.index()
    n = len(series.entities)
    wins = np.zeros((n, n))
    games = np.zeros((n, n))
    for rec in series.records:
        if rec.round > through_round:
            break
        i, j = idx[rec.entity_a], idx[rec.entity_b]
        if rec.is_draw:
            if mode is Mode.BINARY:
                raise InputError(f"round {rec.round}: draw {rec.entity_a} vs {rec.entity_b} has no binary edge")
            wins[i, j] += 0.5
            wins[j, i] += 0.5
        elif rec.winner == rec.entity_a:
            wins[i, j] += 1
        else:
            wins[j, i] += 1
        games[i, j] += 1
        games[j, i] += 1
    if mode is Mode.BINARY:
        w = (wins > 0).astype(float)
    else:
        w = np.divide(wins, games, out=np.zeros_like(wins), where=games > 0)
    return Digraph(w, series.entities)


def round_by_round_rankability(series: RoundSeries, mode: Mode | str = Mode.WINNING_PERCENTAGE) -> list[tuple[int, float]]:
    if not series.records:
        raise InputError("the series has no matches")
    return [(m, spec_r(build_digraph(series, m, mode)).spec_r) for m in range(1, series.max_round + 1)]


def is_digraph_csv(data: bytes | str) -> bool:
    first = _decode(data).lstrip().split("\n", 1)[0]
    return first.split(",", 1)[0].strip().lower() == "label"


def parse_digraph(data: bytes | str) -> Digraph:
    """Read an adjacency-matrix CSV (see module docstring)."""
    rows = [r for r in csv.reader(io.StringIO(_decode(data), newline="")) if r and any(c.strip() for c in r)]
    if not rows or rows[0][0].strip().lower() != "label":
        raise InputError("line 1: digraph files start with a 'label' header")
    labels = [c.strip() for c in rows[0][1:]]
    n = len(labels)
    if n == 0:
        raise InputError("line 1: no vertices declared")
    if len(rows) - 1 != n:
        raise InputError(f"expected {n} matrix rows, got {len(rows) - 1}")
    w = np.zeros((n, n))
    for k, row in enumerate(rows[1:]):
        line = k + 2
        if len(row) != n + 1:
            raise InputError(f"line {line}: expected {n + 1} fields, got {len(row)}")
        if row[0].strip() != labels[k]:
            raise InputError(f"line {line}: row label {row[0].strip()!r} does not match column {labels[k]!r}")
        w[k] = [_number(c.strip(), "weight", line) for c in row[1:]]
    return Digraph(w, labels)


def format_digraph(g: Digraph) -> str:
    labels: Sequence[str] = g.labels or [str(i + 1) for i in range(g.n)]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label", *labels])
    for lab, row in zip(labels, g.weights):
        writer.writerow([lab, *(f"{x:g}" for x in row)])
    return out.getvalue()
