"""``rankability`` command line tool.

Every command prints one report envelope (JSON by default, ``--format tsv``
for spreadsheets). Exit codes: 0 success, 2 input error, 3 size/limit error,
4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from rankability import __version__
from rankability.digraph import Digraph, is_acyclic, laplacian, scc, simple_cycles
from rankability.errors import ConvergenceError, InputError, LimitError
from rankability.ingest import (
    Mode,
    RoundSeries,
    build_digraph,
    is_digraph_csv,
    parse_digraph,
    parse_matches,
    round_by_round_rankability,
)
from rankability.measures import DEFAULT_MAX_N, edge_r_exact, spec_r
from rankability.ratings import EloConfig, backward_predictability, rating_correlation, run_elo
from rankability.spectral import Spectrum, eigenvalues, mult_tolerance

DATA_ENV = "RANKABILITY_DATA_DIR"
EXIT_INPUT, EXIT_LIMIT, EXIT_NUMERIC = 2, 3, 4
MODE_CHOICES = {"wp": Mode.WINNING_PERCENTAGE, "binary": Mode.BINARY}


@dataclass
class ReportEnvelope:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    tool_version: str = __version__

    def payload(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return _dump(self.payload(), 0) + "\n"

    def to_tsv(self) -> str:
        rows = []
        for key, value in _flatten(self.payload()):
            rows.append(f"{key}\t{_scalar(value)}")
        return "\n".join(rows) + "\n"


def format_float(x: float) -> str:
    """Fixed six decimals, correctly rounded from the binary value; ``-0`` prints as ``0``."""
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _normalize(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_normalize(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Spectrum):
        return [_normalize(v) for v in value.values]
    return value


def _scalar(value: Any) -> str:
    value = _normalize(value)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return value
    return _dump(value, 0)


def _dump(value: Any, indent: int) -> str:
    value = _normalize(value)
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(value[k], indent + 1)}" for k in sorted(value, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [_dump(v, indent + 1) for v in value]
        if all(not isinstance(_normalize(v), (dict, list, tuple)) for v in value):
            return "[" + ", ".join(items) + "]"
        return "[\n" + ",\n".join(pad + it for it in items) + "\n" + end + "]"
    if isinstance(value, float):
        return format_float(value)
    return json.dumps(value)


def _flatten(value: Any, prefix: str = ""):
    value = _normalize(value)
    if isinstance(value, dict):
        for k in sorted(value, key=str):
            yield from _flatten(value[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, (list, tuple)) and any(isinstance(_normalize(v), (dict, list, tuple)) for v in value):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, value


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("rankability") / "data"))


def resolve_path(path: str) -> Path:
    """Use ``path`` as given, falling back to the shipped data directory."""
    p = Path(path)
    if p.is_file():
        return p
    if not p.is_absolute():
        candidates = [data_dir() / p]
        # "examples/fig3/cycle.csv" and "data/fig3/cycle.csv" name the same shipped file
        if len(p.parts) > 1 and p.parts[0] in ("examples", "data"):
            candidates.append(data_dir().joinpath(*p.parts[1:]))
        for shipped in candidates:
            if shipped.is_file():
                return shipped
    raise InputError(f"no such file: {path}")


def _read(path: str) -> bytes:
    p = resolve_path(path)
    try:
        return p.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str, mode: Mode, through_round: int | None = None) -> Digraph:
    raw = _read(path)
    if is_digraph_csv(raw):
        if through_round is not None:
            raise InputError("--through-round applies to match files, not digraph files")
        return parse_digraph(raw)
    return build_digraph(parse_matches(raw), through_round, mode)


def load_series(path: str) -> RoundSeries:
    raw = _read(path)
    if is_digraph_csv(raw):
        raise InputError(f"{path} is a digraph file; this command needs match results")
    series = parse_matches(raw)
    if not series.records:
        raise InputError(f"{path} contains no matches")
    return series


def _labels(g: Digraph) -> list[str]:
    return [g.vertex_name(i) for i in range(g.n)]


def cmd_spec_r(path: str, mode: Mode = Mode.WINNING_PERCENTAGE, through_round: int | None = None) -> ReportEnvelope:
    g = load_graph(path, mode, through_round)
    rep = spec_r(g)
    results = {
        "spec_r": rep.spec_r,
        "hd_degree": rep.hd_degree,
        "hd_laplacian": rep.hd_laplacian,
        "n": rep.n,
        "labels": _labels(g),
        "degree_spectrum": rep.degree_spectrum,
        "laplacian_spectrum": rep.laplacian_spectrum,
    }
    inputs = {"path": path, "mode": mode.value, "through_round": through_round}
    return ReportEnvelope("spec", inputs, results)


def cmd_edge_r(path: str, max_n: int = DEFAULT_MAX_N) -> ReportEnvelope:
    g = load_graph(path, Mode.BINARY)
    res = edge_r_exact(g, max_n=max_n)
    labels = _labels(g)
    results = {
        "k": res.k,
        "p": res.p,
        "edge_r": res.edge_r,
        "k_max": res.k_max,
        "p_max": res.p_max,
        "optimal_orders": [[labels[v] for v in order] for order in res.optimal_orders],
    }
    return ReportEnvelope("edge", {"path": path, "max_n": max_n}, results)


def cmd_rounds(path: str, mode: Mode = Mode.WINNING_PERCENTAGE) -> ReportEnvelope:
    series = load_series(path)
    points = round_by_round_rankability(series, mode)
    results = {"series": [{"round": m, "spec_r": r} for m, r in points]}
    return ReportEnvelope("rounds", {"path": path, "mode": mode.value}, results)


def cmd_elo(
    path: str, k: float, xi: float, home_advantage: float = 0.0, mode: Mode = Mode.WINNING_PERCENTAGE
) -> ReportEnvelope:
    series = load_series(path)
    cfg = EloConfig(k_factor=k, xi=xi, home_advantage=home_advantage)
    table = run_elo(series, cfg)
    results = {
        "final_ratings": table.final_ratings(),
        "rounds": table.rounds,
        "rating_correlation": rating_correlation(table),
        "backward_predictability": backward_predictability(table, series, cfg),
        "spec_r": spec_r(build_digraph(series, None, mode)).spec_r,
    }
    inputs = {"path": path, "k": k, "xi": xi, "home_advantage": home_advantage, "mode": mode.value}
    return ReportEnvelope("elo", inputs, results)


def cmd_graph(
    path: str, cycles: bool = False, show_scc: bool = False, mode: Mode = Mode.WINNING_PERCENTAGE, cycle_cap: int = 100
) -> ReportEnvelope:
    g = load_graph(path, mode)
    dec = scc(g)
    lap = laplacian(g)
    labels = _labels(g)
    report = simple_cycles(g, cap=cycle_cap if cycles else 1)
    results: dict[str, Any] = {
        "n": g.n,
        "acyclic": is_acyclic(g),
        "scc_count": len(dec.components),
        "isolated_components": [[labels[v] for v in c] for c, iso in zip(dec.components, dec.isolated_flags) if iso],
        "zero_eigenvalue_multiplicity": eigenvalues(lap).zero_multiplicity(mult_tolerance(lap)),
        "cycle_count": report.count,
        "cycles_truncated": report.truncated,
    }
    if show_scc:
        results["components"] = [
            {"vertices": [labels[v] for v in c], "isolated": iso} for c, iso in zip(dec.components, dec.isolated_flags)
        ]
        results["frobenius_permutation"] = [labels[v] for v in dec.permutation]
    if cycles:
        results["cycles"] = [[labels[v] for v in cyc] for cyc in report.cycles]
        results["cycles_listed"] = len(report.cycles)
    return ReportEnvelope("graph", {"path": path, "cycles": cycles, "scc": show_scc, "mode": mode.value}, results)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS, help="output format (default json)")

    parser = argparse.ArgumentParser(prog="rankability", description=__doc__.splitlines()[0], parents=[fmt])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def mode_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=tuple(MODE_CHOICES), default="wp", help="edge weights for match files")

    p = sub.add_parser("spec", parents=[fmt], help="spectral-degree rankability of a digraph or match file")
    p.add_argument("file")
    mode_arg(p)
    p.add_argument("--through-round", type=int, default=None)

    p = sub.add_parser("edge", parents=[fmt], help="exact edge-change rankability (small binary graphs)")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("rounds", parents=[fmt], help="rankability after each round")
    p.add_argument("file")
    mode_arg(p)

    p = sub.add_parser("elo", parents=[fmt], help="Elo ratings, rating correlation and backward predictability")
    p.add_argument("file")
    p.add_argument("--k", type=float, required=True, help="Elo k-factor")
    p.add_argument("--xi", type=float, required=True, help="Elo logistic scale")
    p.add_argument("--home-advantage", type=float, default=0.0)
    mode_arg(p)

    p = sub.add_parser("graph", parents=[fmt], help="components, acyclicity and cycle counts")
    p.add_argument("file")
    p.add_argument("--cycles", action="store_true", help="list simple cycles")
    p.add_argument("--scc", action="store_true", help="list strongly connected components")
    p.add_argument("--cycle-cap", type=int, default=100)
    mode_arg(p)
    return parser


def _dispatch(args: argparse.Namespace) -> ReportEnvelope:
    mode = MODE_CHOICES[getattr(args, "mode", "wp")]
    if args.command == "spec":
        return cmd_spec_r(args.file, mode, args.through_round)
    if args.command == "edge":
        return cmd_edge_r(args.file, args.max_n)
    if args.command == "rounds":
        return cmd_rounds(args.file, mode)
    if args.command == "elo":
        return cmd_elo(args.file, args.k, args.xi, args.home_advantage, mode)
    return cmd_graph(args.file, args.cycles, args.scc, mode, args.cycle_cap)


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers: list[tuple[type[Exception], int]] = [
        (LimitError, EXIT_LIMIT),
        (ConvergenceError, EXIT_NUMERIC),
        (InputError, EXIT_INPUT),
    ]
    try:
        envelope = _dispatch(args)
    except tuple(cls for cls, _ in handlers) as exc:
        code = next(c for cls, c in handlers if isinstance(exc, cls))
        print(f"rankability {args.command}: error: {exc}", file=stderr)
        return code
    render: Callable[[], str] = envelope.to_tsv if getattr(args, "format", "json") == "tsv" else envelope.to_json
    stdout.write(render())
    return 0


if __name__ == "__main__":
    sys.exit(main())
