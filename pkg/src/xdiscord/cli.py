"""Command-line front end.

Subcommands:

  run        compute delta3_min, delta2_min, delta2 and differences per state
  validate   parse and validate a state file
  audit-phi  check phi-independence of the refined minimum per state

State files are JSON arrays of records with decimal-string fields:

  [{"name":"rho1","a":"0.027180","b":"0.000224","c":"0.027327",
    "d":"0.945269","eps":"0.141651","delta":"0"}]
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .discord import ali_candidate, discord_given_conditional_entropy
from .entropy import LogBase
from .errors import ParseError
from .optimizer import (
    SearchConfig,
    minimize_povm3,
    minimize_projective,
    phi_invariance_audit,
)
from .qstate import XState, xstate_from_entries

RECORD_FIELDS = ("a", "b", "c", "d", "eps", "delta")
CSV_COLUMNS = (
    "name", "delta3_min", "delta2_min", "delta2", "diff3", "diff2",
    "mu1", "mu2", "mu3", "psi", "theta", "phi", "base", "seed",
)


@dataclass(frozen=True)
class StateResult:
    """Per-state discord values, differences, and the 3-POVM witness."""

    name: str
    delta3_min: float
    delta2_min: float
    delta2: float
    diff3: float
    diff2: float
    mu1: float
    mu2: float
    mu3: float
    psi: float
    theta: float
    phi: float


@dataclass(frozen=True)
class DiscordReport:
    results: tuple[StateResult, ...]
    base: LogBase
    seed: int
    n_global_samples: int


def parse_state_file(text: str) -> list[tuple[str, XState]]:
    """Parse a JSON state file into named, validated X states."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: {e.msg}") from e
    if not isinstance(data, list):
        raise ParseError(f"expected a top-level JSON array, got {type(data).__name__}")
    out = []
    seen = set()
    for i, rec in enumerate(data):
        if not isinstance(rec, dict):
            raise ParseError(f"record {i}: expected an object, got {type(rec).__name__}")
        name = rec.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError(f"record {i}: missing or empty 'name'")
        if name in seen:
            raise ParseError(f"record {i}: duplicate name {name!r}")
        seen.add(name)
        vals = []
        for fld in RECORD_FIELDS:
            if fld not in rec:
                raise ParseError(f"record '{name}': missing field '{fld}'")
            try:
                vals.append(float(rec[fld]))
            except (TypeError, ValueError) as e:
                raise ParseError(
                    f"record '{name}': bad number for '{fld}': {rec[fld]!r}"
                ) from e
        try:
            state = xstate_from_entries(*vals)
        except ValueError as e:
            raise ParseError(f"record '{name}': {e}") from e
        out.append((name, state))
    return out


def load_benchmarks() -> list[tuple[str, XState]]:
    """The three bundled benchmark states."""
    text = resources.files("xdiscord").joinpath("data/benchmarks.json").read_text()
    return parse_state_file(text)


def _worker_count() -> int | None:
    raw = os.environ.get("DISCORD_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError as e:
        raise ParseError(f"DISCORD_THREADS must be an integer, got {raw!r}") from e
    if n < 1:
        raise ParseError(f"DISCORD_THREADS must be positive, got {n}")
    return n


def _compute_state(name: str, s: XState, cfg: SearchConfig, base: LogBase) -> StateResult:
    r3 = minimize_povm3(s, cfg, base)
    r2 = minimize_projective(s, cfg, base)
    d3 = discord_given_conditional_entropy(
        s, r3.best_value, (r3.best_weights, r3.best_euler), base
    ).value
    d2m = discord_given_conditional_entropy(s, r2.best_value, r2.best_direction, base).value
    d2 = ali_candidate(s, base).value
    w, e = r3.best_weights, r3.best_euler
    return StateResult(
        name=name,
        delta3_min=d3,
        delta2_min=d2m,
        delta2=d2,
        diff3=d3 - d2,
        diff2=d2m - d2,
        mu1=w.mu1, mu2=w.mu2, mu3=w.mu3,
        psi=e.psi, theta=e.theta, phi=e.phi,
    )


def run_report(states, cfg: SearchConfig, base: LogBase) -> DiscordReport:
    """Compute the three-strategy comparison for every state, in input order."""
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        results = list(
            pool.map(lambda ns: _compute_state(ns[0], ns[1], cfg, base), states)
        )
    return DiscordReport(
        results=tuple(results),
        base=base,
        seed=cfg.seed,
        n_global_samples=cfg.n_global_samples,
    )


def render_table(report: DiscordReport) -> str:
    lines = [
        f"# base={report.base.value} seed={report.seed} samples={report.n_global_samples}",
        f"{'name':<12}{'delta3_min':>12}{'delta2_min':>12}{'delta2':>12}"
        f"{'diff3':>14}{'diff2':>14}",
    ]
    for r in report.results:
        lines.append(
            f"{r.name:<12}{r.delta3_min:>12.6f}{r.delta2_min:>12.6f}{r.delta2:>12.6f}"
            f"{r.diff3:>14.4e}{r.diff2:>14.4e}"
        )
    return "\n".join(lines)


def render_json(report: DiscordReport) -> str:
    payload = {
        "base": report.base.value,
        "seed": report.seed,
        "n_global_samples": report.n_global_samples,
        "results": [
            {
                "name": r.name,
                "delta3_min": r.delta3_min,
                "delta2_min": r.delta2_min,
                "delta2": r.delta2,
                "diff3": r.diff3,
                "diff2": r.diff2,
                "mu1": r.mu1, "mu2": r.mu2, "mu3": r.mu3,
                "psi": r.psi, "theta": r.theta, "phi": r.phi,
            }
            for r in report.results
        ],
    }
    return json.dumps(payload, indent=2)


def parse_report_json(text: str) -> DiscordReport:
    """Inverse of render_json; floats round-trip exactly."""
    payload = json.loads(text)
    results = tuple(StateResult(**rec) for rec in payload["results"])
    return DiscordReport(
        results=results,
        base=LogBase(payload["base"]),
        seed=payload["seed"],
        n_global_samples=payload["n_global_samples"],
    )


def render_csv(report: DiscordReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.results:
        writer.writerow(
            [
                r.name,
                repr(r.delta3_min), repr(r.delta2_min), repr(r.delta2),
                repr(r.diff3), repr(r.diff2),
                repr(r.mu1), repr(r.mu2), repr(r.mu3),
                repr(r.psi), repr(r.theta), repr(r.phi),
                report.base.value, report.seed,
            ]
        )
    return buf.getvalue()


def _gather_states(args) -> list[tuple[str, XState]]:
    states: list[tuple[str, XState]] = []
    if getattr(args, "benchmarks", False):
        states.extend(load_benchmarks())
    if args.states is not None:
        with open(args.states, encoding="utf-8") as fh:
            states.extend(parse_state_file(fh.read()))
    return states


def _add_common(sub, with_benchmarks):
    sub.add_argument("--states", help="path to a JSON state file")
    if with_benchmarks:
        sub.add_argument(
            "--benchmarks", action="store_true", help="include the bundled benchmark states"
        )
    sub.add_argument("--base", choices=["bits", "nats"], default="bits")
    sub.add_argument("--seed", type=int, default=7)
    sub.add_argument("--samples", type=int, default=20000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discord", description="Quantum discord of two-qubit X states."
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="compute discord for each state")
    _add_common(run, with_benchmarks=True)
    run.add_argument("--format", choices=["table", "json", "csv"], default="table")

    val = subs.add_parser("validate", help="validate a state file")
    val.add_argument("--states", required=True, help="path to a JSON state file")

    aud = subs.add_parser("audit-phi", help="check phi-independence per state")
    _add_common(aud, with_benchmarks=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            states = _gather_states(args)
            if not states and not (args.benchmarks or args.states):
                parser.error("run requires --states and/or --benchmarks")
            cfg = SearchConfig(seed=args.seed, n_global_samples=args.samples)
            report = run_report(states, cfg, LogBase(args.base))
            renderer = {"table": render_table, "json": render_json, "csv": render_csv}
            print(renderer[args.format](report), end="" if args.format == "csv" else "\n")
        elif args.command == "validate":
            with open(args.states, encoding="utf-8") as fh:
                states = parse_state_file(fh.read())
            for name, _ in states:
                print(f"{name}: ok")
            print(f"{len(states)} state(s) valid")
        elif args.command == "audit-phi":
            states = _gather_states(args)
            if not states and not (args.benchmarks or args.states):
                parser.error("audit-phi requires --states and/or --benchmarks")
            cfg = SearchConfig(seed=args.seed, n_global_samples=args.samples)
            for name, s in states:
                rep = phi_invariance_audit(s, cfg, LogBase(args.base))
                print(f"{name}: spread={rep.spread:.3e}")
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
