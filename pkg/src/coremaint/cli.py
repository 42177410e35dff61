"""Command-line harness: decomposition, update benchmarks, and validation.

Subcommands:

  decompose <file>            core-number histogram as "k,count" CSV rows
  bench --mode insert|remove|batch --sample N --seed S --reps R
        [--out out.csv] <file>
                              per-operation and accumulated statistics for
                              maintaining N sampled edges
  validate --n N --m M --steps K --seed S
                              differential fuzz run; exit 1 on violation

CSV goes to --out (default stdout); the human-readable summary goes to
stderr so the data stream stays machine-readable.  Exit codes: 0 success,
1 validation failure, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
from typing import IO, Optional

from .decompose import decompose
from .graph import Graph, ParseError, load_edge_list, sample_edges
from .maintain import OpStats, batch_edge_insert, edge_insert, edge_remove
from .oracle import fuzz

_BENCH_COLUMNS = [
    "row", "rep", "op", "v_star", "v_plus", "e_plus", "e_star",
    "relabels", "rounds", "skipped", "elapsed_ns", "ci95_ns",
]


def _load(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh)


def cmd_decompose(args: argparse.Namespace) -> int:
    try:
        g = _load(args.graph)
    except (OSError, ParseError) as exc:
        print(f"error: {args.graph}: {exc}", file=sys.stderr)
        return 2
    cs = decompose(g)
    hist: dict[int, int] = {}
    for c in cs.core:
        hist[c] = hist.get(c, 0) + 1
    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        print(f"error: {args.out}: {exc}", file=sys.stderr)
        return 2
    try:
        writer = csv.writer(out)
        for k in sorted(hist):
            writer.writerow([k, hist[k]])
    finally:
        if close:
            out.close()
    avg = 2 * g.m / g.n if g.n else 0.0
    print(
        f"n={g.n} m={g.m} avg_deg={avg:.2f} max_core={cs.max_core()}",
        file=sys.stderr,
    )
    return 0


def _open_out(path: Optional[str]) -> tuple[IO[str], bool]:
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _stats_row(kind: str, rep: object, op: object, s: OpStats) -> list:
    return [
        kind, rep, op, s.v_star_size, s.v_plus_size, s.e_plus, s.e_star,
        s.relabels, s.rounds, s.skipped, s.elapsed_ns, "",
    ]


def _accumulate(per_op: list[OpStats]) -> OpStats:
    total = OpStats()
    for s in per_op:
        total.v_star_size += s.v_star_size
        total.v_plus_size += s.v_plus_size
        total.e_plus += s.e_plus
        total.e_star += s.e_star
        total.relabels += s.relabels
        total.rounds += s.rounds
        total.skipped += s.skipped
        total.dropped += s.dropped
        total.elapsed_ns += s.elapsed_ns
    return total


def _run_rep(g: Graph, mode: str, sample: list[tuple[int, int]]):
    if mode in ("insert", "batch"):
        work = g.copy()
        for u, v in sample:
            work.remove_edge(u, v)
        cs = decompose(work)
        if mode == "insert":
            per_op = [edge_insert(work, cs, u, v) for u, v in sample]
        else:
            per_op = [batch_edge_insert(work, cs, sample)]
    else:
        work = g.copy()
        cs = decompose(work)
        per_op = [edge_remove(work, cs, u, v) for u, v in sample]
    return per_op, work, cs


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        g = _load(args.graph)
    except (OSError, ParseError) as exc:
        print(f"error: {args.graph}: {exc}", file=sys.stderr)
        return 2
    if args.sample > g.m:
        print(
            f"error: --sample {args.sample} exceeds edge count m={g.m}",
            file=sys.stderr,
        )
        return 2
    sample = sample_edges(g, args.sample, args.seed)

    rep_totals: list[OpStats] = []
    work = cs = None
    try:
        out, close = _open_out(args.out)
    except OSError as exc:
        print(f"error: {args.out}: {exc}", file=sys.stderr)
        return 2
    try:
        writer = csv.writer(out)
        writer.writerow(_BENCH_COLUMNS)
        for rep in range(args.reps):
            per_op, work, cs = _run_rep(g, args.mode, sample)
            for i, s in enumerate(per_op):
                writer.writerow(_stats_row("op", rep, i, s))
            total = _accumulate(per_op)
            rep_totals.append(total)
            writer.writerow(_stats_row("rep_total", rep, "", total))
        grand = _accumulate(rep_totals)
        times = [t.elapsed_ns for t in rep_totals]
        mean_ns = statistics.fmean(times)
        if len(times) >= 2:
            ci95 = 1.96 * statistics.stdev(times) / math.sqrt(len(times))
        else:
            ci95 = 0.0
        row = _stats_row("accumulated", "", "", grand)
        row[-2] = f"{mean_ns:.0f}"
        row[-1] = f"{ci95:.0f}"
        writer.writerow(row)
    finally:
        if close:
            out.close()

    assert work is not None and cs is not None
    if work.n <= 10_000 and cs.core != decompose(work).core:
        # maintained cores of the last repetition must match a fresh
        # decomposition of the end-state graph
        print("error: end-state cores disagree with decomposition", file=sys.stderr)
        return 1

    ops = args.sample if args.mode != "batch" else 1
    print(
        f"mode={args.mode} n={g.n} m={g.m} sample={args.sample} reps={args.reps} "
        f"ops/rep={ops} mean_time_ms={mean_ns / 1e6:.3f} "
        f"ci95_ms={ci95 / 1e6:.3f} v_star={grand.v_star_size} "
        f"v_plus={grand.v_plus_size} relabels={grand.relabels} "
        f"rounds={grand.rounds}",
        file=sys.stderr,
    )
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    fault_hook = None
    if args.inject_bug:
        def fault_hook(g, cs, i):  # test hook: corrupt one counter per step
            cs.deg_out[i % g.n] += 1

    try:
        report = fuzz(
            n=args.n, m=args.m, steps=args.steps, seed=args.seed,
            fault_hook=fault_hook,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coremaint",
        description="k-core maintenance: decomposition, benchmarks, validation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="core-number histogram of a graph file")
    p.add_argument("graph", help="edge-list file ('u v' per line, # comments)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bench", help="benchmark maintenance over sampled edges")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--mode", choices=["insert", "remove", "batch"], required=True)
    p.add_argument("--sample", type=int, required=True,
                   help="number of existing edges to sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="differential fuzz validation")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--m", type=int, default=300)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-bug", action="store_true",
                   help=argparse.SUPPRESS)  # detector-sanity test hook
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "reps", 1) < 1:
        parser.error("--reps must be at least 1")
    if getattr(args, "sample", 0) < 0:
        parser.error("--sample must be non-negative")
    return args.func(args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
