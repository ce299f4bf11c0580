"""Command-line front end.

Subcommands::

    incycle detect   [--engine sparse|dense|auto] [--input FILE] [--timing]
    incycle toposort [--engine sparse|dense|auto] [--input FILE]
    incycle scc      [--engine sparse|dense]      [--input FILE]
    incycle bench    --suite sparse-adv|dense-adv|random [--size S ...]
                     [--engine ...] [--seed N] [--reps N] [--jobs N] [--no-timing]

Exit status: 0 on success, 2 when ``toposort`` meets a cycle, 1 on usage or
parse errors. Streams are read from ``--input`` or standard input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from .dense import DenseEngine
from .graph import ArcStream, ArcStreamError, Outcome, UsageError, parse_arc_stream
from .scc import SccDenseEngine, SccSparseEngine
from .sparse import SparseEngine
from .workloads import gen_dense_adversary, gen_random_dag_stream, gen_sparse_adversary

BENCH_FIELDS = [
    "suite",
    "n",
    "m",
    "engine",
    "arc_traversals",
    "backward_aborts",
    "level_increases",
    "counter_resets",
    "wall_ms",
]

DEFAULT_SIZES = {"sparse-adv": ["2048x16384"], "dense-adv": ["16", "32", "64"], "random": ["1000x5000"]}
DEFAULT_ENGINE = {"sparse-adv": "sparse", "dense-adv": "dense", "random": "auto"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, which means "cycle" here
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def choose_engine(name: str, n: int, m: int) -> str:
    """Resolve ``auto``: dense once density m/n reaches n^(1/3) * lg n."""
    if name != "auto":
        return name
    if n < 2:
        return "sparse"
    return "dense" if m / n >= n ** (1 / 3) * math.log2(n) else "sparse"


def make_engine(name: str, n: int, m: int):
    if name == "sparse":
        return SparseEngine(n, m_hint=max(m, 1))
    if name == "dense":
        return DenseEngine(n)
    raise UsageError(f"unknown engine {name!r}")


def replay(engine, stream: ArcStream) -> Tuple[Optional[int], Optional[List[int]]]:
    """Insert events until the first cycle; return (event index, witness) or (None, None)."""
    for idx, (a, b) in enumerate(stream):
        outcome = engine.insert(a, b)
        if outcome.is_cycle:
            return idx, list(outcome.witness)
    return None, None


def _read_stream(path: Optional[str]) -> ArcStream:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_arc_stream(text)


def cmd_detect(args) -> int:
    stream = _read_stream(args.input)
    name = choose_engine(args.engine, stream.n, len(stream))
    engine = make_engine(name, stream.n, len(stream))
    start = time.perf_counter()
    cycle_at, witness = replay(engine, stream)
    elapsed = time.perf_counter() - start
    report = {
        "engine": name,
        "n": stream.n,
        "m": len(stream) if cycle_at is None else cycle_at + 1,
        "cycle_at": cycle_at,
        "witness": witness,
    }
    report.update(engine.counters.as_dict())
    if args.timing:
        report["wall_ms"] = round(elapsed * 1000, 3)
    print(json.dumps(report))
    return 0


def cmd_toposort(args) -> int:
    stream = _read_stream(args.input)
    name = choose_engine(args.engine, stream.n, len(stream))
    engine = make_engine(name, stream.n, len(stream))
    cycle_at, witness = replay(engine, stream)
    if cycle_at is not None:
        print(f"cycle at event {cycle_at}: {' '.join(map(str, witness))}", file=sys.stderr)
        return 2
    sys.stdout.write("".join(f"{v}\n" for v in engine.topological_order()))
    return 0


def cmd_scc(args) -> int:
    stream = _read_stream(args.input)
    cls = SccSparseEngine if args.engine == "sparse" else SccDenseEngine
    engine = cls(stream.n, m_hint=max(len(stream), 1)) if cls is SccSparseEngine else cls(stream.n)
    merges = 0
    for a, b in stream:
        if engine.insert(a, b).kind is Outcome.MERGED:
            merges += 1
    sys.stdout.write("".join(" ".join(map(str, comp)) + "\n" for comp in engine.components_snapshot()))
    print(f"merges: {merges}", file=sys.stderr)
    return 0


def _parse_size(suite: str, size: str) -> Tuple[int, int]:
    try:
        if suite == "dense-adv":
            return int(size), 0
        n, m = size.lower().split("x")
        return int(n), int(m)
    except ValueError:
        shape = "R" if suite == "dense-adv" else "NxM"
        raise UsageError(f"--size for {suite} must look like {shape}, got {size!r}") from None


def build_workload(suite: str, size: str, seed: int) -> ArcStream:
    a, b = _parse_size(suite, size)
    if suite == "sparse-adv":
        return gen_sparse_adversary(a, b)
    if suite == "dense-adv":
        return gen_dense_adversary(a)
    if suite == "random":
        return gen_random_dag_stream(a, b, seed)
    raise UsageError(f"unknown suite {suite!r}")


def bench_row(job) -> dict:
    """Run one benchmark job ``(suite, size, engine, seed, timing)``; returns a CSV row dict."""
    suite, size, engine_name, seed, timing = job
    stream = build_workload(suite, size, seed)
    name = choose_engine(engine_name, stream.n, len(stream))
    engine = make_engine(name, stream.n, len(stream))
    start = time.perf_counter()
    replay(engine, stream)
    elapsed = time.perf_counter() - start
    c = engine.counters
    return {
        "suite": suite,
        "n": stream.n,
        "m": len(stream),
        "engine": name,
        "arc_traversals": c.arc_traversals,
        "backward_aborts": c.backward_aborts,
        "level_increases": c.level_increases,
        "counter_resets": c.counter_resets,
        "wall_ms": f"{elapsed * 1000:.3f}" if timing else "",
    }


def cmd_bench(args) -> int:
    sizes = args.size or DEFAULT_SIZES[args.suite]
    engine = args.engine or DEFAULT_ENGINE[args.suite]
    engines = ["sparse", "dense"] if engine == "both" else [engine]
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    for size in sizes:
        _parse_size(args.suite, size)
    jobs = [(args.suite, s, e, args.seed, args.timing) for s in sizes for e in engines for _ in range(args.reps)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(bench_row, jobs))  # map keeps job order
    else:
        rows = [bench_row(job) for job in jobs]
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(out.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="incycle", description="Incremental cycle detection and strong components.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="replay a stream until the first cycle and print a JSON report")
    p.add_argument("--engine", choices=["sparse", "dense", "auto"], default="auto")
    p.add_argument("--input", help="arc-stream file (default: stdin)")
    p.add_argument("--timing", action="store_true", help="add wall_ms to the report")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("toposort", help="print a topological order, one vertex per line")
    p.add_argument("--engine", choices=["sparse", "dense", "auto"], default="auto")
    p.add_argument("--input")
    p.set_defaults(func=cmd_toposort)

    p = sub.add_parser("scc", help="print strong components, one per line")
    p.add_argument("--engine", choices=["sparse", "dense"], default="sparse")
    p.add_argument("--input")
    p.set_defaults(func=cmd_scc)

    p = sub.add_parser("bench", help="run a workload suite and print CSV counters")
    p.add_argument("--suite", choices=sorted(DEFAULT_SIZES), required=True)
    p.add_argument("--size", action="append", help="R for dense-adv, NxM otherwise; repeatable")
    p.add_argument("--engine", choices=["sparse", "dense", "auto", "both"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="leave wall_ms empty")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ArcStreamError, UsageError, OSError) as exc:
        print(f"incycle: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
