"""Command-line interface.

Subcommands: enumerate (count/list layouts of a shape), index (coordinate
to linear index and back), simulate (score one layout under a kernel and
cache), evolve (run the genetic search and write its history CSV), sample
(score random layouts into a CSV), and bench (time a kernel numerically;
hardware-dependent, informational only).

Exit codes: 0 success, 1 usage or parse error, 2 runtime error.  The
BITWEAVE_CACHE environment variable supplies the default cache preset.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time
from pathlib import Path
from typing import Optional

from bitweave.cachesim import HierarchySpec
from bitweave.cachespec import PRESETS, load_cache_spec
from bitweave.evolve import GAConfig, run_evolution, write_history_csv
from bitweave.fitness import FitnessValue, evaluate
from bitweave.layout import (
    Layout,
    Shape,
    count_layouts,
    enumerate_layouts,
    layout_from_text,
    random_layout,
    scatter_bits,
)
from bitweave.patterns import PatternSpec, bind_arrays, generate_trace, parse_pattern, write_trace

ENV_CACHE = "BITWEAVE_CACHE"
DEFAULT_CACHE = "haswell"

__all__ = ["main", "build_parser", "ENV_CACHE"]


def _parse_bits(text: str) -> tuple[int, ...]:
    try:
        bits = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bits must be comma-separated integers, got {text!r}") from None
    return bits


def _parse_coord(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"coordinate must be comma-separated integers, got {text!r}") from None


def _parse_contiguity(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"contiguity must be d:k (dimension:log2 block), got {text!r}")
    try:
        dim, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"contiguity must be d:k with integers, got {text!r}") from None
    if k < 0:
        raise ValueError(f"contiguity exponent must be >= 0, got {k}")
    return dim, 1 << k


def _hierarchy(args: argparse.Namespace) -> HierarchySpec:
    name = args.cache or os.environ.get(ENV_CACHE) or DEFAULT_CACHE
    return load_cache_spec(name)


def _pattern_layout(args: argparse.Namespace) -> tuple[PatternSpec, Layout]:
    pattern = parse_pattern(args.pattern)
    layout = layout_from_text(args.layout, element_size=pattern.element_size)
    return pattern, layout


def cmd_enumerate(args: argparse.Namespace) -> int:
    shape = Shape(_parse_bits(args.bits), args.element_size)
    count = count_layouts(shape)
    print(count)
    if count <= args.cap:
        for layout in enumerate_layouts(shape, cap=count):
            print(layout.to_text())
    return 0


def cmd_index(args: argparse.Namespace) -> int:
    layout = layout_from_text(args.layout, element_size=args.element_size)
    if args.coord is not None:
        print(layout.index(_parse_coord(args.coord)))
    else:
        print(",".join(str(x) for x in layout.coordinate(args.index)))
    return 0


def _print_report(
    layout: Layout, pattern: PatternSpec, cache_name: str, result: FitnessValue
) -> None:
    stats = result.stats
    print(f"layout   {layout.to_text()}")
    print(f"pattern  {pattern}")
    print(f"cache    {cache_name}")
    print(f"loads    {stats.loads}")
    print(f"stores   {stats.stores}")
    for level in stats.levels:
        print(
            f"{level.name:<8} hits={level.hits} misses={level.misses} "
            f"writebacks={level.writebacks} victim_installs={level.victim_installs}"
        )
    print(f"memory   accesses={stats.memory_accesses} writebacks={stats.memory_writebacks}")
    print(f"cycles   {result.cycles}")
    print(f"fitness  {result.value!r}")


def cmd_simulate(args: argparse.Namespace) -> int:
    pattern, layout = _pattern_layout(args)
    hierarchy = _hierarchy(args)
    result = evaluate(layout, pattern, hierarchy)
    _print_report(layout, pattern, args.cache or os.environ.get(ENV_CACHE) or DEFAULT_CACHE, result)
    if args.trace:
        line = max(level.line for level in hierarchy.levels)
        bindings = bind_arrays(pattern, layout, line=line)
        with open(args.trace, "w") as fh:
            count = write_trace(generate_trace(pattern, layout, bindings), fh)
        print(f"trace    {args.trace} ({count} events)")
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    pattern = parse_pattern(args.pattern)
    hierarchy = _hierarchy(args)
    contiguity = _parse_contiguity(args.contiguity) if args.contiguity else None
    config = GAConfig(
        mu=args.mu,
        lambda_=args.lambda_,
        mutation_rate=args.mutation_rate,
        generations=args.generations,
        seed=args.seed,
        contiguity=contiguity,
    )
    history = run_evolution(pattern.primary_shape(), pattern, hierarchy, config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "history.csv"
    with open(path, "w", newline="") as fh:
        write_history_csv(history, fh)
    print(f"best fitness {history.best.fitness.value!r} at generation {history.best_generation}")
    print(f"best layout {history.best.layout.to_text()}")
    print(f"wrote {path}")
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise ValueError(f"count must be >= 1, got {args.count}")
    pattern = parse_pattern(args.pattern)
    hierarchy = _hierarchy(args)
    shape = pattern.primary_shape()
    rng = random.Random(args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "sample.csv"
    header = ["layout", "fitness", "cycles"]
    for level in hierarchy.levels:
        name = level.name.lower()
        header += [f"{name}_hit", f"{name}_miss"]
    header.append("memory_accesses")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for _ in range(args.count):
            layout = random_layout(shape, rng)
            result = evaluate(layout, pattern, hierarchy)
            row = [layout.to_text(), repr(result.value), result.cycles]
            for level in result.stats.levels:
                row += [level.hits, level.misses]
            row.append(result.stats.memory_accesses)
            writer.writerow(row)
    print(f"wrote {path}")
    return 0


def _element_tables(layout: Layout) -> list[list[int]]:
    return [
        [scatter_bits(x, mask) for x in range(1 << b)]
        for b, mask in zip(layout.shape.bits, layout.deposit_masks)
    ]


def cmd_bench(args: argparse.Namespace) -> int:
    """Run a kernel on real data with layout-mapped indexing and time it.

    Results depend on the host machine and interpreter; this exists to
    poke at layouts interactively, not to certify anything.
    """
    pattern, layout = _pattern_layout(args)
    if pattern.kind not in ("MMijk", "MMTijk", "MMikj", "MMTikj", "Jacobi2D"):
        raise ValueError(f"bench does not support {pattern.kind}")
    bindings = bind_arrays(pattern, layout)
    tables = [_element_tables(binding.layout) for binding in bindings]
    rng = random.Random(0)
    sizes = [binding.shape.num_elements for binding in bindings]
    data = [[rng.random() for _ in range(size)] for size in sizes]
    best = None
    accesses = 0
    for _ in range(args.repeat):
        start = time.perf_counter()
        accesses = _bench_kernel(pattern, tables, data)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    print(f"{pattern} over {layout.to_text()}: best {best:.6f}s ({accesses} accesses)")
    return 0


def _bench_kernel(pattern: PatternSpec, tables: list[list[list[int]]], data) -> int:
    kind = pattern.kind
    if kind in ("MMijk", "MMikj"):
        (a0, a1), (b0, b1), (c0, c1) = tables
        a, b, c = data
        n = 1 << pattern.m
        if kind == "MMijk":
            for i in range(n):
                for j in range(n):
                    acc = 0.0
                    for k in range(n):
                        acc += a[a0[k] | a1[i]] * b[b0[j] | b1[k]]
                    c[c0[j] | c1[i]] = acc
            return 2 * n**3 + n**2
        for i in range(n):
            for k in range(n):
                a_ik = a[a0[k] | a1[i]]
                for j in range(n):
                    c[c0[j] | c1[i]] += a_ik * b[b0[j] | b1[k]]
        return 4 * n**3
    if kind in ("MMTijk", "MMTikj"):
        (a0, a1), (b0, b1), (c0, c1) = tables
        a, b, c = data
        n = 1 << pattern.m
        depth = 1 << pattern.n
        if kind == "MMTijk":
            for i in range(n):
                for j in range(n):
                    acc = 0.0
                    for k in range(depth):
                        acc += a[a0[k] | a1[i]] * b[b0[k] | b1[j]]
                    c[c0[j] | c1[i]] = acc
            return 2 * n * n * depth + n * n
        for i in range(n):
            for k in range(depth):
                a_ik = a[a0[k] | a1[i]]
                for j in range(n):
                    c[c0[j] | c1[i]] += a_ik * b[b0[k] | b1[j]]
        return 4 * n * n * depth
    (s0, s1), (d0, d1) = tables
    src, dst = data
    rows = 1 << pattern.m
    cols = 1 << pattern.n
    for i in range(1, rows - 1):
        for j in range(1, cols - 1):
            dst[d0[j] | d1[i]] = 0.25 * (
                src[s0[j] | s1[i - 1]]
                + src[s0[j] | s1[i + 1]]
                + src[s0[j - 1] | s1[i]]
                + src[s0[j + 1] | s1[i]]
            )
    return 5 * (rows - 2) * (cols - 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitweave",
        description="Search for cache-friendly bit-interleaved array layouts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enum_p = sub.add_parser("enumerate", help="count and list the layouts of a shape")
    enum_p.add_argument("--bits", required=True, help="per-dimension bit widths, e.g. 3,3")
    enum_p.add_argument("--element-size", type=int, default=4, help="element size in bytes")
    enum_p.add_argument(
        "--cap", type=int, default=1000, help="list layouts only when the count is at most this"
    )
    enum_p.set_defaults(func=cmd_enumerate)

    index_p = sub.add_parser("index", help="map a coordinate to its linear index or back")
    index_p.add_argument("--layout", "-l", required=True, help='rank sequence, e.g. "[0,1,0,1]"')
    index_p.add_argument("--element-size", type=int, default=4)
    group = index_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--coord", help="comma-separated coordinate, e.g. 3,5")
    group.add_argument("--index", type=int, help="linear element index")
    index_p.set_defaults(func=cmd_index)

    sim_p = sub.add_parser("simulate", help="score one layout under a kernel and cache")
    sim_p.add_argument("--layout", "-l", required=True)
    sim_p.add_argument("--pattern", "-p", required=True, help='kernel, e.g. "MMijk(9;4)"')
    sim_p.add_argument("--cache", "-c", help=f"preset ({', '.join(PRESETS)}) or file path")
    sim_p.add_argument("--trace", help="also write the event trace to this file")
    sim_p.set_defaults(func=cmd_simulate)

    evo_p = sub.add_parser("evolve", help="run the genetic layout search")
    evo_p.add_argument("--pattern", "-p", required=True)
    evo_p.add_argument("--cache", "-c")
    evo_p.add_argument("--mu", type=int, default=20, help="survivors per generation")
    evo_p.add_argument("--lambda", dest="lambda_", type=int, default=20, help="offspring per generation")
    evo_p.add_argument("--mutation-rate", type=float, default=0.25)
    evo_p.add_argument("--generations", type=int, default=20)
    evo_p.add_argument("--seed", type=int, default=0)
    evo_p.add_argument(
        "--contiguity", help="d:k — every offspring keeps 2^k contiguous elements along dimension d"
    )
    evo_p.add_argument("--out", default=".", help="directory for history.csv")
    evo_p.set_defaults(func=cmd_evolve)

    sample_p = sub.add_parser("sample", help="score random layouts into a CSV")
    sample_p.add_argument("--pattern", "-p", required=True)
    sample_p.add_argument("--cache", "-c")
    sample_p.add_argument("--count", type=int, default=100)
    sample_p.add_argument("--seed", type=int, default=0)
    sample_p.add_argument("--out", default=".", help="directory for sample.csv")
    sample_p.set_defaults(func=cmd_sample)

    bench_p = sub.add_parser(
        "bench", help="time a kernel numerically under a layout (informational)"
    )
    bench_p.add_argument("--layout", "-l", required=True)
    bench_p.add_argument("--pattern", "-p", required=True)
    bench_p.add_argument("--repeat", type=int, default=3)
    bench_p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
