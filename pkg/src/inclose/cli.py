"""Command-line entry point: ``inclose enumerate|verify|bench|transpose``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from inclose import datasets
from inclose._engine import BudgetExhausted, IncludeBottom
from inclose.bench import ENGINES, WIDTHS, format_table, run_bench, run_engine, storage_ratios, warmup
from inclose.context import FormalContext, transpose
from inclose.formats import (
    FORMATS,
    ParseError,
    read_context,
    write_concept_tree_json,
    write_concepts_text,
    write_context,
)
from inclose.horizontal import DEFAULT_QUEUE_BUDGET
from inclose.oracle import RandomContextSpec, brute_force_concepts, diff_concept_sets, random_context


def _load(path: str, fmt: str | None) -> FormalContext:
    if path in datasets.REFERENCE_COUNTS and not Path(path).exists():
        return datasets.load_dataset(path)
    return read_context(path, fmt)


def _write(text: str, dest: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text, encoding="ascii")


def cmd_enumerate(args) -> int:
    ctx = _load(args.input, args.format)
    warmup()
    try:
        result = run_engine(ctx, args.engine, args.width, args.empty_skip, args.include_bottom, args.budget_bytes)
    except BudgetExhausted as e:
        print(f"budget-exhausted: {e}", file=sys.stderr)
        return 3
    s = result.stats
    print(f"{s.concept_count} concepts")
    print(f"engine={args.engine} width={args.width} seconds={s.elapsed:.6f} "
          f"extent_bytes={s.extent_storage_bytes} peak_queue_bytes={s.peak_queue_bytes} "
          f"canonicity_failures={s.canonicity_failures}")
    if args.output:
        _write(write_concepts_text(result.concepts, ctx), args.output)
    if args.tree:
        _write(write_concept_tree_json(result.tree, ctx, source=args.input,
                                       include_extents=args.tree_extents), args.tree)
    return 0


def _check(ctx: FormalContext, label: str) -> bool:
    ref = brute_force_concepts(ctx)
    for engine in ENGINES:
        for width in WIDTHS:
            got = run_engine(ctx, engine, width).concepts
            diff = diff_concept_sets(ref, got)
            if diff:
                print(f"FAIL {label}: {engine} w{width} differs from brute force "
                      f"(a = brute force, b = engine)\n{diff.describe(ctx)}")
                return False
    return True


def cmd_verify(args) -> int:
    if args.max_dim > 16:
        print("--max-dim must be at most 16", file=sys.stderr)
        return 2
    warmup()
    if args.input:
        ctx = _load(args.input, args.format)
        ok = _check(ctx, args.input)
        print(f"{'pass' if ok else 'fail'}: {args.input} ({len(brute_force_concepts(ctx))} concepts)")
        return 0 if ok else 1
    densities = (0.1, 0.3, 0.5, 0.7, 0.9)
    for t in range(args.trials):
        spec = RandomContextSpec(args.max_dim, args.max_dim, densities[t % len(densities)], args.seed + t)
        if not _check(random_context(spec), f"trial {t} {spec}"):
            return 1
    print(f"pass: {args.trials} random {args.max_dim}x{args.max_dim} contexts, seed {args.seed}")
    return 0


def cmd_bench(args) -> int:
    inputs = args.input or datasets.available()
    sets = {}
    for path in inputs:
        ctx = _load(path, args.format)
        name = Path(path).name.split(".")[0]
        sets[name] = ctx
        if args.transposed:
            sets[f"{name}^T"] = transpose(ctx)
    engines = ENGINES if args.engine == "both" else (args.engine,)
    widths = tuple(args.widths or WIDTHS)
    jsonl = open(args.json, "w") if args.json else None

    def progress(row):
        print(f"  {row.dataset} {row.engine} w{row.width}: {row.outcome} "
              f"{row.concepts if row.concepts is not None else ''}", file=sys.stderr, flush=True)
        if jsonl:
            jsonl.write(row.as_json() + "\n")
            jsonl.flush()

    rows = run_bench(sets, engines, widths, args.repeats, args.budget_bytes, args.include_bottom, progress)
    if jsonl:
        jsonl.close()
    print(format_table(rows))
    for (name, width), ratio in sorted(storage_ratios(rows).items()):
        print(f"{name} w{width}: vertical/horizontal extent bytes = {ratio:.3f}")
    return 0


def cmd_transpose(args) -> int:
    ctx = _load(args.input, args.format)
    write_context(transpose(ctx), args.output, args.output_format)
    m, n = ctx.shape
    print(f"{m}x{n} -> {n}x{m}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inclose", description="Enumerate formal concepts of a binary context.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, required=True):
        sp.add_argument("--input", "-i", required=required,
                        help="context file (.cxt, .dat, .csv, optionally .gz) or a pinned dataset name")
        sp.add_argument("--format", choices=FORMATS, help="input format (default: from the file name)")

    e = sub.add_parser("enumerate", help="enumerate all concepts")
    common(e)
    e.add_argument("--engine", choices=ENGINES, default="vertical")
    e.add_argument("--width", type=int, choices=WIDTHS, default=64)
    e.add_argument("--empty-skip", action=argparse.BooleanOptionalAction, default=True)
    e.add_argument("--include-bottom", choices=[x.value for x in IncludeBottom], default="auto")
    e.add_argument("--budget-bytes", type=int, default=DEFAULT_QUEUE_BUDGET,
                   help="local queue budget of the horizontal engine")
    e.add_argument("--output", "-o", help="write the concept list here ('-' for stdout)")
    e.add_argument("--tree", help="write the spawn tree as JSON here ('-' for stdout)")
    e.add_argument("--tree-extents", action="store_true", help="list extent members in the JSON tree")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="check both engines against brute force")
    common(v, required=False)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--max-dim", type=int, default=12)
    v.add_argument("--seed", type=int, default=42)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time both engines and compare storage")
    b.add_argument("--input", "-i", action="append",
                   help="dataset file or pinned name; repeatable (default: every pinned dataset)")
    b.add_argument("--format", choices=FORMATS)
    b.add_argument("--engine", choices=(*ENGINES, "both"), default="both")
    b.add_argument("--width", dest="widths", type=int, choices=WIDTHS, action="append")
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--budget-bytes", type=int, default=DEFAULT_QUEUE_BUDGET)
    b.add_argument("--include-bottom", choices=[x.value for x in IncludeBottom], default="auto")
    b.add_argument("--transposed", action="store_true", help="also run every dataset transposed")
    b.add_argument("--json", help="write one JSON object per row to this file")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("transpose", help="write the transposed context")
    common(t)
    t.add_argument("--output", "-o", required=True)
    t.add_argument("--output-format", choices=FORMATS)
    t.set_defaults(func=cmd_transpose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
