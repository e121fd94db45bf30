"""Benchmark harness: both engines, both widths, timing and storage accounting."""

from __future__ import annotations

import dataclasses
import json
import statistics
from dataclasses import dataclass

import numpy as np

from inclose._engine import BudgetExhausted, IncludeBottom
from inclose.context import FormalContext
from inclose.horizontal import DEFAULT_QUEUE_BUDGET, HorizontalEngineConfig, enumerate_horizontal
from inclose.vertical import VerticalEngineConfig, enumerate_vertical

ENGINES = ("horizontal", "vertical")
WIDTHS = (32, 64)


def run_engine(ctx: FormalContext, engine: str, width: int = 64, empty_skip: bool = True,
               include_bottom=IncludeBottom.AUTO, budget: int = DEFAULT_QUEUE_BUDGET):
    if engine == "horizontal":
        cfg = HorizontalEngineConfig(width=width, empty_skip=empty_skip,
                                     local_queue_memory_budget=budget, include_bottom=include_bottom)
        return enumerate_horizontal(ctx, cfg)
    if engine == "vertical":
        cfg = VerticalEngineConfig(width=width, empty_skip=empty_skip, include_bottom=include_bottom)
        return enumerate_vertical(ctx, cfg)
    raise ValueError(f"unknown engine {engine!r}")


_warm = False


def warmup() -> None:
    """Compile the kernels for every width so the first timed run measures enumeration only."""
    global _warm
    if _warm:
        return
    tiny = FormalContext(np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]], dtype=bool))
    for engine in ENGINES:
        for width in WIDTHS:
            run_engine(tiny, engine, width)
    _warm = True


@dataclass
class BenchRow:
    dataset: str
    objects: int
    attributes: int
    engine: str
    width: int
    outcome: str                  # "ok" or "budget-exhausted"
    concepts: int | None = None
    median_s: float | None = None
    min_s: float | None = None
    extent_storage_bytes: int | None = None
    peak_queue_bytes: int | None = None
    canonicity_failures: int | None = None
    detail: str = ""

    def as_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=False)


def bench_one(name: str, ctx: FormalContext, engine: str, width: int, repeats: int = 3,
              budget: int = DEFAULT_QUEUE_BUDGET, include_bottom=IncludeBottom.AUTO) -> BenchRow:
    m, n = ctx.shape
    row = BenchRow(name, m, n, engine, width, "ok")
    times = []
    for _ in range(max(1, repeats)):
        try:
            result = run_engine(ctx, engine, width, include_bottom=include_bottom, budget=budget)
        except BudgetExhausted as e:
            row.outcome = "budget-exhausted"
            row.detail = str(e)
            row.peak_queue_bytes = e.needed_bytes
            return row
        times.append(result.stats.elapsed)
    s = result.stats
    row.concepts = s.concept_count
    row.median_s = statistics.median(times)
    row.min_s = min(times)
    row.extent_storage_bytes = s.extent_storage_bytes
    row.peak_queue_bytes = s.peak_queue_bytes
    row.canonicity_failures = s.canonicity_failures
    return row


def run_bench(datasets: dict[str, FormalContext], engines=ENGINES, widths=WIDTHS, repeats: int = 3,
              budget: int = DEFAULT_QUEUE_BUDGET, include_bottom=IncludeBottom.AUTO,
              progress=None) -> list[BenchRow]:
    warmup()
    rows = []
    for name, ctx in datasets.items():
        for engine in engines:
            for width in widths:
                row = bench_one(name, ctx, engine, width, repeats, budget, include_bottom)
                rows.append(row)
                if progress:
                    progress(row)
    return rows


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'dataset':<20} {'shape':>12} {'engine':<10} {'w':>2} {'concepts':>9} {'median s':>9} {'extent bytes':>13} {'queue bytes':>12}  outcome"
    out = [head, "-" * len(head)]
    for r in rows:
        shape = f"{r.objects}x{r.attributes}"
        conc = "" if r.concepts is None else str(r.concepts)
        med = "" if r.median_s is None else f"{r.median_s:.3f}"
        ext = "" if r.extent_storage_bytes is None else str(r.extent_storage_bytes)
        q = "" if r.peak_queue_bytes is None else str(r.peak_queue_bytes)
        out.append(f"{r.dataset:<20} {shape:>12} {r.engine:<10} {r.width:>2} {conc:>9} {med:>9} {ext:>13} {q:>12}  {r.outcome}")
    return "\n".join(out)


def storage_ratios(rows: list[BenchRow]) -> dict[tuple[str, int], float]:
    """vertical / horizontal extent bytes per (dataset, width) where both engines finished."""
    by = {(r.dataset, r.engine, r.width): r for r in rows if r.outcome == "ok"}
    out = {}
    for (name, engine, width), r in by.items():
        h = by.get((name, "horizontal", width))
        if engine == "vertical" and h and h.extent_storage_bytes:
            out[name, width] = r.extent_storage_bytes / h.extent_storage_bytes
    return out
