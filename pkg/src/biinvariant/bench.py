"""Timing harness for the cubic norm table."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .freenorm import norm_table
from .words import Alphabet, random_word


@dataclass
class BenchRow:
    n: int
    norm: int
    median_seconds: float
    times: list[float]
    table_cells: int
    table_bytes: int
    ratio: float | None = None  # median time over the previous row's

    def as_dict(self) -> dict:
        return asdict(self)


def warm_up() -> None:
    # triggers numba compilation (or cache load) outside the timed region
    norm_table(random_word(8, "ab", 0))


def time_norm(n: int, seed: int = 0, repeats: int = 3, alphabet: Alphabet | str = "ab") -> BenchRow:
    w = random_word(n, alphabet, seed, reduced=True)
    times = []
    table = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        table = norm_table(w)
        times.append(time.perf_counter() - t0)
    return BenchRow(
        n=n,
        norm=table.norm,
        median_seconds=statistics.median(times),
        times=times,
        table_cells=table.ncells,
        table_bytes=table.nbytes,
    )


def run_bench(sizes: Sequence[int], seed: int = 0, repeats: int = 3) -> list[BenchRow]:
    warm_up()
    rows = []
    for n in sizes:
        row = time_norm(n, seed=seed, repeats=repeats)
        if rows and rows[-1].median_seconds > 0:
            row.ratio = row.median_seconds / rows[-1].median_seconds
        rows.append(row)
    return rows


def fitted_exponent(rows: Sequence[BenchRow]) -> float:
    """Least-squares slope of log time against log n."""
    x = np.log([r.n for r in rows])
    y = np.log([r.median_seconds for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def format_table(rows: Sequence[BenchRow]) -> str:
    lines = [f"{'n':>7} {'norm':>6} {'median s':>10} {'ratio':>7} {'cells':>10} {'bytes':>10}"]
    for r in rows:
        ratio = "-" if r.ratio is None else f"{r.ratio:.2f}"
        lines.append(
            f"{r.n:>7} {r.norm:>6} {r.median_seconds:>10.4f} {ratio:>7} {r.table_cells:>10} {r.table_bytes:>10}"
        )
    return "\n".join(lines)
