"""Degree-threshold scan: decide rainbow existence across minimum-degree
levels and emit a reproducible CSV table.

Rows are fully determined by (n, t, seed, trials): trial seeds derive from
the row parameters, trials may fan out to worker threads, and the merged
table is sorted, so the bytes are identical across runs and thread counts.
The ``millis`` column is 0 unless timing is explicitly requested, since wall
time is the one quantity that cannot be reproduced.
"""

from __future__ import annotations

import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .constructions import sharpness_family
from .core import binom
from .exact import rainbow_matching
from .generators import random_family

CSV_HEADER = "n,t,delta,trials,successes,algo,seed,millis"


@dataclass(frozen=True)
class ScanRow:
    n: int
    t: int
    delta: int
    trials: int
    successes: int
    algo: str
    seed: int
    millis: int

    def csv(self) -> str:
        return (
            f"{self.n},{self.t},{self.delta},{self.trials},"
            f"{self.successes},{self.algo},{self.seed},{self.millis}"
        )


def _decide(n, t, delta, trial, seed) -> bool:
    family = random_family(n, t, delta, seed=f"{seed}/scan/{delta}/{trial}")
    return rainbow_matching(family).status == "found"


def scan_threshold(
    n: int,
    t: int,
    seed: int = 0,
    trials: int = 5,
    threads: int = 1,
    measure_time: bool = False,
) -> list[ScanRow]:
    """One row per degree level 0..C(n-1,2), plus the deterministic
    sharpness row (the tight construction, always without a rainbow)."""
    levels = list(range(binom(n - 1, 2) + 1))
    tasks = [(delta, trial) for delta in levels for trial in range(trials)]

    def run(task):
        delta, trial = task
        start = time.perf_counter() if measure_time else 0.0
        ok = _decide(n, t, delta, trial, seed)
        elapsed = int((time.perf_counter() - start) * 1000) if measure_time else 0
        return delta, trial, ok, elapsed

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(task) for task in tasks]

    per_level = {delta: [0, 0] for delta in levels}
    for delta, _trial, ok, elapsed in results:
        per_level[delta][0] += 1 if ok else 0
        per_level[delta][1] += elapsed
    rows = [
        ScanRow(n, t, delta, trials, per_level[delta][0], "exact", seed, per_level[delta][1])
        for delta in levels
    ]

    if n % 3 == 0 and t == n // 3:
        start = time.perf_counter() if measure_time else 0.0
        outcome = rainbow_matching(sharpness_family(n))
        elapsed = int((time.perf_counter() - start) * 1000) if measure_time else 0
        assert outcome.status == "none"
        sharp_delta = binom(n - 1, 2) - binom(2 * n // 3, 2)
        rows.append(ScanRow(n, t, sharp_delta, 1, 0, "sharpness", seed, elapsed))

    rows.sort(key=lambda r: (r.delta, r.algo, r.seed))
    return rows


def to_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        buf.write(row.csv() + "\n")
    return buf.getvalue()
