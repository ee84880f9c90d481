"""Benchmark sweeps: OI against SI on identical seeded random games."""

from __future__ import annotations

import csv
import io
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, field
from statistics import mean
from typing import Iterable, Optional, Sequence

from .generator import OutDegree, random_game
from .oi import OiConfig, solve_oi
from .si import SiConfig, solve_si

CSV_HEADER = (
    "size", "game_id", "seed", "outdeg", "algo",
    "lp_calls", "strategy_updates", "nonlocal_events", "wall_ms",
)
FAILURE_HEADER = ("size", "game_id", "seed", "outdeg", "algo", "status")
SOLVERS = {
    "oi": lambda g, seed: solve_oi(g, OiConfig(seed=seed)),
    "si": lambda g, seed: solve_si(g, SiConfig(seed=seed)),
}


class ValuationMismatch(RuntimeError):
    def __init__(self, size: int, game_id: int, seed: int):
        super().__init__(f"algorithms disagree on game {game_id} of size {size} (seed {seed})")
        self.size, self.game_id, self.seed = size, game_id, seed


@dataclass(frozen=True, order=True)
class BenchRecord:
    size: int
    game_id: int
    seed: int
    outdeg: str
    algo: str
    lp_calls: int
    strategy_updates: int
    nonlocal_events: int
    wall_ms: float

    def row(self) -> list:
        return [*astuple(self)[:-1], f"{self.wall_ms:.1f}"]


@dataclass(frozen=True, order=True)
class BenchFailure:
    size: int
    game_id: int
    seed: int
    outdeg: str
    algo: str
    status: str


@dataclass
class BenchRun:
    records: list[BenchRecord] = field(default_factory=list)
    failures: list[BenchFailure] = field(default_factory=list)

    def by_algo(self, algo: str, size: Optional[int] = None) -> list[BenchRecord]:
        return [r for r in self.records if r.algo == algo and (size is None or r.size == size)]

    def sizes(self) -> list[int]:
        return sorted({r.size for r in self.records})

    def algos(self) -> list[str]:
        return sorted({r.algo for r in self.records})

    def mean(self, algo: str, metric: str, size: Optional[int] = None) -> float:
        rows = self.by_algo(algo, size)
        return mean(getattr(r, metric) for r in rows) if rows else float("nan")

    def nonlocal_fraction(self, algo: str = "oi") -> float:
        """Fraction of games on which ``algo`` ever needed a non-local step."""
        rows = self.by_algo(algo)
        return sum(r.nonlocal_events > 0 for r in rows) / len(rows) if rows else 0.0

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(r.row() for r in sorted(self.records))
        return buf.getvalue()

    def failures_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FAILURE_HEADER)
        w.writerows(astuple(f) for f in sorted(self.failures))
        return buf.getvalue()

    def means_table(self) -> str:
        """Whitespace-separated columns, one row per size, ``#`` header (gnuplot friendly)."""
        algos = self.algos()
        cols = ["size", "games"]
        cols += [f"{a}_lp_calls" for a in algos] + [f"{a}_updates" for a in algos]
        lines = ["# " + " ".join(cols)]
        for size in self.sizes():
            games = len({r.game_id for r in self.records if r.size == size})
            vals = [self.mean(a, "lp_calls", size) for a in algos]
            vals += [self.mean(a, "strategy_updates", size) for a in algos]
            lines.append(" ".join([str(size), str(games)] + [f"{x:.3f}" for x in vals]))
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        lines = []
        for a in self.algos():
            rows = self.by_algo(a)
            lines.append(
                f"{a}: {len(rows)} games, mean lp_calls {self.mean(a, 'lp_calls'):.3f}, "
                f"mean updates {self.mean(a, 'strategy_updates'):.3f}"
            )
        if "oi" in self.algos():
            rows = self.by_algo("oi")
            hit = sum(r.nonlocal_events > 0 for r in rows)
            lines.append(
                f"oi non-local: {hit}/{len(rows)} games ({100 * self.nonlocal_fraction():.1f}%)"
            )
        if self.failures:
            lines.append(f"failures: {len(self.failures)}")
        return "\n".join(lines) + "\n"


def parse_sizes(text: str) -> list[int]:
    """``a:b:step`` (inclusive), ``a:b`` (step 1) or a single size."""
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 1:
        return parts
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0 or parts[0] > parts[1]:
        raise ValueError(f"bad size range {text!r}")
    a, b, step = parts
    return list(range(a, b + 1, step))


def game_seed(seed: int, size: int, game_id: int) -> int:
    """Per-game seed; independent of scheduling so parallel runs are reproducible."""
    return random.Random(f"{seed}/{size}/{game_id}").getrandbits(63)


def worker_count() -> int:
    cap = os.environ.get("OIPLEX_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


@dataclass(frozen=True)
class _Job:
    size: int
    game_id: int
    seed: int
    outdeg: str
    algos: tuple
    weights: tuple
    discount: str


def _run_job(job: _Job):
    g = random_game(job.size, job.outdeg, job.weights, job.discount, job.seed)
    records, failures, values = [], [], {}
    for algo in job.algos:
        start = time.perf_counter()
        try:
            val, _, stats = SOLVERS[algo](g, job.seed)
        except Exception as exc:  # recorded, the sweep goes on
            failures.append(
                BenchFailure(job.size, job.game_id, job.seed, job.outdeg, algo, type(exc).__name__)
            )
            continue
        ms = (time.perf_counter() - start) * 1000
        values[algo] = tuple(val)
        records.append(
            BenchRecord(
                job.size, job.game_id, job.seed, job.outdeg, algo,
                stats.lp_calls, stats.strategy_updates, stats.nonlocal_events, ms,
            )
        )
    agree = len(set(values.values())) <= 1
    return records, failures, agree


def run_bench(
    sizes: Iterable[int],
    cluster: int,
    outdeg="2",
    algos: Sequence[str] = ("oi", "si"),
    seed: int = 0,
    weights: tuple = (-250, 250),
    discount: str = "9/10",
    workers: Optional[int] = None,
) -> BenchRun:
    """Solve ``cluster`` games per size with every algorithm; raises ``ValuationMismatch``."""
    unknown = set(algos) - set(SOLVERS)
    if unknown:
        raise ValueError(f"unknown algorithms {sorted(unknown)}")
    degree = str(outdeg if isinstance(outdeg, OutDegree) else OutDegree.parse(str(outdeg)))
    jobs = [
        _Job(size, gid, game_seed(seed, size, gid), degree, tuple(algos), tuple(weights), str(discount))
        for size in sizes
        for gid in range(cluster)
    ]
    workers = worker_count() if workers is None else workers
    run = BenchRun()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=1))
    else:
        results = map(_run_job, jobs)
    for job, (records, failures, agree) in zip(jobs, results):
        if not agree:
            raise ValuationMismatch(job.size, job.game_id, job.seed)
        run.records.extend(records)
        run.failures.extend(failures)
    run.records.sort()
    run.failures.sort()
    return run
