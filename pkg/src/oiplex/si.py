"""Classic strategy improvement for the maximiser, one LP per iteration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .constraints import AffineObjective, ConstraintSystem, Sense, _row, feasible_point
from .game import ONE, ZERO, Game, JointStrategy, Valuation, ensure_valid, offset
from .oi import OiStats
from .simplex import minimize


@dataclass(frozen=True)
class SiConfig:
    seed: int = 0
    init: str = "first"
    trace: bool = False


def si_constraints(g: Game, sigma_max: dict[int, int]) -> ConstraintSystem:
    """MIN edges as inequations, the selected MAX edges as equations.

    ``sigma_max`` maps every MAX vertex to the index of its selected edge.
    The other MAX edges are dropped.
    """
    rows = []
    for e, edge in enumerate(g.edges):
        if g.is_max(edge.source):
            if sigma_max[edge.source] == e:
                rows.append(_row(g, e, Sense.EQ))
        else:
            rows.append(_row(g, e, Sense.LE))
    box = feasible_point(g)
    anchor = tuple(None if g.is_max(v) else box[v] for v in range(g.n))
    return ConstraintSystem(g.n, tuple(rows), anchor)


def _initial(g: Game, cfg: SiConfig) -> dict[int, int]:
    max_v = [v for v in range(g.n) if g.is_max(v)]
    if cfg.init == "first":
        return {v: g.out_edges[v][0] for v in max_v}
    if cfg.init == "random":
        rng = random.Random(cfg.seed)
        return {v: rng.choice(g.out_edges[v]) for v in max_v}
    raise ValueError(f"unknown initialisation mode {cfg.init!r}")


def _switch(g: Game, val: Sequence, sigma_max: dict[int, int]) -> dict[int, int]:
    """Greedy all-switch: each improvable MAX vertex takes its best edge (lowest index on ties)."""
    new = dict(sigma_max)
    for v, cur in sigma_max.items():
        best, best_q = None, val[v]
        for e in g.out_edges[v]:
            edge = g.edges[e]
            q = edge.weight + edge.discount * val[edge.target]
            if q > best_q:
                best, best_q = e, q
        if best is not None:
            new[v] = best
    return new


def solve_si(g: Game, cfg: SiConfig = SiConfig()) -> tuple[Valuation, JointStrategy, OiStats]:
    """Returns the game value, a co-optimal joint strategy and the run statistics."""
    ensure_valid(g)
    sigma_max = _initial(g, cfg)
    # maximise the sum of all values
    f = AffineObjective(tuple(-ONE for _ in range(g.n)), ZERO)
    stats = OiStats(valuations=[] if cfg.trace else None)
    while True:
        res = minimize(si_constraints(g, sigma_max), f)
        stats.lp_calls += 1
        stats.pivots += res.pivot_count
        stats.objective_history.append(-res.objective_value)
        val = res.valuation
        if stats.valuations is not None:
            stats.valuations.append(val)
        new = _switch(g, val, sigma_max)
        if new == sigma_max:
            break
        stats.strategy_updates += sum(new[v] != sigma_max[v] for v in sigma_max)
        sigma_max = new
    sigma = []
    for v in range(g.n):
        if g.is_max(v):
            sigma.append(sigma_max[v])
        else:
            sigma.append(next(e for e in g.out_edges[v] if offset(g, val, e) == 0))
    return val, tuple(sigma), stats
