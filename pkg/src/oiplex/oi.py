"""Objective improvement: fixed inequations, strategy-indexed objectives.

The outer loop minimises the (optionally factor-weighted) sum of offsets of
the currently selected edges over the polytope of all inequations and stops
as soon as that minimum is exactly zero.  Otherwise the joint strategy is
improved by the first applicable rule:

``local``
    switch every vertex to an edge of minimal offset at the current corner;
``pivot``
    look at the corners one basis exchange away for a strategy whose
    objective there beats the current optimum;
``subgame``
    solve the game restricted to sharp edges plus the current selection and
    adopt its co-optimal strategy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .constraints import (
    ConstraintSystem,
    build_inequations,
    objective,
    weighted_offset,
)
from .game import Game, JointStrategy, Rational, Valuation, ensure_valid, offset
from .oracle import solve_exact
from .simplex import Basis, minimize, neighbouring_bases

RULES = ("local", "pivot", "subgame")


class PreconditionViolated(RuntimeError):
    pass


class NoImprovement(RuntimeError):
    pass


@dataclass
class OiStats:
    lp_calls: int = 0
    strategy_updates: int = 0
    nonlocal_events: int = 0
    pivots: int = 0
    objective_history: list = field(default_factory=list)
    rule_counts: dict = field(default_factory=dict)
    valuations: Optional[list] = None


@dataclass(frozen=True)
class OiConfig:
    seed: int = 0
    init: str = "first"
    alpha: Optional[tuple] = None
    rules: tuple = RULES
    minimal_stale: bool = True
    trace: bool = False


@dataclass(frozen=True)
class StaleSets:
    stale: frozenset
    sharp: frozenset
    chosen: frozenset


class PivotImprovement(NamedTuple):
    strategy: JointStrategy
    valuation: Valuation
    basis: Basis


def choose_initial_strategies(g: Game, seed: int = 0, mode: str = "first") -> JointStrategy:
    if mode == "first":
        return tuple(out[0] for out in g.out_edges)
    if mode == "random":
        rng = random.Random(seed)
        return tuple(rng.choice(out) for out in g.out_edges)
    raise ValueError(f"unknown initialisation mode {mode!r}")


def _f(g: Game, sigma, val, alpha) -> Rational:
    return sum((weighted_offset(g, val, e, alpha) for e in sigma), Rational(0))


def best_response_edges(g: Game, val: Sequence, sigma: Sequence[int], alpha=None) -> JointStrategy:
    """Per vertex an edge of minimal (weighted) offset; the current edge wins ties."""
    out = []
    for v, cur in enumerate(sigma):
        best, best_o = cur, weighted_offset(g, val, cur, alpha)
        for e in g.out_edges[v]:
            o = weighted_offset(g, val, e, alpha)
            if o < best_o:
                best, best_o = e, o
        out.append(best)
    return tuple(out)


def local_improvement(
    g: Game, val: Sequence, sigma: Sequence[int], alpha=None
) -> Optional[JointStrategy]:
    new = best_response_edges(g, val, sigma, alpha)
    if _f(g, new, val, alpha) < _f(g, sigma, val, alpha):
        return new
    return None


def stale_edge_set(
    g: Game, val: Sequence, sigma: Sequence[int], alpha=None, minimal: bool = True
) -> StaleSets:
    stale, sharp = set(), set()
    for v, cur in enumerate(sigma):
        ref = weighted_offset(g, val, cur, alpha)
        for e in g.out_edges[v]:
            o = weighted_offset(g, val, e, alpha)
            if o == ref:
                stale.add(e)
            if o == 0:
                sharp.add(e)
    chosen = (sharp | set(sigma)) if minimal else set(stale)
    return StaleSets(frozenset(stale), frozenset(sharp), frozenset(chosen))


def restrict(g: Game, keep) -> tuple[Game, list[int]]:
    """Subgame on the edges in ``keep``; also returns sub-edge -> original edge ids."""
    ids = sorted(keep)
    return Game(g.n, g.owner, tuple(g.edges[i] for i in ids)), ids


def nonlocal_improvement(
    g: Game, val: Sequence, sigma: Sequence[int], alpha=None, minimal: bool = True
) -> JointStrategy:
    """Co-optimal strategy of the game restricted to the chosen stale edges."""
    if local_improvement(g, val, sigma, alpha) is not None:
        raise PreconditionViolated("a local improvement is available")
    if all(any(offset(g, val, e) == 0 for e in g.out_edges[v]) for v in range(g.n)):
        raise PreconditionViolated("the valuation already defines strategies")
    sets = stale_edge_set(g, val, sigma, alpha, minimal)
    sub, ids = restrict(g, sets.chosen)
    _, sub_sigma = solve_exact(sub)
    return tuple(ids[e] for e in sub_sigma)


def single_pivot_improvement(
    g: Game,
    system: ConstraintSystem,
    val: Sequence,
    basis: Basis,
    sigma: Sequence[int],
    alpha=None,
) -> Optional[PivotImprovement]:
    """First neighbouring corner whose greedy strategy beats ``f_sigma(val)``."""
    current = _f(g, sigma, val, alpha)
    for nb, nval in neighbouring_bases(system, basis):
        cand = best_response_edges(g, nval, sigma, alpha)
        if _f(g, cand, nval, alpha) < current:
            return PivotImprovement(cand, nval, nb)
    return None


def solve_oi(g: Game, cfg: OiConfig = OiConfig()) -> tuple[Valuation, JointStrategy, OiStats]:
    ensure_valid(g)
    unknown = set(cfg.rules) - set(RULES)
    if unknown or not cfg.rules:
        raise ValueError(f"bad rule order {cfg.rules!r}")
    alpha = cfg.alpha
    system = build_inequations(g)
    sigma = choose_initial_strategies(g, cfg.seed, cfg.init)
    stats = OiStats(valuations=[] if cfg.trace else None)
    warm: Optional[Basis] = None
    while True:
        f = objective(g, sigma, alpha)
        res = minimize(system, f, warm)
        stats.lp_calls += 1
        stats.pivots += res.pivot_count
        stats.objective_history.append(res.objective_value)
        if stats.valuations is not None:
            stats.valuations.append(res.valuation)
        if res.objective_value == 0:
            return res.valuation, sigma, stats
        val, warm = res.valuation, res.basis
        new, used = _improve(g, system, val, warm, sigma, cfg)
        if used != "local":
            stats.nonlocal_events += 1
        if used == "pivot":
            new, warm = new.strategy, new.basis
        stats.rule_counts[used] = stats.rule_counts.get(used, 0) + 1
        stats.strategy_updates += sum(a != b for a, b in zip(sigma, new))
        sigma = new


def _improve(g, system, val, basis, sigma, cfg: OiConfig):
    alpha = cfg.alpha
    for rule in cfg.rules:
        if rule == "local":
            new = local_improvement(g, val, sigma, alpha)
        elif rule == "pivot":
            if local_improvement(g, val, sigma, alpha) is not None:
                continue
            new = single_pivot_improvement(g, system, val, basis, sigma, alpha)
        else:
            try:
                new = nonlocal_improvement(g, val, sigma, alpha, cfg.minimal_stale)
            except PreconditionViolated:
                continue
        if new is not None:
            return new, rule
    raise NoImprovement(f"no rule in {cfg.rules!r} improves the current strategy")
