"""Ground-truth solvers used to check the LP-based algorithms."""

from __future__ import annotations

import itertools
from typing import Sequence

from .game import (
    ONE,
    ZERO,
    Game,
    JointStrategy,
    Rational,
    Valuation,
    as_rational,
    contraction,
    offset,
    strategy_valuation,
)


class TooLarge(ValueError):
    pass


ENUMERATION_LIMIT = 10**6


def _bellman(g: Game, val: Sequence) -> list:
    edges = g.edges
    out = []
    for v in range(g.n):
        best = None
        take_max = g.is_max(v)
        for i in g.out_edges[v]:
            e = edges[i]
            q = e.weight + e.discount * val[e.target]
            if best is None or (q > best if take_max else q < best):
                best = q
        out.append(best)
    return out


def _iterate(g: Game, val: list, eps: Rational, lam: Rational) -> list:
    while True:
        nxt = _bellman(g, val)
        delta = max(abs(a - b) for a, b in zip(nxt, val))
        val = nxt
        if delta * lam <= eps * (ONE - lam):
            return val


def value_iteration(g: Game, eps) -> Valuation:
    """Bellman iteration from 0; the result is within ``eps`` of the game value in max-norm."""
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return tuple(_iterate(g, [ZERO] * g.n, eps, contraction(g)))


def greedy_strategy(g: Game, val: Sequence) -> JointStrategy:
    """Per vertex the best edge for its owner at ``val``; ties go to the lowest edge index."""
    sigma = []
    for v in range(g.n):
        take_max = g.is_max(v)
        best, best_q = None, None
        for i in g.out_edges[v]:
            e = g.edges[i]
            q = e.weight + e.discount * val[e.target]
            if best is None or (q > best_q if take_max else q < best_q):
                best, best_q = i, q
        sigma.append(best)
    return tuple(sigma)


def check_cooptimal(g: Game, sigma: Sequence[int]) -> bool:
    val = strategy_valuation(g, sigma)
    return all(offset(g, val, e) >= 0 for e in range(len(g.edges)))


def solve_exact(g: Game) -> tuple[Valuation, JointStrategy]:
    """Exact game value and a co-optimal joint strategy.

    Value iteration is run to accuracy 1/8, 1/32, ... and after each round
    the greedy strategy is evaluated exactly; the first one whose valuation
    satisfies every inequation is co-optimal.
    """
    lam = contraction(g)
    val = [ZERO] * g.n
    eps = as_rational("1/8")
    while True:
        val = _iterate(g, val, eps, lam)
        sigma = greedy_strategy(g, val)
        exact = strategy_valuation(g, sigma)
        if all(offset(g, exact, e) >= 0 for e in range(len(g.edges))):
            return exact, sigma
        eps /= 4


def _space_size(g: Game) -> int:
    size = 1
    for v in range(g.n):
        size *= len(g.out_edges[v])
    return size


def all_joint_strategies(g: Game, limit: int = ENUMERATION_LIMIT):
    if _space_size(g) > limit:
        raise TooLarge(f"{_space_size(g)} joint strategies exceed the limit {limit}")
    return itertools.product(*g.out_edges)


def enumerate_solve(g: Game, limit: int = ENUMERATION_LIMIT) -> Valuation:
    """max over MAX strategies of min over MIN strategies, vertex by vertex."""
    if _space_size(g) > limit:
        raise TooLarge(f"{_space_size(g)} joint strategies exceed the limit {limit}")
    max_v = [v for v in range(g.n) if g.is_max(v)]
    min_v = [v for v in range(g.n) if not g.is_max(v)]
    best = None
    sigma = [None] * g.n
    for smax in itertools.product(*(g.out_edges[v] for v in max_v)):
        for v, e in zip(max_v, smax):
            sigma[v] = e
        worst = None
        for smin in itertools.product(*(g.out_edges[v] for v in min_v)):
            for v, e in zip(min_v, smin):
                sigma[v] = e
            val = strategy_valuation(g, sigma)
            worst = list(val) if worst is None else [min(a, b) for a, b in zip(worst, val)]
        best = worst if best is None else [max(a, b) for a, b in zip(best, worst)]
    return tuple(best)
