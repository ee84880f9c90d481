"""Gap estimates, weight noise and offset factors for making games sharp and improving."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Optional

from gmpy2 import mpq

from .game import ONE, Game, Rational, as_rational, contraction, offset, strategy_valuation
from .oracle import all_joint_strategies

GRID = 2**40


class AllCoOptimal(ValueError):
    pass


class EpsilonTooLarge(ValueError):
    pass


class BadInterval(ValueError):
    pass


@dataclass(frozen=True)
class GapEstimate:
    lower_bound: Rational
    method: str  # "FORMULA" or "ENUMERATED"


@dataclass(frozen=True)
class OffsetFactors:
    alpha: tuple[Rational, ...]

    def __iter__(self):
        return iter(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __getitem__(self, e):
        return self.alpha[e]


def actual_gap(g: Game) -> GapEstimate:
    """Smallest worst violation over all joint strategies that are not co-optimal."""
    gap = None
    for sigma in all_joint_strategies(g):
        val = strategy_valuation(g, sigma)
        worst = min(offset(g, val, e) for e in range(len(g.edges)))
        if worst < 0 and (gap is None or -worst < gap):
            gap = -worst
    if gap is None:
        raise AllCoOptimal("every joint strategy is co-optimal")
    return GapEstimate(gap, "ENUMERATED")


def gap_lower_bound(g: Game) -> GapEstimate:
    """``1 / (C * D)`` with C the product over vertices of the largest
    ``denom(lambda)^2 * denom(w)`` of an outgoing edge and D the largest ``denom(lambda * w)``."""
    common = 1
    for v in range(g.n):
        common *= max(
            g.edges[e].discount.denominator ** 2 * g.edges[e].weight.denominator
            for e in g.out_edges[v]
        )
    worst = max((e.discount * e.weight).denominator for e in g.edges)
    return GapEstimate(mpq(1, common * worst), "FORMULA")


def noise_budget(g: Game, gap: Optional[Rational] = None) -> Rational:
    if gap is None:
        gap = gap_lower_bound(g).lower_bound
    return (ONE - contraction(g)) / 3 * gap


def sharpen(g: Game, eps, seed: int = 0, gap=None) -> Game:
    """Add independent noise ``k / 2**40`` with ``|k / 2**40| < eps`` to every weight.

    ``eps`` may not exceed ``(1 - lambda*) / 3`` times the gap; the formula
    bound is used unless ``gap`` is supplied.
    """
    eps = as_rational(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    budget = noise_budget(g, None if gap is None else as_rational(gap))
    if eps > budget:
        raise EpsilonTooLarge(f"eps {eps} exceeds the noise budget {budget}")
    if eps == 0:
        return g
    k = math.ceil(eps * GRID) - 1
    rng = random.Random(seed)
    edges = tuple(
        replace(e, weight=e.weight + mpq(rng.randint(-k, k), GRID)) for e in g.edges
    )
    return Game(g.n, g.owner, edges)


def offset_factors(g: Game, seed: int = 0, interval=(1, 2)) -> OffsetFactors:
    lo, hi = (as_rational(x) for x in interval)
    if not 0 < lo < hi:
        raise BadInterval(f"need 0 < lo < hi, got ({lo}, {hi})")
    klo, khi = math.ceil(lo * GRID), math.floor(hi * GRID)
    rng = random.Random(seed)
    return OffsetFactors(tuple(mpq(rng.randint(klo, khi), GRID) for _ in g.edges))
