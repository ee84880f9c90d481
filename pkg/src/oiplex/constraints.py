"""The fixed inequation system of a game and the strategy objectives over it."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .game import ONE, ZERO, Game, Owner, Rational, as_rational, check_strategy, contraction, offset


class Sense(enum.Enum):
    GE = ">="
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class Inequation:
    """``val(source) <sense> weight + discount * val(target)``."""

    edge: int
    source: int
    target: int
    weight: Rational
    discount: Rational
    sense: Sense

    def terms(self) -> tuple[tuple[int, Rational], ...]:
        """Coefficients of ``val(source) - discount * val(target)`` (zero terms dropped)."""
        if self.source == self.target:
            return ((self.source, ONE - self.discount),)
        if self.discount == 0:
            return ((self.source, ONE),)
        return ((self.source, ONE), (self.target, -self.discount))

    def slack(self, val: Sequence) -> Rational:
        """Non-negative iff the row holds at ``val`` (for EQ rows: signed residual)."""
        d = val[self.source] - self.weight - self.discount * val[self.target]
        return -d if self.sense is Sense.LE else d

    def __str__(self):
        rhs = f"{self.weight} + {self.discount}*x{self.target}"
        return f"x{self.source} {self.sense.value} {rhs}"


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows over the vertex values, plus a point from which the LP can start.

    ``anchor[v]`` is the coordinate of the starting point for vertices that
    are not pinned by an equality row (``None`` otherwise).  Fixing every
    anchored coordinate together with the equality rows must give a point
    satisfying all rows.
    """

    n: int
    rows: tuple[Inequation, ...]
    anchor: tuple[Optional[Rational], ...]

    def __len__(self):
        return len(self.rows)

    def is_feasible(self, val: Sequence) -> bool:
        for r in self.rows:
            s = r.slack(val)
            if s < 0 or (r.sense is Sense.EQ and s != 0):
                return False
        return True


class NonPositiveFactor(ValueError):
    def __init__(self, edge: int, factor):
        super().__init__(f"offset factor of edge {edge} is {factor}, must be > 0")
        self.edge = edge


class InfeasiblePoint(ValueError):
    pass


def _row(g: Game, e: int, sense: Sense) -> Inequation:
    edge = g.edges[e]
    return Inequation(e, edge.source, edge.target, edge.weight, edge.discount, sense)


def feasible_point(g: Game) -> tuple[Rational, ...]:
    """The far box corner: ``-M`` on MIN vertices and ``+M`` on MAX vertices.

    ``M = max |w| / (1 - max discount)`` bounds every strategy value, which
    makes this corner satisfy every inequation.
    """
    lam = contraction(g)
    big = max(abs(e.weight) for e in g.edges) / (ONE - lam)
    return tuple(big if o is Owner.MAX else -big for o in g.owner)


def build_inequations(g: Game) -> ConstraintSystem:
    rows = tuple(
        _row(g, e, Sense.GE if g.is_max(edge.source) else Sense.LE)
        for e, edge in enumerate(g.edges)
    )
    return ConstraintSystem(g.n, rows, feasible_point(g))


@dataclass(frozen=True)
class AffineObjective:
    linear: tuple[Rational, ...]
    constant: Rational

    def __call__(self, val: Sequence) -> Rational:
        return evaluate_objective(self, val)

    def __str__(self):
        parts = [str(self.constant)]
        for v, c in enumerate(self.linear):
            if c:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*x{v}")
        return " ".join(parts)


def objective(g: Game, sigma: Sequence[int], alpha: Optional[Sequence] = None) -> AffineObjective:
    """Affine form of ``sum_v alpha_e * offset(val, e)`` over the edges ``e = sigma(v)``."""
    check_strategy(g, sigma)
    if alpha is not None:
        for e, a in enumerate(alpha):
            if not a > 0:
                raise NonPositiveFactor(e, a)
    lin = [ZERO] * g.n
    const = ZERO
    for v, e in enumerate(sigma):
        edge = g.edges[e]
        a = ONE if alpha is None else as_rational(alpha[e])
        # MAX: x_v - w - lam x_t ; MIN: w + lam x_t - x_v
        sign = a if g.is_max(v) else -a
        lin[v] += sign
        lin[edge.target] -= sign * edge.discount
        const -= sign * edge.weight
    return AffineObjective(tuple(lin), const)


def evaluate_objective(f: AffineObjective, val: Sequence) -> Rational:
    total = f.constant
    for c, x in zip(f.linear, val):
        if c:
            total += c * x
    return total


def weighted_offset(g: Game, val: Sequence, e: int, alpha: Optional[Sequence] = None) -> Rational:
    o = offset(g, val, e)
    return o if alpha is None else alpha[e] * o


def count_sharp(g: Game, val: Sequence) -> int:
    """Number of inequations of the game holding with equality at a feasible ``val``."""
    sharp = 0
    for e in range(len(g.edges)):
        o = offset(g, val, e)
        if o < 0:
            raise InfeasiblePoint(f"inequation of edge {e} is violated by {-o}")
        sharp += o == 0
    return sharp
