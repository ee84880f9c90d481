"""Discounted payoff games: data model, strategy evaluation and offsets.

All numbers are exact rationals (``gmpy2.mpq``), kept in reduced form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def as_rational(x) -> Rational:
    """Convert ints, Fractions, mpq and numeric strings ("3", "-2/7", "0.9") exactly."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return mpq(x)


class Owner(enum.Enum):
    MIN = "MIN"
    MAX = "MAX"


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    weight: Rational
    discount: Rational

    def __post_init__(self):
        object.__setattr__(self, "weight", as_rational(self.weight))
        object.__setattr__(self, "discount", as_rational(self.discount))


# A joint strategy is a tuple holding, per vertex, the index of the chosen edge.
JointStrategy = tuple
# A valuation is a tuple of exact rationals, one per vertex.
Valuation = tuple


@dataclass(frozen=True, eq=True)
class Game:
    """A game on vertices ``0..n-1``; edges are identified by their position."""

    n: int
    owner: tuple[Owner, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(Owner(o) for o in self.owner))
        object.__setattr__(
            self, "edges", tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        )

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            if 0 <= e.source < self.n:
                out[e.source].append(i)
        return tuple(tuple(x) for x in out)

    def is_max(self, v: int) -> bool:
        return self.owner[v] is Owner.MAX

    def edge_index(self, source: int, target: int) -> int:
        for i in self.out_edges[source]:
            if self.edges[i].target == target:
                return i
        raise KeyError((source, target))

    def __getstate__(self):
        return {"n": self.n, "owner": self.owner, "edges": self.edges}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)


# --------------------------------------------------------------------------
# validation


class GameError(Exception):
    """Base class for structural problems with a game."""


class SinkVertex(GameError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no outgoing edge")
        self.vertex = vertex


class DiscountOutOfRange(GameError):
    def __init__(self, edge: int, discount):
        super().__init__(f"edge {edge} has discount {discount} outside [0, 1)")
        self.edge = edge


class DuplicateEdge(GameError):
    def __init__(self, edge: int, source: int, target: int):
        super().__init__(f"edge {edge} duplicates ({source}, {target})")
        self.edge = edge


class BadVertex(GameError):
    def __init__(self, edge: int, vertex: int):
        super().__init__(f"edge {edge} mentions unknown vertex {vertex}")
        self.edge = edge


class InvalidGame(GameError):
    def __init__(self, problems: Sequence[GameError]):
        super().__init__("; ".join(str(p) for p in problems))
        self.problems = list(problems)


def validate_game(g: Game) -> list[GameError]:
    """Return every invariant violation of ``g``; an empty list means the game is valid."""
    problems: list[GameError] = []
    if len(g.owner) != g.n:
        problems.append(GameError(f"owner list has {len(g.owner)} entries, expected {g.n}"))
    seen: set[tuple[int, int]] = set()
    for i, e in enumerate(g.edges):
        for v in (e.source, e.target):
            if not 0 <= v < g.n:
                problems.append(BadVertex(i, v))
        if not (0 <= e.discount < 1):
            problems.append(DiscountOutOfRange(i, e.discount))
        key = (e.source, e.target)
        if key in seen:
            problems.append(DuplicateEdge(i, *key))
        seen.add(key)
    for v in range(g.n):
        if not g.out_edges[v]:
            problems.append(SinkVertex(v))
    return problems


def ensure_valid(g: Game) -> Game:
    """Raise the problem itself when there is exactly one, else ``InvalidGame``."""
    problems = validate_game(g)
    if len(problems) == 1:
        raise problems[0]
    if problems:
        raise InvalidGame(problems)
    return g


# --------------------------------------------------------------------------
# strategies and valuations


def check_strategy(g: Game, sigma: Sequence[int]) -> None:
    if len(sigma) != g.n:
        raise ValueError(f"strategy has {len(sigma)} entries, expected {g.n}")
    for v, e in enumerate(sigma):
        if not (0 <= e < len(g.edges)) or g.edges[e].source != v:
            raise ValueError(f"edge {e} is not an outgoing edge of vertex {v}")


def strategy_from_targets(g: Game, targets: Sequence[int]) -> JointStrategy:
    """Build a joint strategy from a successor per vertex."""
    return tuple(g.edge_index(v, t) for v, t in enumerate(targets))


def strategy_targets(g: Game, sigma: Sequence[int]) -> tuple[int, ...]:
    return tuple(g.edges[e].target for e in sigma)


def strategy_valuation(g: Game, sigma: Sequence[int]) -> Valuation:
    """Exact value of every vertex under the joint strategy ``sigma``.

    The play from each vertex is a lasso.  Cycle values are closed-form
    (discounted weight sum over ``1 - product of discounts``); stem vertices
    then follow from ``val(v) = w + lambda * val(succ)``.
    """
    n = g.n
    val: list = [None] * n
    state = [0] * n  # 0 unseen, else the start vertex whose walk reached it
    edges = g.edges
    for start in range(n):
        if state[start]:
            continue
        mark = start + 1
        path = []
        v = start
        while state[v] == 0:
            state[v] = mark
            path.append(v)
            v = edges[sigma[v]].target
        if state[v] == mark:
            # v closes a new cycle: path[k:] is the cycle
            k = path.index(v)
            cycle = path[k:]
            acc = ZERO
            prod = ONE
            for u in cycle:
                e = edges[sigma[u]]
                acc += prod * e.weight
                prod *= e.discount
            val[v] = acc / (1 - prod)
            for u in reversed(cycle[1:]):
                e = edges[sigma[u]]
                val[u] = e.weight + e.discount * val[e.target]
            path = path[:k]
        for u in reversed(path):
            e = edges[sigma[u]]
            val[u] = e.weight + e.discount * val[e.target]
    return tuple(val)


def contraction(g: Game) -> Rational:
    """Largest discount factor of the game."""
    return max(e.discount for e in g.edges)


def offset(g: Game, val: Sequence, e: int) -> Rational:
    """Signed slack of the inequation of edge ``e`` at ``val``."""
    edge = g.edges[e]
    rhs = edge.weight + edge.discount * val[edge.target]
    if g.owner[edge.source] is Owner.MAX:
        return val[edge.source] - rhs
    return rhs - val[edge.source]


def offsets(g: Game, val: Sequence) -> list[Rational]:
    return [offset(g, val, e) for e in range(len(g.edges))]


def sharp_out_edges(g: Game, val: Sequence) -> list[list[int]]:
    """Per vertex, the outgoing edges whose inequation holds with equality."""
    return [[e for e in g.out_edges[v] if offset(g, val, e) == 0] for v in range(g.n)]


def defines_strategies(g: Game, val: Sequence) -> bool:
    return all(sharp_out_edges(g, val))


def uniform_game(owner: Iterable, arcs: Iterable[tuple[int, int, object]], discount) -> Game:
    """Convenience constructor for a game with one discount on every edge."""
    owner = tuple(owner)
    return Game(
        len(owner),
        owner,
        tuple(Edge(s, t, as_rational(w), as_rational(discount)) for s, t, w in arcs),
    )
