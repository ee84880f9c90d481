"""Seeded random games for benchmarking."""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass

from gmpy2 import mpq

from .game import Edge, Game, Owner, as_rational

WEIGHT_DENOMINATOR = 1000


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class OutDegree:
    """``FIXED`` (lo), ``RANGE`` (lo..hi, uniform per vertex) or ``PERCENT`` (lo % of n, rounded up)."""

    kind: str
    lo: int
    hi: int = 0

    @classmethod
    def parse(cls, text: str) -> "OutDegree":
        text = text.strip().lower()
        if m := re.fullmatch(r"(\d+)", text):
            return cls("FIXED", int(m[1]), int(m[1]))
        if m := re.fullmatch(r"(\d+)-(\d+)", text):
            return cls("RANGE", int(m[1]), int(m[2]))
        if m := re.fullmatch(r"(\d+)(pct|%)", text):
            return cls("PERCENT", int(m[1]))
        raise BadParams(f"cannot parse out-degree {text!r}")

    def __str__(self):
        if self.kind == "FIXED":
            return str(self.lo)
        if self.kind == "RANGE":
            return f"{self.lo}-{self.hi}"
        return f"{self.lo}pct"

    def bounds(self, n: int) -> tuple[int, int]:
        if self.kind == "PERCENT":
            d = math.ceil(n * self.lo / 100)
            return d, d
        return self.lo, self.hi


FIXED = lambda d: OutDegree("FIXED", d, d)  # noqa: E731
RANGE = lambda lo, hi: OutDegree("RANGE", lo, hi)  # noqa: E731
PERCENT = lambda p: OutDegree("PERCENT", p)  # noqa: E731


def random_game(
    n: int,
    outdeg: OutDegree | str | int = 2,
    weights: tuple = (-250, 250),
    discount="9/10",
    seed: int = 0,
) -> Game:
    """Random game: fair-coin ownership, distinct successors (self-loops allowed),
    weights ``k/1000`` uniform in the weight interval and one discount everywhere."""
    if isinstance(outdeg, int):
        outdeg = FIXED(outdeg)
    elif isinstance(outdeg, str):
        outdeg = OutDegree.parse(outdeg)
    lam = as_rational(discount)
    lo_w, hi_w = (as_rational(w) for w in weights)
    if n < 2:
        raise BadParams("need at least two vertices")
    dlo, dhi = outdeg.bounds(n)
    if not 1 <= dlo <= dhi <= n:
        raise BadParams(f"out-degree {outdeg} is not within 1..{n}")
    if not 0 <= lam < 1:
        raise BadParams(f"discount {lam} outside [0, 1)")
    if lo_w > hi_w:
        raise BadParams("empty weight interval")
    klo = math.ceil(lo_w * WEIGHT_DENOMINATOR)
    khi = math.floor(hi_w * WEIGHT_DENOMINATOR)

    rng = random.Random(seed)
    owner = tuple(Owner.MIN if rng.random() < 0.5 else Owner.MAX for _ in range(n))
    edges = []
    for v in range(n):
        d = rng.randint(dlo, dhi)
        for t in sorted(rng.sample(range(n), d)):
            w = mpq(rng.randint(klo, khi), WEIGHT_DENOMINATOR)
            edges.append(Edge(v, t, w, lam))
    return Game(n, owner, tuple(edges))
