"""Exact-rational simplex over the vertex polytope of a constraint system.

The LP is ``min c.x + const`` subject to rows ``g.x >= h`` (``<=`` rows are
negated, equality rows stay in the basis).  The vertex values ``x`` are free,
so a basis is a set of ``n`` rows whose equations pin down ``x``; this is the
primal simplex written on the active set.

Every row touches at most two vertices, so a basis matrix is a generalised
network matrix: each connected component has as many rows as columns, i.e.
it is a tree plus exactly one cycle.  Solves with such a matrix take linear
time by peeling leaves and closing each cycle in closed form, which is what
``_Factor`` does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .constraints import AffineObjective, ConstraintSystem, Sense, evaluate_objective
from .game import ONE, ZERO, Rational


class LpError(RuntimeError):
    pass


class Infeasible(LpError):
    pass


class Unbounded(LpError):
    pass


class SingularBasis(LpError):
    pass


@dataclass(frozen=True)
class Basis:
    """Row ids of the constraint system treated as equations."""

    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows)))


@dataclass(frozen=True)
class LpResult:
    valuation: tuple[Rational, ...]
    basis: Basis
    objective_value: Rational
    pivot_count: int


class _Factor:
    """Linear-time solver for a square basis with at most two entries per row."""

    __slots__ = ("terms", "peel", "cycles", "n")

    def __init__(self, n: int, terms: Sequence[tuple]):
        self.n = n
        self.terms = terms
        col_pos: list[list[int]] = [[] for _ in range(n)]
        for p, t in enumerate(terms):
            for c, _ in t:
                col_pos[c].append(p)
        deg = [len(ps) for ps in col_pos]
        if 0 in deg:
            raise SingularBasis("a vertex is not constrained by the basis")
        col_alive = [True] * n
        row_alive = [True] * n
        stack = [c for c in range(n) if deg[c] == 1]
        peel = []
        while stack:
            c = stack.pop()
            if not col_alive[c]:
                continue
            p = next(q for q in col_pos[c] if row_alive[q])
            col_alive[c] = False
            row_alive[p] = False
            peel.append((c, p))
            for c2, _ in terms[p]:
                if c2 != c and col_alive[c2]:
                    deg[c2] -= 1
                    if deg[c2] == 1:
                        stack.append(c2)
                    elif deg[c2] == 0:
                        raise SingularBasis("dependent basis rows")
        cycles = []
        for c0 in range(n):
            if not col_alive[c0]:
                continue
            if deg[c0] != 2:
                raise SingularBasis("dependent basis rows")
            cyc = []
            c = c0
            p = next(q for q in col_pos[c0] if row_alive[q])
            while True:
                col_alive[c] = False
                row_alive[p] = False
                (ca, a), (cb, b) = terms[p]
                if ca == c:
                    here, nxt, there = a, cb, b
                else:
                    here, nxt, there = b, ca, a
                cyc.append((c, p, here, there))
                if nxt == c0:
                    break
                p = next(q for q in col_pos[nxt] if row_alive[q])
                c = nxt
            cycles.append(cyc)
        self.peel = peel
        self.cycles = cycles

    def solve(self, rhs: Sequence) -> list:
        """x with B x = rhs (rhs indexed by basis position)."""
        x: list = [None] * self.n
        for cyc in self.cycles:
            # x[c_1] = t, every later x[c_i] = A + B t
            coef = [(ZERO, ONE)]
            A, B = ZERO, ONE
            last = len(cyc) - 1
            for i, (c, p, here, there) in enumerate(cyc):
                if i == last:
                    den = here * B + there
                    if den == 0:
                        raise SingularBasis("singular cycle")
                    t = (rhs[p] - here * A) / den
                else:
                    A, B = (rhs[p] - here * A) / there, -here * B / there
                    coef.append((A, B))
            for (c, _, _, _), (a, b) in zip(cyc, coef):
                x[c] = a + b * t
        terms = self.terms
        for c, p in reversed(self.peel):
            s = rhs[p]
            a_here = None
            for c2, a in terms[p]:
                if c2 == c:
                    a_here = a
                else:
                    s -= a * x[c2]
            x[c] = s / a_here
        return x

    def solve_t(self, cost: Sequence) -> list:
        """y with B^T y = cost (y indexed by basis position)."""
        res = list(cost)
        y: list = [None] * self.n
        terms = self.terms
        for c, p in self.peel:
            t = terms[p]
            if len(t) == 1:
                y[p] = res[c] / t[0][1]
            else:
                (ca, a), (cb, b) = t
                if ca == c:
                    y[p] = yp = res[c] / a
                    res[cb] -= b * yp
                else:
                    y[p] = yp = res[c] / b
                    res[ca] -= a * yp
        for cyc in self.cycles:
            # y of the closing row is t; walk the columns in order
            _, _, _, prev_q = cyc[-1]
            A, B = ZERO, ONE
            vals = []
            last = len(cyc) - 1
            for i, (c, p, here, there) in enumerate(cyc):
                if i == last:
                    den = here + prev_q * B
                    if den == 0:
                        raise SingularBasis("singular cycle")
                    t = (res[c] - prev_q * A) / den
                else:
                    A, B = (res[c] - prev_q * A) / here, -prev_q * B / here
                    vals.append((p, A, B))
                    prev_q = there
            for p, a, b in vals:
                y[p] = a + b * t
            y[cyc[-1][1]] = t
        return y


class _Lp:
    """Mutable simplex state for one solve."""

    def __init__(self, system: ConstraintSystem, cost: Sequence):
        n = system.n
        self.n = n
        self.m = m = len(system.rows)
        g: list[tuple] = []
        h: list = []
        eq: list[bool] = []
        for r in system.rows:
            t = r.terms()
            if r.sense is Sense.LE:
                g.append(tuple((c, -a) for c, a in t))
                h.append(-r.weight)
            else:
                g.append(t)
                h.append(r.weight)
            eq.append(r.sense is Sense.EQ)
        # artificial rows x_v = anchor[v] have ids m + v
        self.inward = [1] * n
        for v, a in enumerate(system.anchor):
            g.append(((v, ONE),))
            h.append(a if a is not None else ZERO)
            eq.append(False)
            if a is not None and a > 0:
                self.inward[v] = -1
        self.g, self.h, self.eq = g, h, eq
        col_rows: list[list[int]] = [[] for _ in range(n)]
        for j in range(m):
            for c, _ in g[j]:
                col_rows[c].append(j)
        self.col_rows = col_rows
        self.cost = list(cost)
        self.pivots = 0
        self.system = system

    # -- basis bookkeeping -------------------------------------------------

    def load(self, rows: Sequence[int]) -> None:
        if len(rows) != self.n or len(set(rows)) != self.n:
            raise SingularBasis(f"a basis needs {self.n} distinct rows")
        self.basis = list(rows)
        self.pos = {r: p for p, r in enumerate(self.basis)}
        self.factor = _Factor(self.n, [self.g[r] for r in self.basis])
        self.x = self.factor.solve([self.h[r] for r in self.basis])
        x = self.x
        self.slack = [
            sum((a * x[c] for c, a in self.g[j]), ZERO) - self.h[j] for j in range(self.m)
        ]

    def feasible(self) -> bool:
        for j in range(self.m):
            s = self.slack[j]
            if s < 0 or (self.eq[j] and s != 0):
                return False
        return True

    def direction(self, p: int) -> list:
        e = [ZERO] * self.n
        e[p] = ONE
        return self.factor.solve(e)

    def row_changes(self, d: Sequence) -> dict[int, Rational]:
        """g_j . d for every real row touching the support of d (zeros dropped)."""
        out: dict[int, Rational] = {}
        g = self.g
        for c in range(self.n):
            if d[c]:
                for j in self.col_rows[c]:
                    if j not in out:
                        out[j] = sum((a * d[cc] for cc, a in g[j]), ZERO)
        return {j: v for j, v in out.items() if v}

    def ratio_test(self, gd: dict[int, Rational]) -> Optional[tuple[int, Rational]]:
        best_j, best_t = None, None
        pos, slack = self.pos, self.slack
        for j, v in gd.items():
            if v < 0 and j not in pos:
                t = slack[j] / -v
                if best_t is None or t < best_t or (t == best_t and j < best_j):
                    best_j, best_t = j, t
        if best_j is None:
            return None
        return best_j, best_t

    def pivot(self, p: int, j: int, t: Rational, d: Sequence, gd: dict) -> None:
        if t:
            x = self.x
            for c in range(self.n):
                if d[c]:
                    x[c] += t * d[c]
            slack = self.slack
            for jj, v in gd.items():
                slack[jj] += t * v
        self.slack[j] = ZERO
        del self.pos[self.basis[p]]
        self.basis[p] = j
        self.pos[j] = p
        self.factor = _Factor(self.n, [self.g[r] for r in self.basis])
        self.pivots += 1

    # -- phases --------------------------------------------------------------

    def crash(self) -> None:
        """Move every artificial row out of the basis, one blocking row at a time."""
        m = self.m
        eq_rows = [j for j in range(m) if self.eq[j]]
        pinned = {self.system.rows[j].source for j in eq_rows}
        start = eq_rows + [m + v for v in range(self.n) if v not in pinned]
        self.load(start)
        if not self.feasible():
            raise Infeasible("starting point violates the constraint system")
        for p in range(self.n):
            r = self.basis[p]
            if r < m:
                continue
            d = self.direction(p)
            cd = sum((self.cost[c] * d[c] for c in range(self.n) if d[c]), ZERO)
            if cd > 0:
                signs = (-1,)
            elif cd < 0:
                signs = (1,)
            else:
                signs = (self.inward[r - m], -self.inward[r - m])
            for s in signs:
                dd = d if s == 1 else [-v for v in d]
                gd = self.row_changes(dd)
                hit = self.ratio_test(gd)
                if hit is not None:
                    self.pivot(p, hit[0], hit[1], dd, gd)
                    break
            else:
                if cd:
                    raise Unbounded("objective decreases along a feasible ray")
                raise Infeasible("no row bounds the polytope along a basis direction")

    def optimize(self) -> None:
        bland_after = 3 * max(self.m, 1)
        steps = 0
        eq, basis = self.eq, self.basis
        while True:
            y = self.factor.solve_t(self.cost)
            bland = steps >= bland_after
            p_best = None
            for p in range(self.n):
                if eq[basis[p]] or y[p] >= 0:
                    continue
                if p_best is None:
                    p_best = p
                elif bland:
                    if basis[p] < basis[p_best]:
                        p_best = p
                elif y[p] < y[p_best]:
                    p_best = p
            if p_best is None:
                return
            d = self.direction(p_best)
            gd = self.row_changes(d)
            hit = self.ratio_test(gd)
            if hit is None:
                raise Unbounded("objective decreases along a feasible ray")
            self.pivot(p_best, hit[0], hit[1], d, gd)
            basis = self.basis
            steps += 1


def minimize(
    system: ConstraintSystem, f: AffineObjective, warm: Optional[Basis] = None
) -> LpResult:
    """Basic optimal solution of ``min f`` over the rows of ``system``.

    With ``warm`` (a feasible basis) the starting phase is skipped.
    """
    if not system.rows:
        raise ValueError("empty constraint system")
    lp = _Lp(system, f.linear)
    if warm is not None:
        lp.load(warm.rows)
        if not lp.feasible():
            raise Infeasible("warm-start basis is not feasible")
        if any(lp.eq[j] and j not in lp.pos for j in range(lp.m)):
            raise Infeasible("warm-start basis misses an equality row")
    else:
        lp.crash()
    lp.optimize()
    x = tuple(lp.x)
    return LpResult(x, Basis(tuple(lp.basis)), evaluate_objective(f, x), lp.pivots)


def basis_valuation(system: ConstraintSystem, basis: Basis) -> tuple[Rational, ...]:
    """Solution of the basis rows taken as equations (feasibility not checked)."""
    lp = _Lp(system, [ZERO] * system.n)
    lp.load(basis.rows)
    return tuple(lp.x)


def neighbouring_bases(system: ConstraintSystem, basis: Basis) -> list[tuple[Basis, tuple]]:
    """Feasible bases reachable from ``basis`` by exchanging exactly one row."""
    lp = _Lp(system, [ZERO] * system.n)
    lp.load(basis.rows)
    if not lp.feasible():
        raise Infeasible("basis is not feasible")
    out = []
    for p in range(lp.n):
        if lp.eq[lp.basis[p]]:
            continue
        d = lp.direction(p)
        gd = {j: v for j, v in lp.row_changes(d).items() if j not in lp.pos}
        hit = lp.ratio_test(gd)
        t_min = hit[1] if hit else None
        for j in sorted(gd):
            v = gd[j]
            if v > 0:
                if lp.slack[j]:
                    continue
                t = ZERO
            else:
                t = lp.slack[j] / -v
                if t != t_min:
                    continue
            rows = list(lp.basis)
            rows[p] = j
            x = tuple(xc + t * dc if dc else xc for xc, dc in zip(lp.x, d))
            out.append((Basis(tuple(rows)), x))
    return out
