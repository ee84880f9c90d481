"""Independent reference computations used by the tests (plain Fractions, no package internals)."""

from fractions import Fraction
from itertools import combinations


def q(x):
    """Plain-int Fraction, whatever rational type ``x`` is."""
    x = Fraction(x) if isinstance(x, (int, str)) else x
    return Fraction(int(x.numerator), int(x.denominator))


def solve_linear(a, b):
    """Exact Gauss-Jordan; returns None for a singular system."""
    n = len(a)
    m = [[q(x) for x in row] + [q(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def strategy_values(g, sigma):
    """val(v) - lam * val(sigma(v)) = w, solved as a dense system."""
    a = [[Fraction(0)] * g.n for _ in range(g.n)]
    b = []
    for v, e in enumerate(sigma):
        edge = g.edges[e]
        a[v][v] += 1
        a[v][edge.target] -= q(edge.discount)
        b.append(q(edge.weight))
    return solve_linear(a, b)


def row_form(row, n):
    """(coefficients, rhs, sign) with the row meaning sign * (coef . x - rhs) >= 0."""
    coef = [Fraction(0)] * n
    coef[row.source] += 1
    coef[row.target] -= q(row.discount)
    sign = -1 if row.sense.value == "<=" else 1
    return coef, q(row.weight), sign


def slack(row, x):
    coef, rhs, sign = row_form(row, len(x))
    return sign * (sum(c * q(xi) for c, xi in zip(coef, x)) - rhs)


def feasible_corners(system):
    """Every feasible basis of a constraint system by brute force: {rows: valuation}."""
    n = system.n
    forms = [row_form(r, n) for r in system.rows]
    eq = [i for i, r in enumerate(system.rows) if r.sense.value == "="]
    others = [i for i in range(len(system.rows)) if i not in eq]
    out = {}
    for extra in combinations(others, n - len(eq)):
        rows = tuple(sorted(eq + list(extra)))
        x = solve_linear([forms[i][0] for i in rows], [forms[i][1] for i in rows])
        if x is None:
            continue
        if all(slack(r, x) >= 0 for r in system.rows if r.sense.value != "=") and all(
            slack(system.rows[i], x) == 0 for i in eq
        ):
            out[rows] = tuple(x)
    return out


def affine(f, x):
    return q(f.constant) + sum(q(c) * q(xi) for c, xi in zip(f.linear, x))
