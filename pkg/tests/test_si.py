from fractions import Fraction

from conftest import AA, BA, BB
from oiplex.constraints import Sense, build_inequations
from oiplex.game import defines_strategies
from oiplex.generator import random_game
from oiplex.oi import solve_oi
from oiplex.oracle import check_cooptimal, solve_exact
from oiplex.si import SiConfig, si_constraints, solve_si


def _rows(h):
    return [(r.source, r.target, r.sense, r.weight, r.discount) for r in h.rows]


def test_si_constraints_g1(g1):
    lam = Fraction(9, 10)
    assert _rows(si_constraints(g1, {1: BB})) == [(0, 0, Sense.LE, 1, lam), (1, 1, Sense.EQ, 0, lam)]
    assert _rows(si_constraints(g1, {1: BA})) == [(0, 0, Sense.LE, 1, lam), (1, 0, Sense.EQ, 0, lam)]


def test_si_constraint_count():
    g = random_game(25, "2-5", seed=4)
    sigma_max = {v: g.out_edges[v][0] for v in range(g.n) if g.is_max(v)}
    h = si_constraints(g, sigma_max)
    min_edges = sum(1 for e in g.edges if not g.is_max(e.source))
    assert len(h) == min_edges + len(sigma_max)


def test_solve_si_g1(g1):
    val, sigma, stats = solve_si(g1, SiConfig(trace=True))
    assert stats.valuations == [(10, 0), (10, 9)]
    assert (val, sigma) == ((10, 9), (AA, BA))
    assert stats.lp_calls == 2 and stats.strategy_updates == 1 and stats.nonlocal_events == 0


def test_solve_si_g2(g2):
    val, sigma, _ = solve_si(g2)
    assert (val, sigma) == ((3, 2), (AA, BA))


def test_si_agrees_and_is_monotone():
    for seed in range(60):
        g = random_game(7, "2-3", seed=seed)
        val, sigma, stats = solve_si(g, SiConfig(seed=seed, init="random", trace=True))
        assert val == solve_oi(g)[0] == solve_exact(g)[0]
        assert check_cooptimal(g, sigma)
        assert build_inequations(g).is_feasible(val)
        assert defines_strategies(g, val)
        for a, b in zip(stats.valuations, stats.valuations[1:]):
            assert all(x <= y for x, y in zip(a, b))
