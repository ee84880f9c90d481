"""Acceptance criteria A1-A11. Each test prints one PASS/FAIL line (also collected in the terminal summary)."""

import random
import time
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import ACCEPTANCE_LINES, AA, BA, BB, make_g1, make_g2
from oiplex.bench import run_bench
from oiplex.constraints import build_inequations, count_sharp, objective
from oiplex.game import Game, as_rational, contraction
from oiplex.generator import random_game
from oiplex.oi import OiConfig, solve_oi
from oiplex.oracle import check_cooptimal, enumerate_solve, solve_exact
from oiplex.perturbation import AllCoOptimal, actual_gap, gap_lower_bound, offset_factors, sharpen
from oiplex.si import solve_si
from oracles import feasible_corners


def report(name, ok, detail):
    line = f"{name} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


DISCOUNTS = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4), Fraction(9, 10)]


def tiny_games(count, seed):
    """Tiny games with mixed discounts and at least one non-co-optimal joint strategy."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 5)
        g = random_game(n, f"1-{min(n, 3)}", weights=(-20, 20), seed=rng.getrandbits(32))
        edges = tuple(replace(e, discount=as_rational(rng.choice(DISCOUNTS))) for e in g.edges)
        g = Game(g.n, g.owner, edges)
        try:
            actual_gap(g)
        except AllCoOptimal:
            continue
        out.append(g)
    return out


# the two benchmark sweeps are shared between A8, A9 and A10
_SWEEPS = {}


def sweep(outdeg):
    if outdeg not in _SWEEPS:
        _SWEEPS[outdeg] = run_bench([100, 200], 20, outdeg, ("oi", "si"), seed=2024)
    return _SWEEPS[outdeg]


def test_a1_worked_example_uniform_discount():
    start = time.perf_counter()
    val, sigma, stats = solve_oi(make_g1())
    secs = time.perf_counter() - start
    ok = (
        val == (10, 9)
        and sigma == (AA, BA)
        and stats.objective_history[0] == Fraction(9, 10)
        and secs < 1
    )
    report("A1", ok, f"val={tuple(map(str, val))} sigma={sigma} first objective={stats.objective_history[0]} in {secs:.3f}s")


def test_a2_worked_example_mixed_discounts():
    start = time.perf_counter()
    val, sigma, stats = solve_oi(make_g2(), OiConfig(trace=True))
    secs = time.perf_counter() - start
    ok = (
        val == (3, 2)
        and stats.valuations[0] == (0, 0)
        and stats.objective_history[0] == 1
        and stats.nonlocal_events == 1
        and secs < 1
    )
    report(
        "A2", ok,
        f"val={tuple(map(str, val))} first LP {tuple(map(str, stats.valuations[0]))} objective "
        f"{stats.objective_history[0]} nonlocal_events={stats.nonlocal_events} in {secs:.3f}s",
    )


_A3_RUNS = []


def _a3_runs():
    if not _A3_RUNS:
        rng = random.Random(3)
        for _ in range(500):
            n = rng.randint(4, 8)
            g = random_game(n, "2-3", seed=rng.getrandbits(32))
            _A3_RUNS.append((g, solve_oi(g), solve_si(g)))
    return _A3_RUNS


def test_a3_oracle_equivalence():
    start = time.perf_counter()
    runs = _a3_runs()
    bad = sum(1 for g, oi, si in runs if not (oi[0] == si[0] == enumerate_solve(g)))
    secs = time.perf_counter() - start
    report("A3", bad == 0 and secs < 300, f"{len(runs) - bad}/{len(runs)} games agree exactly in {secs:.1f}s")


def test_a4_descent_and_termination():
    bad = 0
    for g, (val, sigma, stats), _ in _a3_runs():
        hist = stats.objective_history
        descent = all(a > b for a, b in zip(hist, hist[1:])) and hist[-1] == 0
        if not (descent and check_cooptimal(g, sigma)):
            bad += 1
    report("A4", bad == 0, f"{len(_A3_RUNS) - bad}/{len(_A3_RUNS)} runs strictly descend to 0 with co-optimal sigma")


def test_a5_sharpness():
    exceptions = 0
    optima = 0
    for seed in range(100):
        g = random_game(50, "2", seed=seed)
        _, _, stats = solve_oi(g, OiConfig(trace=True))
        optima += len(stats.valuations)
        if any(count_sharp(g, val) != g.n for val in stats.valuations):
            exceptions += 1
    report("A5", exceptions <= 1, f"{exceptions} of 100 games had an LP optimum with count_sharp != |V| ({optima} optima)")


def test_a6_perturbation_preserves_optimality():
    good = 0
    games = tiny_games(100, seed=6)
    for i, g in enumerate(games):
        gap = actual_gap(g).lower_bound
        eps = (1 - contraction(g)) / 3 * gap
        h = sharpen(g, eps, seed=i, gap=gap)
        good += check_cooptimal(g, solve_exact(h)[1])
    report("A6", good == len(games), f"{good}/{len(games)} perturbed optima are co-optimal on the originals")


def test_a7_gap_bound():
    games = tiny_games(100, seed=7)
    good = sum(gap_lower_bound(g).lower_bound <= actual_gap(g).lower_bound for g in games)
    report("A7", good == len(games), f"gap_lower_bound <= actual_gap on {good}/{len(games)} games")


def test_a8_trend_high_outdegree():
    run = sweep("5-10")
    oi, si = run.mean("oi", "lp_calls"), run.mean("si", "lp_calls")
    ratio = si / oi
    games = len(run.by_algo("oi"))
    report(
        "A8", ratio >= 1.5 and not run.failures,
        f"mean LP calls SI {si:.2f} / OI {oi:.2f} = {ratio:.2f} over {games} games (sizes 100, 200)",
    )


def test_a9_trend_outdegree_two():
    run = sweep("2")
    oi, si = run.mean("oi", "lp_calls"), run.mean("si", "lp_calls")
    games = len(run.by_algo("oi"))
    report("A9", si <= oi and not run.failures, f"mean LP calls SI {si:.2f} <= OI {oi:.2f} over {games} games")


def test_a10_nonlocal_rarity():
    run = sweep("2")
    frac = run.nonlocal_fraction("oi")
    report(
        "A10", frac <= 0.15,
        f"{100 * frac:.1f}% of games reached a state without a strict local improvement (limit 15%)",
    )


def test_a11_distinct_objective_values():
    rng = random.Random(11)
    fixtures, seed = 0, 0
    bad = 0
    while fixtures < 25:
        seed += 1
        n = rng.randint(3, 6)
        g = random_game(n, "2", seed=seed)
        corners = feasible_corners(build_inequations(g))
        if any(count_sharp(g, x) != n for x in corners.values()):
            continue
        fixtures += 1
        alpha = offset_factors(g, seed)
        points = set(corners.values())
        for _ in range(10):
            sigma = tuple(rng.choice(out) for out in g.out_edges)
            f = objective(g, sigma, alpha)
            values = [f(x) for x in points]
            if len(set(values)) != len(values):
                bad += 1
    report("A11", bad == 0, f"{fixtures} sharp fixtures x 10 strategies, {bad} with repeated objective values")
