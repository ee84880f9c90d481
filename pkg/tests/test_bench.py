import pytest

import oiplex.bench as bench
from oiplex.bench import BenchRun, ValuationMismatch, game_seed, parse_sizes, run_bench


def test_parse_sizes():
    assert parse_sizes("100:300:100") == [100, 200, 300]
    assert parse_sizes("5:7") == [5, 6, 7]
    assert parse_sizes("42") == [42]
    for bad in ["3:1", "1:5:0", "1:2:3:4"]:
        with pytest.raises(ValueError):
            parse_sizes(bad)


def test_game_seeds_are_stable_and_distinct():
    assert game_seed(1, 100, 3) == game_seed(1, 100, 3)
    assert len({game_seed(1, s, g) for s in (10, 20) for g in range(50)}) == 100


def _strip_wall(text):
    return [line.rsplit(",", 1)[0] for line in text.splitlines()]


def test_run_is_deterministic_and_parallel_safe():
    a = run_bench([8, 12], 4, "2-3", seed=5, workers=1)
    b = run_bench([8, 12], 4, "2-3", seed=5, workers=2)
    assert _strip_wall(a.csv_text()) == _strip_wall(b.csv_text())
    assert len(a.records) == 16
    for r in a.records:
        assert r.lp_calls >= 1
        if r.algo == "si":
            assert r.nonlocal_events == 0


def test_records_count_lp_calls_like_the_solver():
    from oiplex.generator import random_game
    from oiplex.oi import solve_oi

    run = run_bench([9], 3, "2", seed=2, algos=("oi",), workers=1)
    for r in run.records:
        g = random_game(r.size, r.outdeg, seed=r.seed)
        assert solve_oi(g)[2].lp_calls == r.lp_calls


def test_mismatch_aborts(monkeypatch):
    real = bench.SOLVERS["si"]

    def wrong(g, seed):
        val, sigma, stats = real(g, seed)
        return (val[0] + 1,) + tuple(val[1:]), sigma, stats

    monkeypatch.setitem(bench.SOLVERS, "si", wrong)
    with pytest.raises(ValuationMismatch):
        run_bench([6], 2, "2", workers=1)


def test_failures_are_recorded(monkeypatch):
    def broken(g, seed):
        raise ArithmeticError("boom")

    monkeypatch.setitem(bench.SOLVERS, "si", broken)
    run = run_bench([6], 3, "2", workers=1)
    assert len(run.failures) == 3 and {f.status for f in run.failures} == {"ArithmeticError"}
    assert run.failures_csv_text().splitlines()[0] == "size,game_id,seed,outdeg,algo,status"
    assert "failures: 3" in run.summary()


def test_means_table():
    run = run_bench([6, 7], 3, "2", workers=1)
    lines = run.means_table().splitlines()
    assert lines[0] == "# size games oi_lp_calls si_lp_calls oi_updates si_updates"
    assert [line.split()[:2] for line in lines[1:]] == [["6", "3"], ["7", "3"]]
    assert 0 <= run.nonlocal_fraction() <= 1
    assert BenchRun().nonlocal_fraction() == 0


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        run_bench([5], 1, algos=("oi", "magic"))
