"""Exact solvers for discounted payoff games: objective improvement, strategy improvement and oracles."""

from .constraints import build_inequations, count_sharp, objective
from .fileformat import GameSyntaxError, parse_game, write_game
from .game import (
    Edge,
    Game,
    GameError,
    Owner,
    as_rational,
    offset,
    strategy_valuation,
    uniform_game,
    validate_game,
)
from .generator import OutDegree, random_game
from .oi import OiConfig, OiStats, solve_oi
from .oracle import check_cooptimal, enumerate_solve, solve_exact, value_iteration
from .perturbation import actual_gap, gap_lower_bound, offset_factors, sharpen
from .si import SiConfig, solve_si
from .simplex import minimize

__version__ = "0.1.0"
