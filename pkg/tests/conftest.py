import pytest
from fractions import Fraction

from oiplex.game import Edge, Game, Owner, uniform_game

MIN, MAX = Owner.MIN, Owner.MAX
A, B = 0, 1

# edge ids in G1 / G2: 0 = (a,a), 1 = (b,b), 2 = (b,a)
AA, BB, BA = 0, 1, 2

ACCEPTANCE_LINES = []


def make_g1(lam="9/10"):
    return uniform_game([MIN, MAX], [(A, A, 1), (B, B, 0), (B, A, 0)], lam)


def make_g2():
    return Game(
        2,
        (MIN, MAX),
        (Edge(A, A, 1, Fraction(2, 3)), Edge(B, B, 0, Fraction(1, 3)), Edge(B, A, 0, Fraction(2, 3))),
    )


@pytest.fixture
def g1():
    return make_g1()


@pytest.fixture
def g2():
    return make_g2()


@pytest.fixture
def g1_lam():
    return make_g1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
