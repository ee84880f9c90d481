"""Plain-text game files.

::

    # comment
    dpg 2;
    0 MIN : 0(1,0.9);
    1 MAX : 1(0,9/10), 0(0,9/10);

Numbers are integers, fractions ``p/q`` or decimals, all read exactly.
Edges are numbered in file order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

from .game import Edge, Game, Owner, Rational, ensure_valid


class GameSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_NUMBER = r"[+-]?(?:\d+/\d+|\d*\.\d+|\d+\.?)"
_TOKENS = {
    "int": re.compile(r"\d+"),
    "number": re.compile(_NUMBER),
    "owner": re.compile(r"MIN|MAX"),
    "dpg": re.compile(r"dpg\b"),
}


class _Line:
    def __init__(self, text: str, lineno: int):
        self.text, self.lineno, self.pos = text, lineno, 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, message: str):
        raise GameSyntaxError(message, self.lineno, self.pos + 1)

    def take(self, kind: str) -> str:
        self.skip()
        m = _TOKENS[kind].match(self.text, self.pos)
        if not m:
            self.fail(f"expected {kind}")
        self.pos = m.end()
        return m.group()

    def peek(self, char: str) -> bool:
        self.skip()
        return self.text.startswith(char, self.pos)

    def expect(self, char: str):
        if not self.peek(char):
            self.fail(f"expected {char!r}")
        self.pos += len(char)

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")


def _number(line: _Line) -> Rational:
    start = line.pos
    tok = line.take("number")
    try:
        return mpq(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        line.pos = start
        line.skip()
        line.fail(f"bad number {tok!r}")


def parse_game(text: str, validate: bool = True) -> Game:
    """Parse a game file; syntax errors carry line and column, semantic ones come from validation."""
    n = None
    vertices: dict[int, tuple[Owner, list[Edge]]] = {}
    order: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last_line = lineno
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        line = _Line(body, lineno)
        if n is None:
            line.take("dpg")
            n = int(line.take("int"))
            line.expect(";")
            line.end()
            continue
        line.skip()
        start = line.pos
        v = int(line.take("int"))
        if v >= n:
            line.pos = start
            line.fail(f"vertex {v} out of range for dpg {n}")
        if v in vertices:
            line.pos = start
            line.fail(f"vertex {v} declared twice")
        owner = Owner(line.take("owner"))
        line.expect(":")
        edges: list[Edge] = []
        if not line.peek(";"):
            while True:
                t = int(line.take("int"))
                line.expect("(")
                w = _number(line)
                line.expect(",")
                lam = _number(line)
                line.expect(")")
                edges.append(Edge(v, t, w, lam))
                if not line.peek(","):
                    break
                line.expect(",")
        line.expect(";")
        line.end()
        vertices[v] = (owner, edges)
        order.append(v)
    if n is None:
        raise GameSyntaxError("missing 'dpg <n>;' header", last_line + 1, 1)
    missing = [v for v in range(n) if v not in vertices]
    if missing:
        raise GameSyntaxError(f"vertex {missing[0]} is never declared", last_line + 1, 1)
    owner = tuple(vertices[v][0] for v in range(n))
    edges = tuple(e for v in order for e in vertices[v][1])
    g = Game(n, owner, edges)
    return ensure_valid(g) if validate else g


def format_number(x: Rational) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def write_game(g: Game) -> str:
    """Serialise ``g``; edges are written grouped by source, in index order."""
    lines = [f"dpg {g.n};"]
    for v in range(g.n):
        arcs = ", ".join(
            f"{g.edges[e].target}({format_number(g.edges[e].weight)},{format_number(g.edges[e].discount)})"
            for e in g.out_edges[v]
        )
        lines.append(f"{v} {g.owner[v].value} : {arcs};")
    return "\n".join(lines) + "\n"
