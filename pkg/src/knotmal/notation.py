"""Textual knot inputs: DT codes, braid words and knot expressions.

Expression grammar::

    expr := torus(P, Q) | cable(A, B; expr) | sum(expr, expr, ...)
          | dt[4 6 2] | braid[B2: 1 1 1] | table(NAME)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Union

from .errors import (GcdViolation, MalformedBraid, MalformedDT, NotAKnot, ParseError,
                     TrivialKnotRejected)


@dataclass(frozen=True)
class DTCode:
    pairs: tuple[int, ...]

    @property
    def crossings(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.pairs)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def permutation(self) -> list[int]:
        """Where each top position ends up after one pass through the braid."""
        perm = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter) - 1
            for s in range(self.strands):
                if perm[s] == i:
                    perm[s] = i + 1
                elif perm[s] == i + 1:
                    perm[s] = i
        return perm

    def components(self) -> int:
        perm = self.permutation()
        seen, count = set(), 0
        for s in range(self.strands):
            if s not in seen:
                count += 1
                while s not in seen:
                    seen.add(s)
                    s = perm[s]
        return count

    def __str__(self) -> str:
        return f"B{self.strands}: " + " ".join(str(v) for v in self.letters)


def _ints(text: str, error) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise error(f"expected integers, got {text!r}") from None


def parse_dt(text: str) -> DTCode:
    values = _ints(text, MalformedDT)
    if not values:
        raise MalformedDT("empty DT code")
    n = len(values)
    if n < 2:
        raise TrivialKnotRejected(f"a {n}-crossing diagram is the trivial knot")
    if any(v % 2 for v in values):
        raise MalformedDT(f"DT entries must be even: {values}")
    if sorted(abs(v) for v in values) != list(range(2, 2 * n + 1, 2)):
        raise MalformedDT(f"absolute values must be exactly 2..{2 * n}: {values}")
    return DTCode(tuple(values))


_BRAID = re.compile(r"\s*B\s*(\d+)\s*:(.*)\Z", re.S)


def parse_braid(text: str) -> BraidWord:
    m = _BRAID.match(text)
    if not m:
        raise MalformedBraid(f"expected 'B<strands>: i1 i2 ...', got {text!r}")
    strands = int(m.group(1))
    letters = _ints(m.group(2), MalformedBraid)
    if strands < 2:
        raise MalformedBraid("a braid needs at least 2 strands")
    for v in letters:
        if v == 0 or abs(v) >= strands:
            raise MalformedBraid(f"letter {v} out of range for {strands} strands")
    b = BraidWord(strands, tuple(letters))
    if b.components() != 1:
        raise NotAKnot(f"closure of {b} has {b.components()} components")
    return b


# -- knot expressions -------------------------------------------------------

@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise GcdViolation(f"torus({self.p},{self.q}): gcd is {gcd(self.p, self.q)}")
        if abs(self.p) < 2 or abs(self.q) < 2:
            raise TrivialKnotRejected(f"torus({self.p},{self.q}) is the trivial knot")


@dataclass(frozen=True)
class Cable:
    a: int
    b: int
    companion: "KnotExpression"

    def __post_init__(self):
        if gcd(self.a, self.b) != 1:
            raise GcdViolation(f"cable({self.a},{self.b}): gcd is {gcd(self.a, self.b)}")
        if abs(self.a) < 2:
            raise TrivialKnotRejected(f"cable winding {self.a}: the pattern is a core curve")


@dataclass(frozen=True)
class Sum:
    factors: tuple["KnotExpression", ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ParseError("sum() needs at least two factors")


@dataclass(frozen=True)
class FromDiagram:
    source: Union[DTCode, BraidWord]
    name: str | None = None
    # 2+ crossings is necessary for non-triviality, never sufficient
    metadata: tuple[tuple[str, str], ...] = field(
        default=(("nontriviality", "necessary-only: at least 2 crossings"),), compare=False)

    def __post_init__(self):
        n = self.source.crossings if isinstance(self.source, DTCode) else len(self.source.letters)
        if n < 2:
            raise TrivialKnotRejected(f"{n}-crossing diagram is the trivial knot")


KnotExpression = Union[Torus, Cable, Sum, FromDiagram]


def render(expr: KnotExpression) -> str:
    if isinstance(expr, Torus):
        return f"torus({expr.p},{expr.q})"
    if isinstance(expr, Cable):
        return f"cable({expr.a},{expr.b}; {render(expr.companion)})"
    if isinstance(expr, Sum):
        return "sum(" + ", ".join(render(f) for f in expr.factors) + ")"
    if expr.name is not None:
        return f"table({expr.name})"
    if isinstance(expr.source, DTCode):
        return f"dt[{expr.source}]"
    return f"braid[{expr.source}]"


class _Parser:
    def __init__(self, text: str, census):
        self.text = text
        self.pos = 0
        self.census = census

    def fail(self, msg: str):
        raise ParseError(f"{msg} at offset {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def until(self, close: str) -> str:
        end = self.text.find(close, self.pos)
        if end < 0:
            self.fail(f"missing {close!r}")
        body = self.text[self.pos:end]
        self.pos = end + 1
        return body

    def expr(self) -> KnotExpression:
        self.skip()
        if self.peek("torus("):
            self.expect("torus(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(")")
            return Torus(p, q)
        if self.peek("cable("):
            self.expect("cable(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(";")
            companion = self.expr()
            self.expect(")")
            return Cable(a, b, companion)
        if self.peek("sum("):
            self.expect("sum(")
            factors = [self.expr()]
            while self.peek(","):
                self.expect(",")
                factors.append(self.expr())
            self.expect(")")
            return Sum(tuple(factors))
        if self.peek("dt["):
            self.expect("dt[")
            return FromDiagram(parse_dt(self.until("]")))
        if self.peek("braid["):
            self.expect("braid[")
            return FromDiagram(parse_braid(self.until("]")))
        if self.peek("table("):
            self.expect("table(")
            name = self.until(")").strip()
            census = self.census
            if census is None:
                from .census import default_census
                census = default_census()
            entry = census.lookup(name)
            return FromDiagram(entry.dt, name=entry.name)
        self.fail("expected torus(, cable(, sum(, dt[, braid[ or table(")


def parse_knot_expr(text: str, census=None) -> KnotExpression:
    parser = _Parser(text, census)
    expr = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        parser.fail("trailing input")
    return expr


def parse_knot_file(path: str | Path, census=None) -> list[KnotExpression]:
    """One expression per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_knot_expr(line, census))
    return out
