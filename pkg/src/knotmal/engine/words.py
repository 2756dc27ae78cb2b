"""Free-group words over named generators.

A word is a tuple of ``(generator, exponent)`` syllables.  The text form is
space separated tokens ``x``, ``x^3``, ``y^-1``; the empty word renders as
``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..errors import ParseError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")


def _reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        if not _NAME.match(name):
            raise ParseError(f"invalid generator name {name!r}")
        return cls(((name, exp),) if exp else ())

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        letters = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m or (m.group(2) is not None and int(m.group(2)) == 0):
                raise ParseError(f"bad word token {tok!r} in {text!r}")
            letters.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return Word(_reduce(self.letters + other.letters))

    def __invert__(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    inverse = __invert__

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        return Word(_reduce(self.letters * n))

    def __len__(self) -> int:
        """Syllable count."""
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def length(self) -> int:
        """Letter count, i.e. the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.letters)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def reduced(self) -> "Word":
        return Word(_reduce(self.letters))

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def substitute(self, images: dict[str, "Word"]) -> "Word":
        """Replace generators by words; generators missing from ``images`` stay."""
        out: list[tuple[str, int]] = []
        for g, e in self.letters:
            if g in images:
                img = images[g] if e > 0 else ~images[g]
                out.extend(img.letters * abs(e))
            else:
                out.append((g, e))
        return Word(_reduce(out))

    def rename(self, mapping: dict[str, str]) -> "Word":
        return Word(tuple((mapping.get(g, g), e) for g, e in self.letters))

    def expanded(self) -> list[tuple[str, int]]:
        """Letter-by-letter form with exponents +-1."""
        return [(g, 1 if e > 0 else -1) for g, e in self.letters for _ in range(abs(e))]


def free_reduce(w: Word) -> Word:
    return w.reduced()


def commutator(u: Word, v: Word) -> Word:
    return u * v * ~u * ~v


def product(words: Iterable[Word]) -> Word:
    letters: list[tuple[str, int]] = []
    for w in words:
        letters.extend(w.letters)
    return Word(_reduce(letters))
