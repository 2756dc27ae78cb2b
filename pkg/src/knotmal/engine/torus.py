"""Normal forms in torus-knot groups <x, y | x^p = y^q>.

Every element is z^k times an alternating product of syllables x^i
(0 < i < |p|) and y^j (0 < j < |q|), where z = x^p = y^q is central.
Negative p or q (mirror images) are handled by x^|p| = z^sign(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import GcdViolation, UnknownGenerator
from .words import Word


@dataclass(frozen=True)
class NormalForm:
    k: int
    syllables: tuple[tuple[str, int], ...] = ()

    @property
    def is_identity(self) -> bool:
        return self.k == 0 and not self.syllables

    def key(self) -> tuple:
        return (len(self.syllables), abs(self.k), self.k, self.syllables)


def check_torus_params(p: int, q: int) -> None:
    if gcd(p, q) != 1:
        raise GcdViolation(f"gcd({p},{q}) != 1")


def meridian_exponents(p: int, q: int) -> tuple[int, int]:
    """(a, b) with a*q + b*p = 1 and 0 < a < |p|."""
    check_torus_params(p, q)
    a = pow(q, -1, abs(p)) if abs(p) > 1 else 1
    b, rem = divmod(1 - a * q, p)
    assert rem == 0
    return a, b


class TorusGroup:
    """Word problem for <x, y | x^p y^-q>, with the meridian x^a y^b."""

    def __init__(self, p: int, q: int, x: str = "x", y: str = "y"):
        check_torus_params(p, q)
        self.p, self.q, self.x, self.y = p, q, x, y
        a, b = meridian_exponents(p, q)
        self.mu = Word(((x, a), (y, b)))
        self.z = Word.gen(x, p)

    def normal_form(self, w: Word) -> NormalForm:
        k = 0
        syl: list[list] = []
        mods = {self.x: (abs(self.p), 1 if self.p > 0 else -1),
                self.y: (abs(self.q), 1 if self.q > 0 else -1)}
        for g, e in w.letters:
            if g not in mods:
                raise UnknownGenerator(f"{g!r} is not one of {self.x!r}, {self.y!r}")
            mod, sign = mods[g]
            if syl and syl[-1][0] == g:
                e += syl.pop()[1]
            t, r = divmod(e, mod)
            k += t * sign
            if r:
                syl.append([g, r])
        return NormalForm(k, tuple((g, e) for g, e in syl))

    def to_word(self, nf: NormalForm) -> Word:
        return Word.gen(self.x, self.p * nf.k) * Word(nf.syllables)

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def peripheral_membership(self, w: Word) -> tuple[int, int] | None:
        """(m, k) with w = z^k mu^m, or None when w is not peripheral.

        Powers mu^m have exactly 2|m| syllables, so the syllable count of w
        pins |m| and only two candidates remain.
        """
        n = len(self.normal_form(w).syllables)
        if n % 2:
            return None
        for m in sorted({n // 2, -(n // 2)}, reverse=True):
            rest = self.normal_form(w * self.mu ** (-m))
            if not rest.syllables:
                return m, rest.k
        return None

    def coset_decompose(self, w: Word) -> tuple[int, NormalForm]:
        """Split w = mu^c * r with r the canonical representative of <mu> w."""
        span = len(self.normal_form(w).syllables) + 1
        best = None
        for m in range(-span, span + 1):
            nf = self.normal_form(self.mu ** (-m) * w)
            if best is None or nf.key() < best[1].key():
                best = (m, nf)
        return best


def torus_normal_form(p: int, q: int, w: Word) -> NormalForm:
    return TorusGroup(p, q).normal_form(w)


def torus_peripheral_membership(p: int, q: int, w: Word) -> tuple[int, int] | None:
    return TorusGroup(p, q).peripheral_membership(w)
