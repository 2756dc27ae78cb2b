"""Normal forms in connected sums of torus knots.

The group of a sum is the amalgam of the factor groups over the common
meridian subgroup <mu>.  Every element is written uniquely as
mu^e s_1 s_2 ... s_n where each s_j is the canonical representative of a
nontrivial right coset <mu> g inside one factor and consecutive s_j come from
different factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnknownGenerator, UnsupportedFactor
from .torus import NormalForm, TorusGroup
from .words import Word


@dataclass(frozen=True)
class AmalgamNormalForm:
    e: int
    syllables: tuple[tuple[int, NormalForm], ...] = ()

    @property
    def in_meridian_subgroup(self) -> bool:
        return not self.syllables


class SumGroup:
    """Word problem for a presentation whose structure is a sum of torus knots."""

    def __init__(self, structure: dict):
        if structure.get("kind") != "sum":
            raise UnsupportedFactor(f"not a connected sum: {structure.get('kind')!r}")
        self.factors: list[TorusGroup] = []
        self.factor_of: dict[str, int] = {}
        for i, f in enumerate(structure["factors"]):
            s = f["structure"]
            if s.get("kind") != "torus":
                raise UnsupportedFactor(f"factor {i + 1} is {s.get('kind')!r}, not a torus knot")
            tg = TorusGroup(s["p"], s["q"], s["x"], s["y"])
            self.factors.append(tg)
            self.factor_of[s["x"]] = i
            self.factor_of[s["y"]] = i
        self.lam = Word()
        for f in structure["factors"]:
            self.lam = self.lam * Word.parse(f["lambda"])

    def _blocks(self, w: Word) -> list[tuple[int, Word]]:
        blocks: list[tuple[int, list]] = []
        for g, e in w.letters:
            try:
                i = self.factor_of[g]
            except KeyError:
                raise UnknownGenerator(f"{g!r} is not a factor generator") from None
            if blocks and blocks[-1][0] == i:
                blocks[-1][1].append((g, e))
            else:
                blocks.append((i, [(g, e)]))
        return [(i, Word(tuple(ls))) for i, ls in blocks]

    def normal_form(self, w: Word) -> AmalgamNormalForm:
        carry = 0
        reps: list[tuple[int, NormalForm]] = []
        # reps is stored reversed: reps[-1] is the leftmost syllable
        for i, block in reversed(self._blocks(w)):
            tg = self.factors[i]
            piece = block * tg.mu ** carry
            if reps and reps[-1][0] == i:
                piece = piece * tg.to_word(reps.pop()[1])
            carry, rep = tg.coset_decompose(piece)
            if not rep.is_identity:
                reps.append((i, rep))
        return AmalgamNormalForm(carry, tuple(reversed(reps)))

    def equal(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def to_word(self, nf: AmalgamNormalForm) -> Word:
        w = self.factors[0].mu ** nf.e
        for i, rep in nf.syllables:
            w = w * self.factors[i].to_word(rep)
        return w

    def peripheral_membership(self, w: Word) -> tuple[int, int] | None:
        """(i, j) with w = mu^i lambda^j, or None.

        lambda^j has exactly r|j| syllables for r factors, which pins j up
        to sign.
        """
        r = len(self.factors)
        n = len(self.normal_form(w).syllables)
        if n % r:
            return None
        for j in sorted({n // r, -(n // r)}, reverse=True):
            nf = self.normal_form(w * self.lam ** (-j))
            if nf.in_meridian_subgroup:
                return nf.e, j
        return None


def amalgam_normal_form(presentation, w: Word) -> AmalgamNormalForm:
    return SumGroup(presentation.structure).normal_form(w)
