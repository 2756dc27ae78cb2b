"""Oriented knot diagrams as crossing lists.

Arcs run from one undercrossing to the next.  Arc ``k`` is entered at the
undercrossing ``crossings[k-1]`` and left at ``crossings[k]``, so walking
the crossings in index order is one traversal of the knot starting on arc 0.
A crossing is positive when the over strand turns counterclockwise onto the
under strand (right-handed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NonRealizable
from .notation import BraidWord, DTCode


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    # traversal from label 1: (crossing index, passes over?)
    passes: tuple[tuple[int, bool], ...]

    @property
    def arcs(self) -> int:
        return len(self.crossings)

    def mirror(self) -> "Diagram":
        return Diagram(tuple(Crossing(c.over, c.under_in, c.under_out, -c.sign)
                             for c in self.crossings),
                       tuple((c, not o) for c, o in self.passes))


def writhe(d: Diagram) -> int:
    return sum(c.sign for c in d.crossings)


def _from_passes(passes: list[tuple[int, bool]], signs: dict[int, int]) -> Diagram:
    unders = [i for i, (_, over) in enumerate(passes) if not over]
    n = len(unders)
    if n * 2 != len(passes):
        raise NonRealizable("every crossing must be passed once over and once under")

    def arc_after(pos: int) -> int:
        return (sum(1 for u in unders if u <= pos) - 1) % n

    over_arc = {cid: arc_after(i) for i, (cid, over) in enumerate(passes) if over}
    index = {}
    crossings = []
    for k in range(n):
        cid = passes[unders[(k + 1) % n]][0]
        index[cid] = k
        crossings.append(Crossing(over_arc[cid], k, (k + 1) % n, signs[cid]))
    return Diagram(tuple(crossings), tuple((index[c], o) for c, o in passes))


def _face_count(n: int, partner: list[int], orient: tuple[int, ...]) -> int:
    """Faces of the 4-valent graph when crossing i turns the even strand
    across the odd one from right to left (orient +1) or left to right."""
    rot = {}
    for i in range(n):
        po, pe = 2 * i, partner[2 * i]
        if orient[i] > 0:
            cyc = [(po, "out"), (pe, "out"), (po, "in"), (pe, "in")]
        else:
            cyc = [(po, "out"), (pe, "in"), (po, "in"), (pe, "out")]
        for j, h in enumerate(cyc):
            rot[h] = cyc[(j + 1) % 4]
    m = 2 * n

    def twin(h):
        pos, kind = h
        return ((pos + 1) % m, "in") if kind == "out" else ((pos - 1) % m, "out")

    seen = set()
    faces = 0
    for start in rot:
        if start in seen:
            continue
        faces += 1
        h = start
        while h not in seen:
            seen.add(h)
            h = rot[twin(h)]
    return faces


def dt_to_diagram(code: DTCode) -> Diagram:
    """Realize a DT code; orientations are searched exhaustively, first
    crossing fixed, and the first planar choice wins."""
    n = code.crossings
    partner = [0] * (2 * n)
    even_over = {}
    for i, v in enumerate(code.pairs):
        odd, even = 2 * i, abs(v) - 1
        partner[odd], partner[even] = even, odd
        even_over[i] = v < 0
    for rest in itertools.product((1, -1), repeat=n - 1):
        orient = (1,) + rest
        if _face_count(n, partner, orient) == n + 2:
            break
    else:
        raise NonRealizable(f"DT code [{code}] has no planar realization")
    passes = [None] * (2 * n)
    signs = {}
    for i in range(n):
        odd, even = 2 * i, partner[2 * i]
        passes[odd] = (i, not even_over[i])
        passes[even] = (i, even_over[i])
        signs[i] = -orient[i] if even_over[i] else orient[i]
    return _from_passes(passes, signs)


def braid_to_diagram(b: BraidWord) -> Diagram:
    """Closure of a braid drawn bottom to top; sigma_i is positive and its
    left-to-right strand passes over."""
    passes = []
    pos = 0
    while True:
        for j, letter in enumerate(b.letters):
            i = abs(letter) - 1
            if pos == i:
                passes.append((j, letter > 0))
                pos = i + 1
            elif pos == i + 1:
                passes.append((j, letter < 0))
                pos = i
        if pos == 0:
            break
    signs = {j: (1 if letter > 0 else -1) for j, letter in enumerate(b.letters)}
    return _from_passes(passes, signs)


def diagram_to_dt(d: Diagram) -> DTCode:
    where: dict[int, list[int]] = {}
    for pos, (cid, _) in enumerate(d.passes):
        where.setdefault(cid, []).append(pos)
    pairs = []
    for pos in range(0, len(d.passes), 2):
        cid, _ = d.passes[pos]
        other = [p for p in where[cid] if p != pos][0]
        even_over = d.passes[other][1]
        pairs.append(-(other + 1) if even_over else other + 1)
    return DTCode(tuple(pairs))


def to_diagram(source) -> Diagram:
    if isinstance(source, DTCode):
        return dt_to_diagram(source)
    return braid_to_diagram(source)
