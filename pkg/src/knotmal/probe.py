"""Bounded search for non-malnormality patterns using finite quotients.

Candidates are triples (g, mu^i lambda^j, mu^i lambda^k): conjugation
preserves the abelianization, so p0 and p1 share their meridian exponent.
A triple is discarded when some quotient refutes g p0 g^-1 = p1; g is kept
only when some quotient shows it lies outside P.  Both filters are sound:
a genuine witness is never discarded by the identity filter.

Words are enumerated up to the symmetries g -> mu^e g mu^f (when mu is a
generator) and (p0, p1) -> (p0^-1, p1^-1), which map witnesses to witnesses.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .engine import perms as P
from .engine.quotients import find_quotients
from .engine.words import Word
from .presentation import PeripheralPair, PresentedGroup

CHUNK = 50_000


@dataclass(frozen=True)
class ProbeBounds:
    g_length: int = 6
    p_exponent: int = 6
    quotients: int = 50
    degree_cap: int = 9
    seed: int = 0
    max_listed: int = 100


@dataclass(frozen=True)
class ProbeReport:
    bounds: ProbeBounds
    quotients_used: int
    candidates: int
    survivor_count: int
    surviving_candidates: tuple[tuple[Word, Word, Word], ...]

    @property
    def refutation_power(self) -> bool:
        return self.quotients_used > 0

    def bounds_json(self) -> dict:
        out = asdict(self.bounds)
        out.update(quotients_used=self.quotients_used, candidates=self.candidates,
                   survivor_count=self.survivor_count,
                   refutation_power=self.refutation_power)
        if not self.refutation_power:
            out["note"] = "no refutation power: every candidate survives"
        return out

    def survivors_json(self) -> list[dict]:
        return [{"g": str(g), "p0": str(p0), "p1": str(p1)}
                for g, p0, p1 in self.surviving_candidates]


def peripheral_word(i: int, j: int) -> Word:
    return Word.gen("mu", i) * Word.gen("lambda", j)


class _WordTree:
    """Freely reduced words by length; layer d holds parent index and last letter."""

    def __init__(self, generators, length: int, skip_letters: set[int]):
        self.letters = [(g, e) for g in generators for e in (1, -1)]
        nl = len(self.letters)
        inverse = np.array([i ^ 1 for i in range(nl)] + [-1])
        skip = np.zeros(nl, dtype=bool)
        skip[list(skip_letters)] = True
        self.parent = [np.array([-1])]
        self.last = [np.array([nl])]  # sentinel: no last letter
        for depth in range(1, length + 1):
            prev = self.last[-1]
            par = np.repeat(np.arange(len(prev)), nl)
            let = np.tile(np.arange(nl), len(prev))
            ok = let != inverse[prev[par]]
            if depth == 1:
                ok &= ~skip[let]
            self.parent.append(par[ok])
            self.last.append(let[ok])
        self.skip = skip

    def layer_sizes(self):
        return [len(p) for p in self.parent]

    def word(self, depth: int, index: int) -> Word:
        letters = []
        while depth > 0:
            letters.append(self.letters[self.last[depth][index]])
            index = self.parent[depth][index]
            depth -= 1
        return Word(tuple(reversed(letters)))

    def images(self, gen_perms: np.ndarray) -> list[np.ndarray]:
        """Per layer, the permutation image of every word (right action)."""
        n = gen_perms.shape[1]
        out = [np.arange(n, dtype=np.int8)[None, :]]
        for depth in range(1, len(self.parent)):
            prev = out[-1][self.parent[depth]]
            out.append(np.take_along_axis(gen_perms[self.last[depth]], prev.astype(np.intp), axis=1))
        return out


def _codes(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[-1]
    return (perms.astype(np.int64) * (n ** np.arange(n, dtype=np.int64))).sum(axis=-1)


def _decode(codes: np.ndarray, n: int) -> np.ndarray:
    return ((codes[:, None] // (n ** np.arange(n, dtype=np.int64))) % n).astype(np.intp)


class _Quotient:
    """One quotient's view of the word tree and the peripheral window."""

    def __init__(self, q, tree: _WordTree, pair: PeripheralPair, p0s, p1s):
        self.n = n = q.degree
        self.tree = tree
        self.gen_perms = np.array([P.power(q.images[g], e) for g, e in tree.letters], dtype=np.int8)
        m, lam = q.eval(pair.mu), q.eval(pair.lam)
        sub = P.generated_subgroup([m, lam], n)
        self.sub_codes = _codes(np.array(sorted(sub), dtype=np.int8))

        def perm_of(i, j):
            return P.compose(P.power(m, i), P.power(lam, j))

        self.p0 = np.array([perm_of(i, j) for i, j in p0s], dtype=np.intp)
        self.p1_codes = _codes(np.array([[perm_of(i, j) for i, j in row] for row in p1s],
                                        dtype=np.int8))

    def word_codes(self) -> np.ndarray:
        return np.concatenate([_codes(layer) for layer in self.tree.images(self.gen_perms)])

    def tables(self, codes: np.ndarray):
        """For distinct element codes: bitmask of p1 matching g p0 g^-1 per p0,
        and whether the element lies outside the peripheral image."""
        u = _decode(codes, self.n)  # (k, n)
        uinv = np.empty_like(u)
        np.put_along_axis(uinv, u, np.arange(self.n)[None, :], axis=1)
        rows = np.arange(len(u))[:, None, None]
        # right action: (g p0 g^-1)[i] = ginv[p0[g[i]]]
        conj = uinv[rows, self.p0[:, u].transpose(1, 0, 2)]  # (k, np0, n)
        ccodes = _codes(conj)
        nj = self.p1_codes.shape[1]
        eq = ccodes[:, :, None] == self.p1_codes[None, :, :]
        bits = (eq.astype(np.uint32) << np.arange(nj, dtype=np.uint32)).sum(axis=2, dtype=np.uint32)
        return bits, ~np.isin(codes, self.sub_codes)


def _windows(e: int):
    p0s = [(i, j) for i in range(-e, e + 1) for j in range(-e, e + 1)
           if i > 0 or (i == 0 and j > 0)]
    js = list(range(-e, e + 1))
    p1s = [[(i, k) for k in js] for i, _ in p0s]
    # p1 must be nontrivial
    valid = np.array([sum(1 << t for t, k in enumerate(js) if (i, k) != (0, 0)) for i, _ in p0s],
                     dtype=np.uint32)
    return p0s, js, p1s, valid


def probe_malnormality(group: PresentedGroup, pair: PeripheralPair,
                       bounds: ProbeBounds = ProbeBounds(), *,
                       extra_candidates=()) -> ProbeReport:
    """Enumerate candidate witnesses within ``bounds`` and filter them.

    ``extra_candidates`` are (g, p0, p1) triples, p0 and p1 over the symbols
    mu and lambda; they pass through the identity filter only and are listed
    first when they survive.
    """
    qs = find_quotients(group, bounds.degree_cap, bounds.quotients, bounds.seed) if bounds.quotients else []
    skip = set()
    if len(pair.mu.letters) == 1 and abs(pair.mu.letters[0][1]) == 1:
        g0 = pair.mu.letters[0][0]
        skip = {2 * group.generators.index(g0), 2 * group.generators.index(g0) + 1}
    tree = _WordTree(group.generators, bounds.g_length, skip)
    p0s, js, p1s, valid = _windows(bounds.p_exponent)
    views = [_Quotient(q, tree, pair, p0s, p1s) for q in qs]

    survivors: list[tuple[Word, Word, Word]] = []
    for g, p0, p1 in extra_candidates:
        e0, e1 = pair.expand(p0), pair.expand(p1)
        if group.abel(e0) != group.abel(e1):
            continue
        lhs, rhs = g * e0 * ~g, e1
        if all(q.eval(lhs) == q.eval(rhs) for q in qs):
            survivors.append((g, p0, p1))

    injected = len(survivors)
    offsets = np.concatenate([[0], np.cumsum(tree.layer_sizes())])
    # the empty word is in P; words ending in a mu letter are skipped
    rows = np.nonzero(~np.append(tree.skip, True)[np.concatenate(tree.last)])[0]
    per_g = sum(bin(int(v)).count("1") for v in valid)
    candidates = len(rows) * per_g

    # quotients prune (g, p0) rows one at a time; a row holds the bitmask of
    # p1 still consistent with every quotient seen so far
    masks = None
    outside = np.zeros(len(rows), dtype=bool)
    for view in views:
        codes = view.word_codes()[rows]
        uniq, inverse = np.unique(codes, return_inverse=True)
        bits, out_p = view.tables(uniq)
        if masks is None:
            masks = np.empty((len(rows), len(p0s)), dtype=np.uint32)
            for lo in range(0, len(rows), CHUNK):
                masks[lo:lo + CHUNK] = valid & bits[inverse[lo:lo + CHUNK]]
        else:
            masks &= bits[inverse]
        outside |= out_p[inverse]
        alive = masks.any(axis=1)
        rows, masks, outside = rows[alive], masks[alive], outside[alive]
    if masks is None:
        masks = np.broadcast_to(valid, (len(rows), len(p0s)))
    else:
        rows, masks = rows[outside], masks[outside]

    count = sum(int(((masks >> np.uint32(b)) & np.uint32(1)).sum()) for b in range(len(js)))
    for r, m in zip(rows, masks):
        if len(survivors) >= bounds.max_listed:
            break
        depth = int(np.searchsorted(offsets, r, side="right") - 1)
        g = tree.word(depth, int(r - offsets[depth]))
        for pi, row_bits in enumerate(m):
            for b in range(len(js)):
                if row_bits >> b & 1:
                    survivors.append((g, peripheral_word(*p0s[pi]), peripheral_word(*p1s[pi][b])))
    return ProbeReport(bounds, len(qs), candidates, count + injected,
                       tuple(survivors[:bounds.max_listed]))
