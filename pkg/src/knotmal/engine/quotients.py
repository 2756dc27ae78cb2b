"""Homomorphisms from finitely presented groups onto transitive permutation groups.

The search assigns generator images one at a time.  After every assignment
each relator with a single unassigned generator occurring once with exponent
+-1 is solved for that generator; a relator whose unassigned generator occurs
as one syllable g^e restricts g to the e-th roots of what remains.  Relators
of the shape a^-1 W b W^-1 force a and b into the same conjugacy class.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from ..errors import UnknownGenerator
from . import perms as P
from .alexander import eliminate_generators
from .words import Word

DEFAULT_NODE_BUDGET = 60_000
# long substitutions make every relator evaluation slower than the branching they save
ELIMINATION_VALUE_CAP = 12


@dataclass(frozen=True)
class FiniteQuotient:
    degree: int
    images: dict[str, P.Perm] = field(hash=False)
    source: str = ""

    def eval(self, w: Word) -> P.Perm:
        return quotient_eval(self, w)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "images": {g: P.to_cycles(p) for g, p in self.images.items()},
            "source": self.source,
        }


def presentation_digest(generators, relators) -> str:
    text = " ".join(generators) + "\n" + "\n".join(str(r) for r in relators)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def quotient_eval(q: FiniteQuotient, w: Word) -> P.Perm:
    result = P.identity(q.degree)
    for g, e in w.letters:
        try:
            img = q.images[g]
        except KeyError:
            raise UnknownGenerator(f"{g!r} has no image in this quotient") from None
        result = P.compose(result, P.power(img, e))
    return result


def _conjugacy_links(relators: list[Word]) -> list[tuple[str, str]]:
    links = []
    for rel in relators:
        for letters in (rel.expanded(), (~rel).expanded()):
            n = len(letters)
            if n < 2 or n % 2:
                continue
            k = (n - 2) // 2
            for r in range(n):
                rot = letters[r:] + letters[:r]
                if rot[0][1] != -1 or rot[k + 1][1] != 1:
                    continue
                w = rot[1:k + 1]
                tail = [(g, -e) for g, e in reversed(w)]
                if rot[k + 2:] == tail:
                    links.append((rot[0][0], rot[k + 1][0]))
                    break
            else:
                continue
            break
    return links


class _Search:
    def __init__(self, generators, relators, degree, rng, budget, nonabelian):
        self.gens = list(generators)
        self.n = degree
        self.rng = rng
        self.budget = budget
        self.nonabelian = nonabelian
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.rels = []
        for r in relators:
            syl = [(self.index[g], e) for g, e in r.reduced().letters]
            if syl:
                self.rels.append(syl)
        self.rels_of = [[] for _ in self.gens]
        for ri, syl in enumerate(self.rels):
            for gi in {g for g, _ in syl}:
                self.rels_of[gi].append(ri)
        parent = list(range(len(self.gens)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in _conjugacy_links(relators):
            parent[find(self.index[a])] = find(self.index[b])
        self.klass = [find(i) for i in range(len(self.gens))]
        self.assign: list[P.Perm | None] = [None] * len(self.gens)
        self.nodes = 0
        self._orders: dict = {}
        self.found: list[tuple[P.Perm, ...]] = []

    def _shuffled(self, key, items):
        if key not in self._orders:
            lst = list(items)
            self.rng.shuffle(lst)
            self._orders[key] = lst
        return self._orders[key]

    def _prod(self, syl):
        out = P.identity(self.n)
        for gi, e in syl:
            out = P.compose(out, P.power(self.assign[gi], e))
        return out

    def _solve_target(self, syl, gi):
        """For a relator A g^e B with g occurring once: returns (e, A^-1 B^-1)."""
        pos = [i for i, (g, _) in enumerate(syl) if g == gi]
        if len(pos) != 1:
            return None
        i = pos[0]
        a = self._prod(syl[:i])
        b = self._prod(syl[i + 1:])
        return syl[i][1], P.compose(P.inverse(a), P.inverse(b))

    def _propagate(self, changed: list[int], trail: list[int]) -> bool:
        queue = list(changed)
        while queue:
            gi = queue.pop()
            for ri in self.rels_of[gi]:
                syl = self.rels[ri]
                free = {g for g, _ in syl if self.assign[g] is None}
                if not free:
                    if self._prod(syl) != P.identity(self.n):
                        return False
                elif len(free) == 1:
                    g = free.pop()
                    solved = self._solve_target(syl, g)
                    if solved and abs(solved[0]) == 1:
                        e, target = solved
                        self.assign[g] = target if e == 1 else P.inverse(target)
                        trail.append(g)
                        queue.append(g)
        return True

    def _candidates(self, gi):
        for ri in self.rels_of[gi]:
            syl = self.rels[ri]
            if all(self.assign[g] is not None for g, _ in syl if g != gi):
                solved = self._solve_target(syl, gi)
                if solved:
                    return P.roots(solved[1], solved[0])
        for gj, img in enumerate(self.assign):
            if img is not None and self.klass[gj] == self.klass[gi]:
                ct = P.cycle_type(img)
                return self._shuffled(("class", ct), P.class_members(self.n, ct))
        if all(a is None for a in self.assign):
            return P.class_representatives(self.n)
        return self._shuffled("all", P.all_perms(self.n))

    def run(self, want: int, on_found):
        self._dfs(want, on_found)

    def _dfs(self, want, on_found) -> bool:
        """Returns True when the caller should stop."""
        try:
            gi = self.assign.index(None)
        except ValueError:
            return on_found(tuple(self.assign))
        for cand in self._candidates(gi):
            self.nodes += 1
            if self.nodes > self.budget:
                return True
            trail = [gi]
            self.assign[gi] = cand
            ok = self._propagate([gi], trail)
            stop = self._dfs(want, on_found) if ok else False
            for g in trail:
                self.assign[g] = None
            if stop:
                return True
        return False


def canonical_images(images: tuple[P.Perm, ...]) -> tuple[P.Perm, ...] | None:
    """Relabel points by breadth-first discovery; lexicographic minimum over
    start points.  None when the action is not transitive."""
    n = len(images[0])
    best = None
    for s in range(n):
        label = {s: 0}
        order = [s]
        i = 0
        while i < len(order):
            pt = order[i]
            i += 1
            for g in images:
                j = g[pt]
                if j not in label:
                    label[j] = len(order)
                    order.append(j)
        if len(order) < n:
            return None
        relabeled = tuple(tuple(label[g[order[k]]] for k in range(n)) for g in images)
        if best is None or relabeled < best:
            best = relabeled
    return best


def _is_abelian(images) -> bool:
    for i, a in enumerate(images):
        for b in images[i + 1:]:
            if P.compose(a, b) != P.compose(b, a):
                return False
    return True


def find_quotients(presentation, max_degree: int = 7, count: int = 50, seed: int = 0,
                   *, min_degree: int = 2, nonabelian: bool = True,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> list[FiniteQuotient]:
    """Up to ``count`` pairwise non-conjugate transitive quotients of degree
    at most ``max_degree``, lowest degrees first.

    Identical arguments give identical output; ``seed`` only changes the
    order in which candidate images are tried.
    """
    if max_degree > 9:
        raise ValueError("max_degree above 9 is outside desk scale")
    gens = list(presentation.generators)
    rels = list(presentation.relators)
    digest = presentation_digest(gens, rels)
    # search on a Tietze-reduced presentation; dropped generators are
    # recovered from their defining words
    small_gens, small_rels, defs = eliminate_generators(gens, rels, max_value=ELIMINATION_VALUE_CAP)
    out: list[FiniteQuotient] = []
    for degree in range(max(min_degree, 2), max_degree + 1):
        if len(out) >= count:
            break
        rng = random.Random(f"{seed}:{degree}")
        search = _Search(small_gens, small_rels, degree, rng, node_budget, nonabelian)
        seen: set = set()

        def on_found(images):
            if all(img == P.identity(degree) for img in images):
                return False
            if nonabelian and _is_abelian(images):
                return False
            canon = canonical_images(images)
            if canon is None or canon in seen:
                return False
            seen.add(canon)
            q = FiniteQuotient(degree, dict(zip(small_gens, canon)), digest)
            full = {g: q.images[g] if g in q.images else quotient_eval(q, defs[g]) for g in gens}
            out.append(FiniteQuotient(degree, full, digest))
            return len(out) >= count

        search.run(count, on_found)
    return out


def cyclic_quotient(presentation, m: int) -> FiniteQuotient:
    """The map onto Z/m through the abelianization, as rotations of m points."""
    images = {}
    for g in presentation.generators:
        k = presentation.abelianization[g] % m
        images[g] = tuple((i + k) % m for i in range(m))
    return FiniteQuotient(m, images, "cyclic")


def product_quotient(*quotients: FiniteQuotient) -> FiniteQuotient:
    """Diagonal map into the product, acting on the disjoint union of points."""
    images: dict[str, tuple] = {}
    offset = 0
    for q in quotients:
        for g, img in q.images.items():
            images[g] = images.get(g, ()) + tuple(offset + i for i in img)
        offset += q.degree
    return FiniteQuotient(offset, images, "+".join(q.source for q in quotients))
