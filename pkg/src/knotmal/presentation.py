"""Finite presentations of knot groups with a meridian and a longitude.

Constructors return ``(PresentedGroup, PeripheralPair)``.  The ``structure``
dict records how a presentation was assembled (torus amalgam, connected sum,
cable) so that the normal-form engines can be used on it; it is plain JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .diagram import Diagram, to_diagram, writhe
from .engine.torus import check_torus_params, meridian_exponents
from .engine.words import Word, commutator, product
from .errors import GcdViolation, H1NotZ, ParseError, TrivialKnotRejected
from .notation import Cable, FromDiagram, KnotExpression, Sum, Torus


@dataclass(frozen=True)
class PresentedGroup:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    structure: dict = field(default_factory=lambda: {"kind": "generic"}, hash=False)
    abelianization: dict[str, int] = field(default_factory=dict, hash=False, compare=False)

    def abel(self, w: Word) -> int:
        return sum(self.abelianization[g] * e for g, e in w.letters)


@dataclass(frozen=True)
class PeripheralPair:
    mu: Word
    lam: Word

    def word(self, i: int, j: int) -> Word:
        """mu^i lambda^j as a word in the group generators."""
        return self.mu ** i * self.lam ** j

    def expand(self, w: Word) -> Word:
        """Substitute the symbols ``mu`` and ``lambda`` of a peripheral word."""
        return w.substitute({"mu": self.mu, "lambda": self.lam})


# -- constructors -----------------------------------------------------------

def wirtinger(d: Diagram, drop: int | None = None) -> tuple[PresentedGroup, PeripheralPair]:
    n = d.arcs
    if n < 2:
        raise TrivialKnotRejected("Wirtinger presentations need at least 2 crossings")
    gens = tuple(f"a{i}" for i in range(n))
    rels = []
    lam = Word()
    for c in d.crossings:
        x_in, x_out, x_over = Word.gen(gens[c.under_in]), Word.gen(gens[c.under_out]), Word.gen(gens[c.over])
        conj = x_over ** c.sign
        # x_out = conj^-1 x_in conj
        rels.append(~x_out * ~conj * x_in * conj)
        lam = lam * conj
    drop = n - 1 if drop is None else drop % n
    rels = [r for i, r in enumerate(rels) if i != drop]
    mu = Word.gen(gens[0])
    lam = lam * mu ** (-writhe(d))
    group = PresentedGroup(gens, tuple(rels), {"kind": "wirtinger", "dropped": drop},
                           {g: 1 for g in gens})
    return group, PeripheralPair(mu, lam)


def torus_presentation(p: int, q: int) -> tuple[PresentedGroup, PeripheralPair]:
    check_torus_params(p, q)
    if abs(p) < 2 or abs(q) < 2:
        raise TrivialKnotRejected(f"torus({p},{q}) is the trivial knot")
    a, b = meridian_exponents(p, q)
    x, y = Word.gen("x"), Word.gen("y")
    mu = x ** a * y ** b
    lam = x ** p * mu ** (-p * q)
    group = PresentedGroup(("x", "y"), (x ** p * y ** (-q),),
                           {"kind": "torus", "p": p, "q": q, "x": "x", "y": "y"},
                           {"x": q, "y": p})
    return group, PeripheralPair(mu, lam)


def _prefix_structure(struct: dict, rename: dict[str, str]) -> dict:
    out = {}
    for key, val in struct.items():
        if key in ("x", "y", "q", "c", "h"):
            out[key] = rename.get(val, val)
        elif key in ("mu", "lambda"):
            out[key] = str(Word.parse(val).rename(rename))
        elif key == "structure" or key == "companion":
            out[key] = _prefix_structure(val, rename)
        elif key == "factors":
            out[key] = [_prefix_structure(f, rename) for f in val]
        else:
            out[key] = val
    return out


def _renamed(group: PresentedGroup, pair: PeripheralPair, prefix: str):
    rename = {g: prefix + g for g in group.generators}
    g2 = PresentedGroup(tuple(rename[g] for g in group.generators),
                        tuple(r.rename(rename) for r in group.relators),
                        _prefix_structure(group.structure, rename),
                        {rename[g]: v for g, v in group.abelianization.items()})
    return g2, PeripheralPair(pair.mu.rename(rename), pair.lam.rename(rename))


def sum_presentation(factors) -> tuple[PresentedGroup, PeripheralPair]:
    factors = list(factors)
    if len(factors) < 2:
        raise ParseError("a connected sum needs at least two factors")
    gens: list[str] = []
    rels: list[Word] = []
    abel: dict[str, int] = {}
    meta = []
    pairs = []
    for i, (grp, pair) in enumerate(factors, start=1):
        prefix = f"f{i}_"
        grp, pair = _renamed(grp, pair, prefix)
        meta.append({"range": [len(gens), len(gens) + len(grp.generators)], "prefix": prefix,
                     "structure": grp.structure, "mu": str(pair.mu), "lambda": str(pair.lam)})
        gens.extend(grp.generators)
        rels.extend(grp.relators)
        abel.update(grp.abelianization)
        pairs.append(pair)
    for left, right in zip(pairs, pairs[1:]):
        rels.append(left.mu * ~right.mu)
    mu = pairs[0].mu
    lam = product(p.lam for p in pairs)
    group = PresentedGroup(tuple(gens), tuple(rels), {"kind": "sum", "factors": meta}, abel)
    return group, PeripheralPair(mu, lam)


def cable_coefficients(a: int, b: int) -> tuple[int, int]:
    """(r, s) with a*s - b*r = 1 and s the least positive choice."""
    if gcd(a, b) != 1:
        raise GcdViolation(f"cable({a},{b}): gcd is {gcd(a, b)}")
    s = pow(a, -1, abs(b)) if abs(b) > 1 else 1
    r, rem = divmod(a * s - 1, b)
    assert rem == 0
    return r, s


def cable_presentation(a: int, b: int, companion) -> tuple[PresentedGroup, PeripheralPair]:
    """Glue the (a, b) cable space to a companion exterior.

    Cable space: <q, c, h | [q,h], [c,h], q^a h^r>, with h the regular fibre,
    c a section curve on the companion-side torus and q c the meridian of the
    cable.  Gluing: h = mu_c^b lambda_c^a and c = mu_c^s lambda_c^r.
    """
    if abs(a) < 2:
        raise TrivialKnotRejected(f"cable winding {a}: the pattern is a core curve")
    r, s = cable_coefficients(a, b)
    cgrp, cpair = _renamed(*companion, "k_")
    q, c, h = Word.gen("q"), Word.gen("c"), Word.gen("h")
    glue_h = cpair.mu ** b * cpair.lam ** a
    glue_c = cpair.mu ** s * cpair.lam ** r
    rels = list(cgrp.relators) + [
        ~h * glue_h,
        ~c * glue_c,
        commutator(q, h),
        commutator(c, h),
        q ** a * h ** r,
    ]
    gens = tuple(cgrp.generators) + ("h", "c", "q")
    abel = {g: a * v for g, v in cgrp.abelianization.items()}
    abel.update({"h": a * b, "c": a * s, "q": -r * b})
    mu = q * c
    lam = h * mu ** (-a * b)
    struct = {"kind": "cable", "a": a, "b": b, "r": r, "s": s, "q": "q", "c": "c", "h": "h",
              "companion": {"range": [0, len(cgrp.generators)], "prefix": "k_",
                            "structure": cgrp.structure, "mu": str(cpair.mu),
                            "lambda": str(cpair.lam)}}
    return PresentedGroup(gens, tuple(rels), struct, abel), PeripheralPair(mu, lam)


def present(expr: KnotExpression) -> tuple[PresentedGroup, PeripheralPair]:
    if isinstance(expr, Torus):
        return torus_presentation(expr.p, expr.q)
    if isinstance(expr, Sum):
        return sum_presentation(present(f) for f in flatten_sum(expr))
    if isinstance(expr, Cable):
        return cable_presentation(expr.a, expr.b, present(expr.companion))
    if isinstance(expr, FromDiagram):
        return wirtinger(to_diagram(expr.source))
    raise TypeError(f"not a knot expression: {expr!r}")


def flatten_sum(expr: Sum) -> list[KnotExpression]:
    out = []
    for f in expr.factors:
        out.extend(flatten_sum(f) if isinstance(f, Sum) else [f])
    return out


# -- abelianization -----------------------------------------------------------

def relation_matrix(group: PresentedGroup) -> list[list[int]]:
    return [[r.exponent_sum(g) for g in group.generators] for r in group.relators]


def h1_invariants(group: PresentedGroup) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of the abelianized group."""
    n = len(group.generators)
    rows = relation_matrix(group)
    if not rows:
        return n, []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return n - len(nonzero), [d for d in nonzero if d > 1]


def compute_abelianization(generators, relators, mu: Word) -> dict[str, int]:
    """The map onto Z sending mu to 1; requires H1 = Z."""
    grp = PresentedGroup(tuple(generators), tuple(relators))
    rank, torsion = h1_invariants(grp)
    if rank != 1 or torsion:
        raise H1NotZ(f"H1 has free rank {rank} and torsion {torsion}")
    rows = relation_matrix(grp)
    if rows:
        (vec,) = Matrix(rows).nullspace()
    else:
        vec = Matrix([1])
    den = 1
    for v in vec:
        den = den * v.q // gcd(den, v.q)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    abel = dict(zip(generators, ints))
    m = sum(abel[x] * e for x, e in mu.letters)
    if abs(m) != 1:
        raise H1NotZ(f"meridian maps to {m}, not a generator of H1")
    return {k: v * m for k, v in abel.items()}


def abelianization_check(group: PresentedGroup, pair: PeripheralPair) -> dict:
    """Raise H1NotZ unless H1 = Z, every relator dies, mu -> 1 and lambda -> 0."""
    rank, torsion = h1_invariants(group)
    report = {"h1_free_rank": rank, "h1_torsion": torsion}
    if rank != 1 or torsion:
        raise H1NotZ(f"H1 is not infinite cyclic: free rank {rank}, torsion {torsion}")
    bad = [str(r) for r in group.relators if group.abel(r) != 0]
    if bad:
        raise H1NotZ(f"relators {bad} do not vanish under the abelianization map")
    report["mu"] = group.abel(pair.mu)
    report["lambda"] = group.abel(pair.lam)
    if report["mu"] != 1 or report["lambda"] != 0:
        raise H1NotZ(f"mu -> {report['mu']}, lambda -> {report['lambda']}")
    report["status"] = "pass"
    return report


# -- text format --------------------------------------------------------------

def to_text(group: PresentedGroup, pair: PeripheralPair) -> str:
    lines = ["gen: " + " ".join(group.generators)]
    lines += [f"rel: {r}" for r in group.relators]
    lines.append(f"mu: {pair.mu}")
    lines.append(f"lambda: {pair.lam}")
    lines.append("structure: " + json.dumps(group.structure, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> tuple[PresentedGroup, PeripheralPair]:
    gens = None
    rels = []
    mu = lam = None
    structure = {"kind": "generic"}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, body = line.partition(":")
        body = body.strip()
        if not sep:
            raise ParseError(f"bad presentation line {line!r}")
        if key == "gen":
            gens = tuple(body.split())
        elif key == "rel":
            rels.append(Word.parse(body))
        elif key == "mu":
            mu = Word.parse(body)
        elif key == "lambda":
            lam = Word.parse(body)
        elif key == "structure":
            structure = json.loads(body)
        else:
            raise ParseError(f"unknown presentation field {key!r}")
    if gens is None or mu is None or lam is None:
        raise ParseError("presentation needs gen:, mu: and lambda: lines")
    known = set(gens)
    for w in rels + [mu, lam]:
        if not w.generators() <= known:
            raise ParseError(f"word {w} uses undeclared generators")
    abel = compute_abelianization(gens, rels, mu)
    return PresentedGroup(gens, tuple(rels), structure, abel), PeripheralPair(mu, lam)
