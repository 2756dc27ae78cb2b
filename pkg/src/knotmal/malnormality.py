"""Deciding whether the peripheral subgroup of a knot group is malnormal.

The peripheral subgroup P = <mu, lambda> fails to be malnormal exactly for
torus, cable and composite knots.  For those classes a witness triple
(g, p0, p1) with g p0 g^-1 = p1, p0 != 1 and g outside P is built from the
structure of the presentation and then checked independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import gcd

from .engine import perms as P
from .engine.amalgam import SumGroup
from .engine.quotients import cyclic_quotient, find_quotients, product_quotient
from .engine.torus import TorusGroup
from .engine.words import Word
from .errors import CheckFailed, ExcludedManifold, NotApplicable, UnsupportedFactor
from .notation import Cable, FromDiagram, KnotExpression, Sum, Torus, render
from .presentation import PeripheralPair, PresentedGroup, flatten_sum, present

MU, LAMBDA = Word.gen("mu"), Word.gen("lambda")
CERTIFICATE_SWEEP = 4
MIN_UNANIMITY = 25
ESCALATION_DEGREE = 8
ESCALATION_NODES = 2_000_000
CYCLIC_ORDERS = range(2, 13)


@dataclass(frozen=True)
class Slope:
    """Primitive (m, l) in the (meridian, longitude) basis, sign normalized."""

    m: int
    l: int  # noqa: E741

    def __post_init__(self):
        if self.m == 0 and self.l == 0:
            raise ValueError("(0, 0) is not a slope")
        d = gcd(self.m, self.l)
        m, l = self.m // d, self.l // d  # noqa: E741
        if l < 0 or (l == 0 and m < 0):
            m, l = -m, -l  # noqa: E741
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "l", l)

    def to_json(self) -> dict:
        return {"m": self.m, "l": self.l}


def slope_distance(s1: Slope, s2: Slope) -> int:
    return abs(s1.m * s2.l - s2.m * s1.l)


@dataclass(frozen=True)
class StructuralClass:
    kind: str  # torus | cable | composite | no-obstruction
    params: tuple[int, ...] = ()
    evidence: str = ""

    def __str__(self) -> str:
        if self.kind == "torus":
            return "Torus({},{})".format(*self.params)
        if self.kind == "cable":
            return "Cable({},{})".format(*self.params)
        if self.kind == "composite":
            return f"Composite({self.params[0]})"
        return f"NoObstruction({self.evidence})"

    @property
    def obstructed(self) -> bool:
        return self.kind != "no-obstruction"


@dataclass(frozen=True)
class Check:
    name: str
    method: str  # symbolic | quotient
    status: str  # pass | inconclusive
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "method": self.method, "status": self.status}


@dataclass(frozen=True)
class WitnessCertificate:
    knot: str
    klass: StructuralClass
    g: Word
    p0: Word  # over the symbols mu, lambda
    p1: Word
    annulus_slope: Slope
    checks: tuple[Check, ...] = ()


@dataclass(frozen=True)
class Decision:
    malnormal: str  # yes | no | no-with-witness | evidence-only
    rationale: str
    certificate: object = None


@dataclass(frozen=True)
class JsjSummary:
    boundary_piece_is_seifert: bool
    piece_description: str = ""
    solid_torus: bool = False
    thickened_torus: bool = False


# -- classification -----------------------------------------------------------

def classify(k: KnotExpression, census=None) -> StructuralClass:
    if isinstance(k, Sum):
        return StructuralClass("composite", (len(flatten_sum(k)),))
    if isinstance(k, Torus):
        return StructuralClass("torus", (k.p, k.q))
    if isinstance(k, Cable):
        return StructuralClass("cable", (k.a, k.b))
    if isinstance(k, FromDiagram) and k.name is not None:
        if census is None:
            from .census import default_census
            census = default_census()
        entry = census.lookup(k.name)
        if entry.geometric_type == "torus":
            return StructuralClass("torus", entry.params)
        if entry.geometric_type == "hyperbolic":
            return StructuralClass("no-obstruction", evidence="census: hyperbolic")
        return StructuralClass("no-obstruction", evidence="satellite: cable status unknown")
    return StructuralClass("no-obstruction", evidence="probe pending")


def witness_expression(k: KnotExpression, klass: StructuralClass) -> KnotExpression:
    """The expression whose presentation carries the witness.

    A census torus knot is replaced by its torus presentation; the table
    guarantees the two groups are isomorphic.
    """
    if isinstance(k, FromDiagram) and klass.kind == "torus":
        return Torus(*klass.params)
    return k


# -- witnesses ----------------------------------------------------------------

def synthesize_witness(k: KnotExpression, census=None) -> WitnessCertificate:
    klass = classify(k, census)
    knot = render(k)
    if klass.kind == "torus":
        p, q = klass.params
        z = LAMBDA * MU ** (p * q)
        return WitnessCertificate(knot, klass, Word.gen("x"), z, z, Slope(p * q, 1))
    if klass.kind == "cable":
        a, b = klass.params
        h = LAMBDA * MU ** (a * b)
        return WitnessCertificate(knot, klass, Word.gen("c"), h, h, Slope(a * b, 1))
    if klass.kind == "composite":
        first = flatten_sum(k)[0]
        _, pair = present(first)
        lam1 = pair.lam.rename({g: "f1_" + g for g in pair.lam.generators()})
        return WitnessCertificate(knot, klass, lam1, MU, MU, Slope(1, 0))
    raise NotApplicable(f"{knot} has no structural obstruction to malnormality")


def _symbolic_engine(group: PresentedGroup):
    s = group.structure
    if s.get("kind") == "torus":
        tg = TorusGroup(s["p"], s["q"], s["x"], s["y"])
        lam_shift = s["p"] * s["q"]

        def member(w):
            hit = tg.peripheral_membership(w)
            # z^k mu^m = mu^(m + pq k) lambda^k
            return None if hit is None else (hit[0] + lam_shift * hit[1], hit[1])

        return (lambda w: tg.normal_form(w).is_identity), member
    if s.get("kind") == "sum":
        try:
            sg = SumGroup(s)
        except UnsupportedFactor:
            return None
        return (lambda w: sg.normal_form(w) == sg.normal_form(Word())), sg.peripheral_membership
    return None


def _separates(q, g: Word, pair: PeripheralPair):
    sub = P.generated_subgroup([q.eval(pair.mu), q.eval(pair.lam)], q.degree)
    return None if q.eval(g) in sub else len(sub)


def _subgroup_certificate(group, pools, g: Word, pair: PeripheralPair):
    """First quotient whose image of g avoids the image of P.

    Single quotients are tried first, then products with cyclic quotients;
    the image of P in a product can shrink below the product of its images.
    """
    cyclic = [cyclic_quotient(group, m) for m in CYCLIC_ORDERS]
    for pool in pools:
        for q in pool:
            order = _separates(q, g, pair)
            if order is not None:
                return q, order
        for q in pool:
            for cq in cyclic:
                prod = product_quotient(q, cq)
                order = _separates(prod, g, pair)
                if order is not None:
                    return prod, order
    return None


def _cable_space_argument(group: PresentedGroup, pair: PeripheralPair, g: Word) -> str | None:
    """Symbolic proof that the section curve c is not peripheral.

    The presentation is an amalgam of the cable space C and the companion
    group over the companion torus, which embeds on both sides, so C embeds.
    Modulo the central fibre h, C is Z/a * Z(c) and P maps to <q c>; c has
    free-product length 1 while (q c)^k has length 2|k|.
    """
    s = group.structure
    if s.get("kind") != "cable" or g != Word.gen(s["c"]):
        return None
    q, c, h = (Word.gen(s[k]) for k in ("q", "c", "h"))
    if pair.mu != q * c or pair.lam != h * pair.mu ** (-s["a"] * s["b"]):
        return None
    return "cable space modulo its fibre is a free product; c is not a power of q c"


def _sum_argument(group: PresentedGroup, pair: PeripheralPair, g: Word) -> str | None:
    """Symbolic proof that the first factor's longitude is not peripheral.

    The group is an amalgam of the factor groups over <mu>.  A nontrivial
    knot's longitude is nontrivial with zero abelianization, so it lies
    outside <mu> in its own factor.  Hence mu^i (lambda_1 ... lambda_r)^j is
    a reduced product of length r|j| >= 2 for j != 0, never lambda_1.
    """
    s = group.structure
    if s.get("kind") != "sum" or len(s["factors"]) < 2:
        return None
    lams = [Word.parse(f["lambda"]) for f in s["factors"]]
    if g != lams[0] or pair.lam != Word(tuple(x for lam in lams for x in lam.letters)).reduced():
        return None
    return "amalgam over the meridian: g has length 1, peripheral non-meridians have length >= 2"


def _quotient_pools(group, budget, seed, degree_cap):
    yield find_quotients(group, degree_cap, CERTIFICATE_SWEEP * budget, seed)
    if degree_cap < ESCALATION_DEGREE:
        yield find_quotients(group, ESCALATION_DEGREE, CERTIFICATE_SWEEP * budget, seed,
                             node_budget=ESCALATION_NODES)


def verify_witness(group: PresentedGroup, pair: PeripheralPair, w: WitnessCertificate,
                   quotient_budget: int = 50, *, seed: int = 0,
                   degree_cap: int = 7) -> WitnessCertificate:
    """Return ``w`` with its three checks filled in.

    Raises CheckFailed when a check is refuted.  A check that can neither be
    proved nor refuted within budget is reported as inconclusive.
    """
    p0, p1 = pair.expand(w.p0), pair.expand(w.p1)
    identity = w.g * p0 * ~w.g * ~p1
    engine = _symbolic_engine(group)

    checks = []
    if engine is not None:
        is_trivial, member = engine
        if not is_trivial(identity):
            raise CheckFailed("conjugation", f"{identity} is not trivial")
        checks.append(Check("conjugation", "symbolic", "pass", "normal form"))
        if is_trivial(p0):
            raise CheckFailed("p0-nontrivial", f"{p0} is trivial")
        checks.append(Check("p0-nontrivial", "symbolic", "pass", "normal form"))
        hit = member(w.g)
        if hit is not None:
            raise CheckFailed("g-outside-P", f"g = mu^{hit[0]} lambda^{hit[1]}")
        checks.append(Check("g-outside-P", "symbolic", "pass", "peripheral membership"))
        return replace(w, checks=tuple(checks))

    qs = find_quotients(group, degree_cap, quotient_budget, seed) if quotient_budget else []
    if qs and len(qs) < min(quotient_budget, MIN_UNANIMITY) and degree_cap < ESCALATION_DEGREE:
        qs = find_quotients(group, ESCALATION_DEGREE, quotient_budget, seed,
                            node_budget=ESCALATION_NODES)
    bad = [i for i, q in enumerate(qs) if q.eval(identity) != P.identity(q.degree)]
    if bad:
        raise CheckFailed("conjugation", f"nontrivial in quotient {bad[0]}")
    checks.append(Check("conjugation", "quotient", "pass" if qs else "inconclusive",
                        f"trivial in all {len(qs)} quotients"))
    if group.abel(p0) != 0:
        checks.append(Check("p0-nontrivial", "symbolic", "pass", f"abelianization {group.abel(p0)}"))
    elif any(q.eval(p0) != P.identity(q.degree) for q in qs):
        checks.append(Check("p0-nontrivial", "quotient", "pass", "nontrivial image"))
    else:
        checks.append(Check("p0-nontrivial", "quotient", "inconclusive", "no separating quotient"))
    cert = None
    if quotient_budget:
        pools = itertools.chain([qs], _quotient_pools(group, quotient_budget, seed, degree_cap))
        cert = _subgroup_certificate(group, pools, w.g, pair)
    if cert is not None:
        q, order = cert
        checks.append(Check("g-outside-P", "quotient", "pass",
                            f"degree {q.degree} quotient: image of P has order {order}"))
    elif (reason := _cable_space_argument(group, pair, w.g) or _sum_argument(group, pair, w.g)) is not None:
        checks.append(Check("g-outside-P", "symbolic", "pass", reason))
    else:
        checks.append(Check("g-outside-P", "quotient", "inconclusive", "no separating quotient"))
    return replace(w, checks=tuple(checks))


# -- decisions ----------------------------------------------------------------

def decide_malnormality(k: KnotExpression, census=None, *, quotient_budget: int = 50,
                        seed: int = 0, degree_cap: int = 7, probe_bounds=None) -> Decision:
    klass = classify(k, census)
    if klass.obstructed:
        cert = synthesize_witness(k, census)
        group, pair = present(witness_expression(k, klass))
        cert = verify_witness(group, pair, cert, quotient_budget, seed=seed, degree_cap=degree_cap)
        return Decision("no-with-witness", f"{klass}: peripheral subgroup is not malnormal", cert)
    if klass.evidence == "census: hyperbolic":
        return Decision("yes", "hyperbolic knot: neither torus, cable nor composite")
    from .probe import ProbeBounds, probe_malnormality
    group, pair = present(k)
    bounds = probe_bounds or ProbeBounds(quotients=quotient_budget, seed=seed)
    report = probe_malnormality(group, pair, bounds)
    return Decision("evidence-only", f"{klass}: class not certified; bounded probe attached", report)


def decide_peripheral_malnormality_jsj(j: JsjSummary) -> Decision:
    if j.solid_torus or j.thickened_torus:
        which = "solid torus" if j.solid_torus else "thickened torus"
        raise ExcludedManifold(f"{which}: P is the whole group and is trivially malnormal")
    if j.boundary_piece_is_seifert:
        return Decision("no", f"boundary piece is Seifert fibred: {j.piece_description}".rstrip(": "))
    return Decision("yes", f"boundary piece is not Seifert fibred: {j.piece_description}".rstrip(": "))


# -- serialization ------------------------------------------------------------

def document(knot: str, klass, group: PresentedGroup, pair: PeripheralPair, *,
             witness: WitnessCertificate | None = None, bounds=None, survivors=None) -> dict:
    """The certificate JSON document shared by witnesses and probe reports."""
    return {
        "knot": knot,
        "class": str(klass),
        "generators": list(group.generators),
        "relators": [str(r) for r in group.relators],
        "mu": str(pair.mu),
        "lambda": str(pair.lam),
        "g": str(witness.g) if witness else None,
        "p0": str(witness.p0) if witness else None,
        "p1": str(witness.p1) if witness else None,
        "annulus_slope": witness.annulus_slope.to_json() if witness else None,
        "checks": [c.to_json() for c in witness.checks] if witness else [],
        "bounds": bounds,
        "survivors": survivors,
    }


def witness_document(w: WitnessCertificate, group: PresentedGroup, pair: PeripheralPair) -> dict:
    return document(w.knot, w.klass, group, pair, witness=w)


def witness_from_document(doc: dict) -> WitnessCertificate:
    s = doc["annulus_slope"]
    return WitnessCertificate(doc["knot"], parse_class(doc["class"]), Word.parse(doc["g"]),
                              Word.parse(doc["p0"]), Word.parse(doc["p1"]), Slope(s["m"], s["l"]))


def parse_class(text: str) -> StructuralClass:
    name, _, rest = text.partition("(")
    body = rest[:-1]
    if name == "NoObstruction":
        return StructuralClass("no-obstruction", evidence=body)
    params = tuple(int(v) for v in body.split(","))
    return StructuralClass({"Torus": "torus", "Cable": "cable", "Composite": "composite"}[name], params)
