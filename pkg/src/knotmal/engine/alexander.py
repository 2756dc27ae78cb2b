"""Laurent polynomials in t and Alexander polynomials by Fox calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from sympy import Poly, symbols

from ..errors import NotDeficiencyOne
from .words import Word

_T = symbols("t")


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial; ``coeffs`` maps exponent -> nonzero coefficient."""

    coeffs: dict[int, int] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: c for e, c in self.coeffs.items() if c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs: list[int], low: int = 0) -> "LaurentPolynomial":
        return cls({low + i: c for i, c in enumerate(coeffs)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def low(self) -> int:
        return min(self.coeffs)

    @property
    def high(self) -> int:
        return max(self.coeffs)

    def to_list(self) -> list[int]:
        if not self.coeffs:
            return []
        return [self.coeffs.get(e, 0) for e in range(self.low, self.high + 1)]

    def substitute_power(self, a: int) -> "LaurentPolynomial":
        """p(t) -> p(t^a)."""
        return LaurentPolynomial({e * a: c for e, c in self.coeffs.items()})

    def normalized(self) -> "LaurentPolynomial":
        """Representative up to +-t^k: lowest exponent 0, leading coefficient positive."""
        if not self.coeffs:
            return self
        low = self.low
        sign = 1 if self.coeffs[self.high] > 0 else -1
        return LaurentPolynomial({e - low: sign * c for e, c in self.coeffs.items()})

    def equivalent(self, other: "LaurentPolynomial") -> bool:
        return self.normalized() == other.normalized()

    def exact_div(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.coeffs)
        quot: dict[int, int] = {}
        lead_e, lead_c = other.high, other.coeffs[other.high]
        floor = (self.low - other.low) if rem else 0
        while rem:
            top = max(rem)
            shift = top - lead_e
            c, r = divmod(rem[top], lead_c)
            if r or shift < floor:
                raise ArithmeticError("polynomial division is not exact")
            quot[shift] = c
            for e, oc in other.coeffs.items():
                v = rem.get(e + shift, 0) - c * oc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return LaurentPolynomial(quot)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def _to_sympy(self) -> Poly:
        low = self.low
        return Poly(sum(c * _T ** (e - low) for e, c in self.coeffs.items()), _T, domain="ZZ")

    @classmethod
    def _from_sympy(cls, poly: Poly) -> "LaurentPolynomial":
        return cls({m[0]: int(c) for m, c in poly.terms()})


ONE = LaurentPolynomial({0: 1})
ZERO = LaurentPolynomial({})


def torus_alexander(p: int, q: int) -> LaurentPolynomial:
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) for |p|, |q|."""
    p, q = abs(p), abs(q)
    t_minus = lambda n: LaurentPolynomial({n: 1, 0: -1})  # noqa: E731
    num = t_minus(p * q) * t_minus(1)
    return num.exact_div(t_minus(p) * t_minus(q)).normalized()


def fox_derivative(w: Word, gen: str, abel: dict[str, int]) -> LaurentPolynomial:
    """d w / d gen pushed through the abelianization gen -> t^abel[gen]."""
    out: dict[int, int] = {}
    prefix = 0
    for g, e in w.letters:
        a = abel[g]
        if e > 0:
            if g == gen:
                for i in range(e):
                    ex = prefix + i * a
                    out[ex] = out.get(ex, 0) + 1
            prefix += e * a
        else:
            for i in range(-e):
                prefix -= a
                if g == gen:
                    out[prefix] = out.get(prefix, 0) - 1
    return LaurentPolynomial(out)


def fox_jacobian(relators, generators, abel) -> list[list[LaurentPolynomial]]:
    return [[fox_derivative(r, g, abel) for g in generators] for r in relators]


def _det(matrix: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    """Fraction-free Bareiss elimination over Z[t, 1/t]."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev) if not num.is_zero() else ZERO
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def polynomial_gcd(polys: list[LaurentPolynomial]) -> LaurentPolynomial:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return ZERO
    g = nonzero[0]._to_sympy()
    for p in nonzero[1:]:
        g = g.gcd(p._to_sympy())
    return LaurentPolynomial._from_sympy(g).normalized()


def eliminate_generators(generators, relators, max_letters: int = 400, keep: int = 2,
                         max_value: int | None = None):
    """Tietze moves: drop a generator that a relator expresses in the others.

    Returns ``(generators, relators, definitions)`` where ``definitions`` maps
    each dropped generator to a word in the surviving ones.  Homomorphisms
    and Alexander ideals are unchanged by these moves.
    """
    gens = list(generators)
    rels = [r.reduced() for r in relators]
    defs: dict[str, Word] = {}
    changed = True
    while changed and len(gens) > keep:
        changed = False
        for ri, rel in enumerate(rels):
            for g in gens:
                occ = [i for i, (h, _) in enumerate(rel.letters) if h == g]
                if len(occ) != 1 or abs(rel.letters[occ[0]][1]) != 1:
                    continue
                i = occ[0]
                before, after = Word(rel.letters[:i]), Word(rel.letters[i + 1:])
                value = ~before * ~after
                if rel.letters[i][1] == -1:
                    value = ~value
                if max_value is not None and value.length > max_value:
                    continue
                new_rels = [r.substitute({g: value}) for j, r in enumerate(rels) if j != ri]
                if any(r.length > max_letters for r in new_rels):
                    continue
                rels = [r for r in new_rels if r.letters]
                defs = {h: w.substitute({g: value}) for h, w in defs.items()}
                defs[g] = value
                gens.remove(g)
                changed = True
                break
            if changed:
                break
    return gens, rels, defs


def alexander_polynomial(presentation) -> LaurentPolynomial:
    """Generator of the first elementary ideal of the Fox matrix, normalized.

    For a deficiency-one presentation the (n-1)-minors are the column
    deletions; presentations with more relators (cable presentations) are
    first shrunk by Tietze moves and all (n-1)-minors are used.
    """
    gens = list(presentation.generators)
    rels = list(presentation.relators)
    abel = presentation.abelianization
    if len(rels) < len(gens) - 1:
        raise NotDeficiencyOne(f"{len(gens)} generators but only {len(rels)} relators")
    gens, rels, _ = eliminate_generators(gens, rels)
    if len(rels) < len(gens) - 1:
        raise NotDeficiencyOne("relators became dependent after elimination")
    jac = fox_jacobian(rels, gens, abel)
    n = len(gens)
    minors = []
    for rows in combinations(range(len(rels)), n - 1):
        for skip in range(n):
            sub = [[jac[r][c] for c in range(n) if c != skip] for r in rows]
            minors.append(_det(sub))
    return polynomial_gcd(minors)
