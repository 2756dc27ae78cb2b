from math import gcd

import pytest

from knotmal.diagram import braid_to_diagram, dt_to_diagram
from knotmal.engine import perms as P
from knotmal.engine.amalgam import SumGroup, amalgam_normal_form
from knotmal.engine.quotients import find_quotients
from knotmal.engine.torus import TorusGroup
from knotmal.engine.words import Word, commutator
from knotmal.errors import H1NotZ, UnsupportedFactor
from knotmal.notation import Cable, FromDiagram, Sum, Torus, parse_braid, parse_dt
from knotmal.presentation import (
    PresentedGroup,
    PeripheralPair,
    abelianization_check,
    cable_coefficients,
    parse_presentation,
    present,
    to_text,
    torus_presentation,
    wirtinger,
)

W = Word.parse
EXPRESSIONS = [
    Torus(2, 3), Torus(3, -5), Sum((Torus(2, 3), Torus(2, -3))),
    Sum((Torus(2, 3), Torus(2, 5), Torus(3, 4))), Cable(2, 3, Torus(2, 3)),
    Cable(3, -2, Torus(2, 5)), Cable(2, 5, Cable(2, 3, Torus(2, 3))),
    FromDiagram(parse_dt("4 6 8 2")), FromDiagram(parse_braid("B3: 1 -2 1 -2")),
    Sum((Torus(2, 3), FromDiagram(parse_dt("4 6 8 2")))),
]


def test_wirtinger_shapes():
    g, pair = wirtinger(dt_to_diagram(parse_dt("4 6 2")))
    assert len(g.generators) == 3 and len(g.relators) == 2
    assert g.abel(pair.lam) == 0 and g.abel(pair.mu) == 1
    assert set(g.abelianization.values()) == {1}
    g, pair = wirtinger(dt_to_diagram(parse_dt("4 6 8 2")))
    assert len(g.generators) == 4 and len(g.relators) == 3


def test_torus_presentation_examples():
    g, pair = torus_presentation(2, 3)
    assert pair.mu == W("x y^-1")
    assert g.abelianization == {"x": 3, "y": 2}
    assert g.abel(pair.lam) == 0
    g, pair = torus_presentation(2, 5)
    assert pair.mu == W("x y^-2")
    assert g.abel(pair.mu) == 1


def test_sum_shapes():
    g, _ = present(Sum((Torus(2, 3), Torus(2, 3))))
    assert (len(g.generators), len(g.relators)) == (4, 3)
    g, _ = present(Sum((Torus(2, 3), Torus(2, -3))))
    assert (len(g.generators), len(g.relators)) == (4, 3)
    g, _ = present(Sum((Torus(2, 3),) * 3))
    assert (len(g.generators), len(g.relators)) == (6, 5)


@pytest.mark.parametrize("expr", EXPRESSIONS, ids=str)
def test_constructors_pass_abelianization(expr):
    g, pair = present(expr)
    report = abelianization_check(g, pair)
    assert report["status"] == "pass"


@pytest.mark.parametrize("expr", EXPRESSIONS, ids=str)
def test_peripheral_pair_commutes_in_quotients(expr):
    g, pair = present(expr)
    for q in find_quotients(g, 6, 20):
        assert q.eval(commutator(pair.mu, pair.lam)) == P.identity(q.degree)


def test_handmade_presentation_rejected():
    # meridian-style abelianization: the relator x y does not vanish
    g = PresentedGroup(("x", "y"), (W("x y"),), abelianization={"x": 1, "y": 1})
    with pytest.raises(H1NotZ):
        abelianization_check(g, PeripheralPair(W("x"), Word()))
    # H1 = Z/2
    g = PresentedGroup(("x", "y"), (W("x y"), W("x y^-1")), abelianization={"x": 1, "y": 1})
    with pytest.raises(H1NotZ):
        abelianization_check(g, PeripheralPair(W("x"), Word()))


def test_torus_fiber_identity():
    for p, q in [(2, 3), (3, 5), (2, -7)]:
        g, pair = torus_presentation(p, q)
        tg = TorusGroup(p, q)
        assert tg.equal(pair.lam * pair.mu ** (p * q), W(f"x^{p}"))


def test_sum_longitude_commutes_with_meridian():
    g, pair = present(Sum((Torus(2, 3), Torus(3, 4))))
    sg = SumGroup(g.structure)
    for f in g.structure["factors"]:
        lam_i = W(f["lambda"])
        assert amalgam_normal_form(g, commutator(lam_i, pair.mu)).in_meridian_subgroup
        assert amalgam_normal_form(g, commutator(lam_i, pair.mu)).e == 0
    assert sg.normal_form(W("f1_x f1_y^-1 f2_y f2_x^-1")) == sg.normal_form(Word())


def test_amalgam_examples():
    g, pair = present(Sum((Torus(2, 3), Torus(2, 3))))
    mu1, mu2 = W("f1_x f1_y^-1"), W("f2_x f2_y^-1")
    nf = amalgam_normal_form(g, mu1 * ~mu2)
    assert nf.e == 0 and not nf.syllables
    lam1 = W(g.structure["factors"][0]["lambda"])
    nf = amalgam_normal_form(g, lam1)
    assert len(nf.syllables) == 1 and nf.syllables[0][0] == 0


def test_amalgam_trivial_implies_quotient_trivial():
    g, pair = present(Sum((Torus(2, 3), Torus(2, 5))))
    sg = SumGroup(g.structure)
    qs = find_quotients(g, 6, 15)
    words = [commutator(W(f["lambda"]), pair.mu) for f in g.structure["factors"]]
    words += [pair.mu * W("f2_x^2") * ~pair.mu * W("f2_x^-2"), W("f1_x^2 f1_y^-3")]
    for w in words:
        if sg.normal_form(w) == sg.normal_form(Word()):
            assert all(q.eval(w) == P.identity(q.degree) for q in qs)


def test_amalgam_needs_torus_factors():
    g, _ = present(Sum((Torus(2, 3), FromDiagram(parse_dt("4 6 8 2")))))
    with pytest.raises(UnsupportedFactor):
        SumGroup(g.structure)


def test_cable_coefficients():
    for a in (2, 3):
        for b in range(-7, 8):
            if gcd(a, b) != 1:
                continue
            r, s = cable_coefficients(a, b)
            assert a * s - b * r == 1


def test_cable_fiber_and_center():
    g, pair = present(Cable(2, 3, Torus(2, 3)))
    s = g.structure
    h = W(s["h"])
    qs = find_quotients(g, 6, 25)
    assert qs
    for q in qs:
        assert q.eval(h * pair.mu ** -(s["a"] * s["b"]) * ~pair.lam) == P.identity(q.degree)
        assert q.eval(commutator(h, W(s["q"]))) == P.identity(q.degree)
        assert q.eval(commutator(h, W(s["c"]))) == P.identity(q.degree)


@pytest.mark.parametrize("expr", EXPRESSIONS, ids=str)
def test_text_round_trip(expr):
    g, pair = present(expr)
    text = to_text(g, pair)
    g2, pair2 = parse_presentation(text)
    assert to_text(g2, pair2) == text
    assert g2.generators == g.generators and g2.relators == g.relators and pair2 == pair


def test_braid_wirtinger_longitude():
    g, pair = wirtinger(braid_to_diagram(parse_braid("B2: 1 1 1 1 1")))
    assert g.abel(pair.lam) == 0
