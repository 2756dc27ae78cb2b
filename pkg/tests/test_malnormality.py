import random

import pytest

from knotmal.engine.words import Word
from knotmal.errors import CheckFailed, ExcludedManifold, NotApplicable, UnknownTableName
from knotmal.malnormality import (
    LAMBDA,
    MU,
    JsjSummary,
    Slope,
    StructuralClass,
    WitnessCertificate,
    classify,
    decide_malnormality,
    decide_peripheral_malnormality_jsj,
    parse_class,
    slope_distance,
    synthesize_witness,
    verify_witness,
    witness_document,
    witness_expression,
    witness_from_document,
)
from knotmal.notation import parse_knot_expr
from knotmal.presentation import present

K = parse_knot_expr


def test_slope_normalization():
    assert Slope(-2, -4) == Slope(1, 2)
    assert Slope(-3, 0) == Slope(1, 0)
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_slope_distance_examples():
    assert slope_distance(Slope(1, 0), Slope(0, 1)) == 1
    assert slope_distance(Slope(5, 3), Slope(5, 3)) == 0
    assert slope_distance(Slope(1, 0), Slope(6, 1)) == 1


def test_slope_distance_unimodular_invariance():
    rng = random.Random(11)
    for _ in range(200):
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        # build a determinant one matrix from two elementary moves
        m = [[1, a], [0, 1]]
        m = [[m[0][0], m[0][1]], [m[1][0] + b * m[0][0], m[1][1] + b * m[0][1]]]
        s1 = Slope(rng.randint(-9, 9) or 1, rng.randint(-9, 9))
        s2 = Slope(rng.randint(-9, 9), rng.randint(-9, 9) or 1)

        def move(s):
            return Slope(m[0][0] * s.m + m[0][1] * s.l, m[1][0] * s.m + m[1][1] * s.l)

        assert slope_distance(move(s1), move(s2)) == slope_distance(s1, s2)
        assert slope_distance(s1, s2) == slope_distance(s2, s1)
        assert (slope_distance(s1, s2) == 0) == (s1 == s2)


def test_classify_examples():
    assert str(classify(K("torus(2,3)"))) == "Torus(2,3)"
    assert str(classify(K("sum(torus(2,3), dt[4 6 8 2])"))) == "Composite(2)"
    assert str(classify(K("table(4_1)"))) == "NoObstruction(census: hyperbolic)"
    assert str(classify(K("table(8_19)"))) == "Torus(3,4)"
    assert str(classify(K("cable(2,3; torus(2,5))"))) == "Cable(2,3)"
    assert str(classify(K("dt[4 6 8 2]"))) == "NoObstruction(probe pending)"
    assert str(classify(K("sum(sum(torus(2,3), torus(2,5)), torus(3,4))"))) == "Composite(3)"
    with pytest.raises(UnknownTableName):
        K("table(99_999)")


def test_class_text_round_trip():
    for text in ["Torus(2,-3)", "Cable(3,4)", "Composite(3)", "NoObstruction(census: hyperbolic)"]:
        assert str(parse_class(text)) == text


def test_synthesized_witnesses():
    w = synthesize_witness(K("torus(2,3)"))
    assert (w.g, w.p0, w.p1, w.annulus_slope) == (Word.gen("x"), LAMBDA * MU ** 6, LAMBDA * MU ** 6, Slope(6, 1))
    w = synthesize_witness(K("sum(torus(2,3), torus(2,3))"))
    assert w.p0 == w.p1 == MU and w.annulus_slope == Slope(1, 0)
    g, _ = present(K("sum(torus(2,3), torus(2,3))"))
    assert w.g == Word.parse(g.structure["factors"][0]["lambda"])
    w = synthesize_witness(K("cable(2,3; torus(2,5))"))
    assert (w.g, w.p0, w.annulus_slope) == (Word.gen("c"), LAMBDA * MU ** 6, Slope(6, 1))
    with pytest.raises(NotApplicable):
        synthesize_witness(K("table(4_1)"))


def _verified(text, **kw):
    k = K(text)
    w = synthesize_witness(k)
    g, pair = present(witness_expression(k, w.klass))
    return verify_witness(g, pair, w, **kw)


def test_verify_torus_symbolic():
    w = _verified("torus(2,3)")
    assert [(c.name, c.method, c.status) for c in w.checks] == [
        ("conjugation", "symbolic", "pass"), ("p0-nontrivial", "symbolic", "pass"),
        ("g-outside-P", "symbolic", "pass")]


def test_verify_granny_symbolic():
    w = _verified("sum(torus(2,3), torus(2,3))")
    assert {c.method for c in w.checks} == {"symbolic"}
    assert {c.status for c in w.checks} == {"pass"}


def test_verify_cable_by_quotients():
    w = _verified("cable(2,3; torus(2,3))")
    checks = {c.name: c for c in w.checks}
    assert checks["conjugation"].method == "quotient" and checks["conjugation"].status == "pass"
    assert int(checks["conjugation"].detail.split()[-2]) >= 25
    assert checks["g-outside-P"].method == "quotient" and checks["g-outside-P"].status == "pass"


def test_verify_mixed_sum_by_quotients():
    w = _verified("sum(torus(2,3), dt[4 6 8 2])")
    assert {c.status for c in w.checks} == {"pass"}


def test_census_torus_witness_uses_torus_group():
    w = _verified("table(8_19)")
    assert w.klass == StructuralClass("torus", (3, 4))
    assert {c.method for c in w.checks} == {"symbolic"}


def test_verify_refutes_bad_witnesses():
    k = K("torus(2,3)")
    g, pair = present(k)
    good = synthesize_witness(k)
    with pytest.raises(CheckFailed):
        verify_witness(g, pair, WitnessCertificate(good.knot, good.klass, Word.gen("x"), MU, MU, good.annulus_slope))
    with pytest.raises(CheckFailed):
        verify_witness(g, pair, WitnessCertificate(good.knot, good.klass, Word.parse("x^2"), good.p0, good.p1,
                                                   good.annulus_slope))
    g, pair = present(K("cable(2,3; torus(2,3))"))
    cw = synthesize_witness(K("cable(2,3; torus(2,3))"))
    with pytest.raises(CheckFailed):
        verify_witness(g, pair, WitnessCertificate(cw.knot, cw.klass, Word.gen("c"), MU, MU, cw.annulus_slope))


def test_zero_budget_is_inconclusive_not_passing():
    k = K("cable(2,3; torus(2,3))")
    g, pair = present(k)
    w = verify_witness(g, pair, synthesize_witness(k), 0)
    status = {c.name: c.status for c in w.checks}
    assert status["conjugation"] == "inconclusive"


def test_decide_examples():
    assert decide_malnormality(K("torus(2,3)")).malnormal == "no-with-witness"
    assert decide_malnormality(K("sum(torus(2,3), torus(2,5))")).malnormal == "no-with-witness"
    d = decide_malnormality(K("table(4_1)"))
    assert d.malnormal == "yes" and d.certificate is None


@pytest.mark.parametrize("text", ["torus(3,-4)", "cable(3,2; torus(2,3))", "sum(torus(2,3), torus(2,-3))",
                                  "table(4_1)", "table(5_1)"])
def test_decision_matches_classification(text):
    k = K(text)
    assert (decide_malnormality(k).malnormal == "no-with-witness") == classify(k).obstructed


def test_jsj_truth_table():
    assert decide_peripheral_malnormality_jsj(JsjSummary(True, "cable space")).malnormal == "no"
    assert decide_peripheral_malnormality_jsj(JsjSummary(False, "hyperbolic")).malnormal == "yes"
    with pytest.raises(ExcludedManifold):
        decide_peripheral_malnormality_jsj(JsjSummary(False, solid_torus=True))
    with pytest.raises(ExcludedManifold):
        decide_peripheral_malnormality_jsj(JsjSummary(True, thickened_torus=True))


def test_witness_document_round_trip():
    k = K("cable(3,2; torus(2,5))")
    w = synthesize_witness(k)
    g, pair = present(k)
    doc = witness_document(w, g, pair)
    assert set(doc) == {"knot", "class", "generators", "relators", "mu", "lambda", "g", "p0", "p1",
                        "annulus_slope", "checks", "bounds", "survivors"}
    back = witness_from_document(doc)
    assert (back.g, back.p0, back.p1, back.annulus_slope, back.klass) == (w.g, w.p0, w.p1, w.annulus_slope, w.klass)
