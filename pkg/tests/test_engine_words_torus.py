import itertools
import random

import pytest

from knotmal.engine import perms as P
from knotmal.engine.quotients import FiniteQuotient
from knotmal.engine.torus import NormalForm, TorusGroup, torus_normal_form, torus_peripheral_membership
from knotmal.engine.words import Word, commutator, free_reduce
from knotmal.errors import UnknownGenerator

W = Word.parse


def test_free_reduce_examples():
    assert free_reduce(W("x x^-1")) == Word()
    assert free_reduce(W("x^2 y y^-1 x")) == W("x^3")
    w = W("x y^-1 x^2")
    assert free_reduce(w) == w
    assert free_reduce(free_reduce(W("a b b^-1 a^-1 c"))) == free_reduce(W("a b b^-1 a^-1 c"))


def test_word_text_round_trip():
    rng = random.Random(0)
    for _ in range(100):
        w = free_reduce(Word(tuple((rng.choice("xyz"), rng.choice([-3, -1, 1, 2])) for _ in range(8))))
        assert Word.parse(str(w)) == w
        assert len(free_reduce(w * ~w)) == 0


def test_torus_normal_form_examples():
    assert torus_normal_form(2, 3, W("x^2")) == NormalForm(1)
    assert torus_normal_form(2, 3, W("x^3")) == NormalForm(1, (("x", 1),))
    nf = torus_normal_form(2, 3, W("y^-1 x y x^-1"))
    assert nf.syllables
    with pytest.raises(UnknownGenerator):
        torus_normal_form(2, 3, W("x w"))


def test_commutator_nontrivial_in_s3():
    # x -> transposition, y -> 3-cycle satisfies x^2 = y^3 = 1
    q = FiniteQuotient(3, {"x": (1, 0, 2), "y": (1, 2, 0)})
    assert q.eval(W("x^2 y^-3")) == P.identity(3)
    assert q.eval(W("y^-1 x y x^-1")) != P.identity(3)


def test_peripheral_membership_examples():
    assert torus_peripheral_membership(2, 3, W("x y^-1")) == (1, 0)
    assert torus_peripheral_membership(2, 3, W("x^2")) == (0, 1)
    assert torus_peripheral_membership(2, 3, W("x")) is None


def test_x_outside_small_peripheral_window():
    # brute force: x differs from every z^k mu^m with |k| <= 3, |m| <= 6
    tg = TorusGroup(2, 3)
    target = tg.normal_form(W("x"))
    for k, m in itertools.product(range(-3, 4), range(-6, 7)):
        assert tg.normal_form(tg.z ** k * tg.mu ** m) != target


def _random_word(rng, gens, n):
    return free_reduce(Word(tuple((rng.choice(gens), rng.choice([-2, -1, 1, 2])) for _ in range(n))))


@pytest.mark.parametrize("p,q", [(2, 3), (3, 5), (2, -5), (-3, 4)])
def test_normal_form_is_congruence(p, q):
    tg = TorusGroup(p, q)
    rng = random.Random(p * 31 + q)
    z = tg.z
    assert tg.normal_form(W(f"x^{p} y^{-q}")).is_identity
    for _ in range(60):
        u, v = _random_word(rng, "xy", 6), _random_word(rng, "xy", 6)
        uv = tg.normal_form(u * v)
        assert uv == tg.normal_form(tg.to_word(tg.normal_form(u)) * tg.to_word(tg.normal_form(v)))
        assert tg.normal_form(u * z * ~u) == tg.normal_form(z)
        assert tg.normal_form(tg.to_word(tg.normal_form(u))) == tg.normal_form(u)


def test_peripheral_membership_recovers_coordinates():
    tg = TorusGroup(3, 5)
    for k, m in itertools.product(range(-2, 3), range(-4, 5)):
        assert tg.peripheral_membership(tg.z ** k * tg.mu ** m) == (m, k)


def test_commutator_helper():
    assert commutator(W("x"), W("y")) == W("x y x^-1 y^-1")
