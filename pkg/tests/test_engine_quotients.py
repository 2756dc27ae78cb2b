import itertools

import pytest

from knotmal.diagram import dt_to_diagram
from knotmal.engine import perms as P
from knotmal.engine.quotients import (
    cyclic_quotient,
    find_quotients,
    product_quotient,
    quotient_eval,
)
from knotmal.engine.words import Word
from knotmal.errors import UnknownGenerator
from knotmal.notation import parse_dt
from knotmal.presentation import torus_presentation, wirtinger


def _brute_force_classes(p, q, n):
    """Transitive non-abelian actions of <x,y | x^p = y^q> on n points, up to
    relabeling, by exhaustive search over S_n x S_n."""
    perms = list(itertools.permutations(range(n)))
    classes = set()
    for x in perms:
        xp = P.power(x, p)
        for y in perms:
            if xp != P.power(y, q) or P.compose(x, y) == P.compose(y, x):
                continue
            if len(P.orbit([x, y])) != n:
                continue
            key = min(
                (tuple(s[x[P.inverse(s)[i]]] for i in range(n)), tuple(s[y[P.inverse(s)[i]]] for i in range(n)))
                for s in perms
            )
            classes.add(key)
    return classes


@pytest.mark.parametrize("p,q,n", [(2, 3, 3), (2, 3, 4), (2, 3, 5), (3, 4, 4), (2, 5, 5)])
def test_quotient_search_complete_at_small_degree(p, q, n):
    group, _ = torus_presentation(p, q)
    expected = len(_brute_force_classes(p, q, n))
    found = [qq for qq in find_quotients(group, n, 1000, min_degree=n) if qq.degree == n]
    assert len(found) == expected


def test_trefoil_has_s3_quotient():
    group, _ = torus_presentation(2, 3)
    qs = find_quotients(group, 3, 10)
    assert any(q.degree == 3 for q in qs)
    assert all(q.degree >= 2 for q in qs)


def test_figure_eight_has_nonabelian_quotient():
    group, _ = wirtinger(dt_to_diagram(parse_dt("4 6 8 2")))
    qs = find_quotients(group, 5, 10)
    assert qs
    for q in qs:
        imgs = list(q.images.values())
        assert any(P.compose(a, b) != P.compose(b, a) for a in imgs for b in imgs)


def test_relators_vanish_and_search_is_deterministic():
    group, pair = wirtinger(dt_to_diagram(parse_dt("4 8 10 12 2 6")))
    first = find_quotients(group, 7, 20, seed=3)
    assert first == find_quotients(group, 7, 20, seed=3)
    for q in first:
        for r in group.relators:
            assert q.eval(r) == P.identity(q.degree)
        assert set(q.images) == set(group.generators)


def test_quotient_eval_basics():
    group, _ = torus_presentation(2, 3)
    q = find_quotients(group, 4, 1)[0]
    assert quotient_eval(q, Word()) == P.identity(q.degree)
    w = Word.parse("x y^-2 x")
    assert quotient_eval(q, w * ~w) == P.identity(q.degree)
    with pytest.raises(UnknownGenerator):
        quotient_eval(q, Word.parse("t"))


def test_cyclic_and_product_quotients_are_homomorphisms():
    group, _ = torus_presentation(3, 5)
    qs = [cyclic_quotient(group, 4), find_quotients(group, 5, 1)[0]]
    prod = product_quotient(*qs)
    for q in qs + [prod]:
        for r in group.relators:
            assert q.eval(r) == P.identity(q.degree)


def test_degree_cap_is_enforced():
    group, _ = torus_presentation(2, 3)
    with pytest.raises(ValueError):
        find_quotients(group, 10, 1)
