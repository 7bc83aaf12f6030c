import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oddcommute.catalog import alternating, symmetric, frobenius
from oddcommute.perm import ops
from oddcommute.perm.group import BudgetExceeded, GroupHandle
from oddcommute.perm.permutation import (Permutation, compose_rows, conjugate_rows,
                                         element_order, invert_rows, orders_rows, power_rows)

import oracles

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n))))


def P(text, n):
    return Permutation.parse(text, n)


@given(perms, st.data())
def test_product_applies_left_factor_first(a, data):
    b = data.draw(st.permutations(list(range(len(a)))))
    ab = Permutation(a) * Permutation(b)
    assert tuple(ab) == oracles.compose(tuple(a), tuple(b))


@given(perms)
def test_inverse_and_order(a):
    x = Permutation(a)
    assert (x * ~x).is_identity()
    assert x.order() == oracles.order(tuple(a)) == element_order(x)
    assert (x ** x.order()).is_identity()


@given(perms, st.data())
def test_conjugation_convention(a, data):
    g = data.draw(st.permutations(list(range(len(a)))))
    x, g = Permutation(a), Permutation(g)
    assert x ** g == ~g * x * g
    assert tuple(x ** g) == oracles.conj(tuple(a), tuple(g))


@given(perms)
def test_cycle_string_round_trip(a):
    x = Permutation(a)
    assert Permutation.parse(x.to_cycle_string(), len(a)) == x


def test_parse_rejects_garbage():
    for bad in ("(1,2", "(1,1)", "(0,1)", "(1,9)", "1,2"):
        with pytest.raises(ValueError):
            Permutation.parse(bad, 5)
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


@pytest.mark.parametrize("x, expected", [("()", 1), ("(1,2,3)", 3), ("(1,2)(3,4,5)", 6)])
def test_element_order_examples(x, expected):
    assert P(x, 8).order() == expected


@given(st.lists(st.permutations(list(range(7))), min_size=1, max_size=20), st.integers(-5, 5))
def test_row_helpers_agree_with_scalar_ops(rows, k):
    a = np.array(rows)
    g = np.array(rows[0])
    xs = [Permutation(r) for r in rows]
    assert [tuple(r) for r in compose_rows(a, a[::-1])] == \
        [tuple(x * y) for x, y in zip(xs, xs[::-1])]
    assert [tuple(r) for r in invert_rows(a)] == [tuple(~x) for x in xs]
    assert [tuple(r) for r in power_rows(a, k)] == [tuple(x ** k) for x in xs]
    assert [tuple(r) for r in conjugate_rows(a, g)] == [tuple(x ** Permutation(g)) for x in xs]
    assert list(orders_rows(a)) == [x.order() for x in xs]


# -- groups ------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_enumeration_matches_order_and_membership(n):
    G = alternating(n)
    elements = list(G.enumerate_elements(chunk=17))
    assert len(elements) == G.order == math.factorial(n) // 2
    assert len({x.key() for x in elements}) == G.order
    assert all(G.contains(x) for x in elements)
    assert {tuple(x) for x in elements} == oracles.closure(G.generators, n)


def test_rank_unrank_bijection():
    G = symmetric(6)
    ranks, ok = G.rank_rows(G.elements())
    assert ok.all() and (ranks == np.arange(G.order)).all()
    assert G.element(0).is_identity()


def test_membership_rejects_outsiders():
    G = alternating(6)
    assert not G.contains(P("(1,2)", 6))
    assert G.contains(P("(1,2)(3,4)", 6))


def test_budget_is_enforced():
    G = GroupHandle(8, alternating(8).generators, element_budget=1000)
    with pytest.raises(BudgetExceeded):
        G.elements()
    with pytest.raises(BudgetExceeded):
        next(G.enumerate_elements())


def test_generated_subgroup_examples():
    G = alternating(6)
    assert ops.generated_subgroup(G, []).order == 1
    assert ops.generated_subgroup(G, G.generators).order == G.order
    H = ops.generated_subgroup(G, [P("(1,2,3)", 6), P("(4,5,6)", 6)])
    assert H.order == 9
    assert GroupHandle(6, H.generators).order == 9
    with pytest.raises(ValueError):
        ops.generated_subgroup(G, [P("(1,2)", 6)])


def test_centralizer_examples():
    A8 = alternating(8)
    assert ops.centralizer(A8, P("(1,2,3)", 8)).order == 180
    assert ops.centralizer(A8, A8.identity).order == A8.order


@given(st.data())
def test_centralizer_against_brute_force(data):
    G = symmetric(5)
    x = G.element(data.draw(st.integers(0, G.order - 1)))
    want = sum(1 for g in G.enumerate_elements() if g.commutes_with(x))
    C = ops.centralizer(G, x)
    assert C.order == want
    assert all(g.commutes_with(x) for g in C.generators)


def test_normalizer_examples():
    A5 = alternating(5)
    assert ops.normalizer(A5, A5).order == 60
    assert ops.normalizer(A5, GroupHandle(5, [P("(1,2,3,4,5)", 5)])).order == 10


def test_sylow_subgroups():
    assert ops.sylow_subgroup(alternating(5), 5).order == 5
    assert ops.sylow_subgroup(symmetric(4), 2).order == 8
    A9 = alternating(9)
    for p in (2, 3, 5, 7):
        P_ = ops.sylow_subgroup(A9, p)
        assert P_.order == max(p**k for k in range(20) if A9.order % p**k == 0)


def test_p_core_examples():
    assert ops.p_core(alternating(5), 2).order == 1
    V = ops.p_core(symmetric(4), 2)
    assert V.order == 4 and ops.is_abelian(V)
    assert ops.p_core(frobenius(7, 3), 7).order == 7
    S4 = symmetric(4)
    assert all(V.contains(v ** s) for v in V.generators for s in S4.generators)


def test_odd_generated_subgroup_examples():
    F = frobenius(7, 3)
    assert ops.odd_generated_subgroup(F).order == 21
    assert ops.odd_generated_subgroup(symmetric(3)).order == 3
    D8 = ops.sylow_subgroup(symmetric(4), 2)
    assert ops.odd_generated_subgroup(D8).order == 1


def test_is_abelian_examples():
    assert ops.is_abelian(GroupHandle(5, [P("(1,2,3,4,5)", 5)]))
    assert not ops.is_abelian(symmetric(3))
    assert ops.is_abelian(GroupHandle(4, [P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)]))


@pytest.mark.parametrize("G, sizes", [
    (alternating(5), [1, 15, 20, 12, 12]),
    (symmetric(3), [1, 3, 2]),
])
def test_class_examples(G, sizes):
    assert sorted(c.size for c in ops.conjugacy_classes(G)) == sorted(sizes)


@pytest.mark.parametrize("make", [lambda: alternating(6), lambda: symmetric(5),
                                  lambda: frobenius(13, 3)])
def test_classes_against_orbits(make):
    G = make()
    classes = ops.conjugacy_classes(G)
    elements = {tuple(x) for x in G.enumerate_elements()}
    brute = oracles.classes(elements)
    assert sorted(len(c) for c in brute) == sorted(c.size for c in classes)
    for c in classes:
        members = {tuple(int(v) for v in G.elements()[r]) for r in c.ranks()}
        assert tuple(c.representative) == min(members)
        assert members in brute
        assert c.size * c.centralizer.order == G.order
        assert c.element_order == c.representative.order()


def test_right_transversal_covers_cosets():
    G = alternating(5)
    U = ops.normalizer(G, GroupHandle(5, [P("(1,2,3,4,5)", 5)]))
    reps = ops.right_transversal(G, U)
    assert len(reps) == 6 and reps[0] == 0
    cosets = set()
    for r in reps:
        g = G.element(int(r))
        cosets.add(frozenset(tuple(u * g) for u in U.enumerate_elements()))
    assert len(cosets) == 6
