import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyadic.core import (
    GuardError,
    NaryGroup,
    NaryTable,
    Solvability,
    associativity_failure,
    check_axioms,
    criteria_for,
    evaluate,
    identity_suite,
    is_associative,
    is_ij_associative,
    is_reducible,
    long_product,
    minimal_axiom_check,
    neutral_elements,
    solvability,
)
from polyadic.hg import cyclic_family

from conftest import groups_strategy, mutated


def sum_table(n, k, c=0):
    return NaryTable.from_function(n, k, lambda *x: sum(x) + c)


def g2():
    return cyclic_family("g_d", 3, 3, d=2)


def test_table_basics():
    t = sum_table(3, 4)
    assert evaluate(t, (1, 2, 3)) == 2
    assert t(1, 2, 3) == 2
    assert g2()(0, 1, 0) == 2
    assert g2()(0, 0, 0) == 0
    assert len(t.table) == 64


def test_table_validation():
    with pytest.raises(ValueError):
        NaryTable(3, 2, [0] * 7)
    with pytest.raises(ValueError):
        NaryTable(3, 2, [0] * 7 + [2])
    with pytest.raises(ValueError):
        NaryTable(1, 2, [0, 1])
    with pytest.raises(GuardError):
        NaryTable(21, 2, np.zeros(2**21, dtype=int))
    with pytest.raises(ValueError):
        evaluate(sum_table(3, 2), (0, 1))


def test_table_is_immutable():
    t = sum_table(3, 2)
    with pytest.raises(AttributeError):
        t.arity = 4
    with pytest.raises(ValueError):
        t.cube[0, 0, 0] = 1


def test_long_product():
    t = sum_table(3, 4)
    assert long_product(t, (1, 1, 1, 1, 1)) == 1
    assert long_product(g2().table, (1, 0, 0, 0, 2)) == 0
    assert long_product(t, (1, 2, 3)) == evaluate(t, (1, 2, 3))
    assert long_product(t, (2,)) == 2
    with pytest.raises(ValueError):
        long_product(t, (1, 2, 3, 4))


def test_associativity():
    t = sum_table(3, 2)
    assert all(is_ij_associative(t, i, j) for i, j in itertools.combinations(range(1, 4), 2))
    for k in range(1, 5):
        for a in range(k):
            assert is_associative(cyclic_family("f_a", k, 3, a=a).table)
    vals = list(t.table)
    vals[0] = 1
    bad = NaryTable(3, 2, vals)
    w = associativity_failure(bad, 1, 2)
    assert w is not None and len(w) == 5
    # the witness really breaks the law
    x = w
    assert bad(bad(*x[:3]), *x[3:]) != bad(x[0], bad(*x[1:4]), x[4])
    assert any(not minimal_axiom_check(bad, c) for c in criteria_for(3))
    with pytest.raises(ValueError):
        is_ij_associative(t, 2, 2)


def test_solvability():
    t = sum_table(3, 4)
    assert all(solvability(t, i) is Solvability.UNIQUE for i in (1, 2, 3))
    assert solvability(NaryTable(3, 2, [0] * 8), 1) is Solvability.NONE
    proj = NaryTable.from_function(3, 2, lambda x, y, z: x)
    assert solvability(proj, 1) is Solvability.UNIQUE
    assert solvability(proj, 2) is not Solvability.UNIQUE
    assert solvability(proj, 3) is not Solvability.UNIQUE


def test_check_axioms_examples(rng):
    for d, c, k in [(3, 2, 4), (5, 3, 6)]:
        assert check_axioms(cyclic_family("g_dc", k, 3, d=d, c=c).table).is_group
    assert check_axioms(NaryTable(3, 1, [0])).is_group
    t = NaryTable(3, 3, [rng.randrange(3) for _ in range(27)])
    rep = check_axioms(t)
    assert not rep.is_group and rep.failure_witness is not None


def test_galmak_example():
    assert minimal_axiom_check(cyclic_family("f_a", 4, 3, a=1).table, "galmak(1,1)")
    assert minimal_axiom_check(cyclic_family("f_a", 4, 3, a=1).table, ("galmak", 1, 1))


def test_criteria_parameters():
    t = sum_table(3, 2)
    with pytest.raises(ValueError):
        minimal_axiom_check(t, "dgg_c")
    with pytest.raises(ValueError):
        minimal_axiom_check(t, ("celakoski", 2))
    with pytest.raises(ValueError):
        minimal_axiom_check(t, ("galmak", 0, 1))
    with pytest.raises(ValueError):
        minimal_axiom_check(t, "nonsense")
    assert ("dgg_c",) in criteria_for(4) and ("dgg_c",) not in criteria_for(3)


def test_dgg_criteria_are_not_just_associativity():
    # (1,2)-associative but not solvable: criterion a must fail
    t = NaryTable(3, 2, [0] * 8)
    assert is_ij_associative(t, 1, 2)
    assert not minimal_axiom_check(t, "dgg_a")


def test_identity_suite():
    g = NaryGroup(sum_table(4, 4))
    for i, j in itertools.product(range(2, 5), repeat=2):
        assert identity_suite(g, ("dornte", i, j))
        assert identity_suite(g, ("hat", i, j))
    assert identity_suite(g, ("variety", 2, 3))
    assert identity_suite(g2(), ("dornte", 2, 2), skew_map=[0, 1, 2])
    z4 = NaryGroup(sum_table(3, 4))
    wrong = list(z4.skew_map)
    assert wrong[1] == 3
    wrong[1] = 1
    assert not identity_suite(z4, ("dornte", 2, 2), skew_map=wrong)


def test_hat_needs_unique_solution():
    with pytest.raises(ValueError):
        identity_suite(NaryTable(3, 2, [0] * 8), ("hat", 2, 2))


def test_neutral_elements():
    assert neutral_elements(NaryGroup(sum_table(4, 3))) == {0, 1, 2}
    f1 = cyclic_family("f_a", 2, 3, a=1)
    assert neutral_elements(f1) == set()
    assert is_reducible(f1) is None
    z4 = NaryGroup(sum_table(3, 4))
    assert neutral_elements(z4) == {0, 2}
    G = is_reducible(z4)
    assert G.table == tuple((x + y) % 4 for x in range(4) for y in range(4))


def test_group_wrapper_rejects_non_groups():
    from polyadic.core import NotAGroupError

    with pytest.raises(NotAGroupError):
        NaryGroup(NaryTable(3, 2, [0] * 8))


@given(groups_strategy())
def test_valid_groups_satisfy_every_criterion(g):
    assert check_axioms(g.table).is_group
    assert all(minimal_axiom_check(g.table, c) for c in criteria_for(g.arity))


@given(groups_strategy(ns=(3,), max_k=3), st.integers(0, 10**6))
def test_mutants_fail_every_criterion(g, seed):
    if g.order < 2:
        return
    t = mutated(g, random.Random(seed))
    assert not check_axioms(t).is_group
    assert not any(minimal_axiom_check(t, c) for c in criteria_for(3))


@given(groups_strategy())
def test_dornte_everywhere(g):
    n = g.arity
    assert all(identity_suite(g, ("dornte", i, j)) for i in range(2, n + 1) for j in range(2, n + 1))


@given(groups_strategy())
def test_reducible_reproduces_table(g):
    G = is_reducible(g)
    assert (G is not None) == bool(g.neutral_set)
    if G is None:
        return
    for xs in itertools.product(range(g.order), repeat=g.arity):
        assert G.product(xs) == g(*xs)
    s = sorted(g.neutral_set)
    assert all(g(*xs) in g.neutral_set for xs in itertools.product(s, repeat=g.arity))


@given(groups_strategy(ns=(3,)), st.data())
def test_long_product_rebracketing(g, data):
    k = g.order
    xs = data.draw(st.lists(st.integers(0, k - 1), min_size=5, max_size=5))
    left = long_product(g.table, xs)
    assert left == g(xs[0], g(*xs[1:4]), xs[4]) == g(xs[0], xs[1], g(*xs[2:]))
