import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyadic.core import NaryGroup, NaryTable
from polyadic.enumeration import catalog
from polyadic.groups import cyclic_group, find_isomorphism
from polyadic.hg import (
    CongruenceError,
    HgAlgebra,
    HgInvariantError,
    alternating_anchor,
    canonical_form,
    classify_cyclic,
    cyclic_family,
    cyclic_members,
    exponential_form,
    hg_construct,
    hg_decompose,
    is_alternating,
    isomorphic,
    isomorphic_bruteforce,
    k_exponential_witness,
    retract,
    semiabelian_via_retracts,
    special_forms,
    term_operations,
)
from polyadic.skew import is_semiabelian

from conftest import groups_strategy


def derived(G, n):
    return hg_construct(HgAlgebra(G, tuple(range(G.order)), G.identity, n))


G2 = cyclic_family("g_d", 3, 3, d=2)


def test_retract_examples():
    R = retract(G2, 0)
    assert R == cyclic_group(3) and R.identity == 0
    S3 = dict(catalog(6))["S3"]
    assert retract(derived(S3, 3), S3.identity) == S3
    assert retract(derived(S3, 4), S3.identity) == S3


def test_decompose_examples():
    h = hg_decompose(G2, 0)
    assert h.group == cyclic_group(3) and h.phi == (0, 2, 1) and h.b == 0
    for _, G in catalog(4):
        h = hg_decompose(derived(G, 4), G.identity)
        assert h.phi == tuple(range(4)) and h.b == G.identity
    f1 = cyclic_family("f_a", 3, 4, a=1)
    abar = f1.skew_map[0]
    assert (3 * 0 + abar + 1) % 3 == 0
    h = hg_decompose(f1, 0)
    assert h.phi == (0, 1, 2)
    assert h.b == f1(abar, abar, abar, abar)


def test_construct_examples():
    assert hg_construct(HgAlgebra(cyclic_group(3), (0, 2, 1), 0, 3)).table == G2.table
    for k in range(1, 6):
        for n in (3, 4):
            for a in range(k):
                assert hg_construct(HgAlgebra(cyclic_group(k), tuple(range(k)), a, n)).table == cyclic_family("f_a", k, n, a=a).table


def test_invariant_errors_name_the_invariant():
    Z3 = cyclic_group(3)
    with pytest.raises(HgInvariantError) as e:
        HgAlgebra(Z3, (0, 2, 1), 0, 4)
    assert e.value.invariant == "phi^(n-1)(x) = b x b^-1"
    with pytest.raises(HgInvariantError) as e:
        HgAlgebra(Z3, (1, 2, 0), 0, 3)
    assert e.value.invariant == "phi automorphism"
    with pytest.raises(HgInvariantError) as e:
        HgAlgebra(cyclic_group(4), (0, 3, 2, 1), 1, 3)
    assert e.value.invariant == "phi(b) = b"
    with pytest.raises(HgInvariantError):
        HgAlgebra(Z3, (0, 0, 1), 0, 3)


def test_invariant_conjugation_nonabelian():
    S3 = dict(catalog(6))["S3"]
    for b in range(6):
        conj = tuple(S3.mul(S3.mul(b, x), S3.inverse[b]) for x in range(6))
        # binary case: phi must itself be conjugation by b
        g = hg_construct(HgAlgebra(S3, conj, b, 2))
        assert all(g(x, y) == S3.product([x, b, y]) for x in range(6) for y in range(6))
        # ternary: phi^2 = conj_b forces b central, and the centre of S3 is trivial
        if b != S3.identity:
            with pytest.raises(HgInvariantError):
                HgAlgebra(S3, conj, b, 3)


def test_isomorphic_examples():
    assert isomorphic(cyclic_family("f_a", 5, 3, a=0), cyclic_family("f_a", 5, 3, a=2)) is not None
    h = isomorphic(cyclic_family("f_a", 5, 3, a=0), cyclic_family("f_a", 5, 3, a=2))
    f0, f2 = cyclic_family("f_a", 5, 3, a=0), cyclic_family("f_a", 5, 3, a=2)
    shift = tuple((x - 1) % 5 for x in range(5))
    for xs in itertools.product(range(5), repeat=3):
        assert shift[f0(*xs)] == f2(*[shift[x] for x in xs])
        assert h[f0(*xs)] == f2(*[h[x] for x in xs])
    z2 = [cyclic_family("f_a", 2, 3, a=a) for a in (0, 1)]
    assert isomorphic(*z2) is None and isomorphic_bruteforce(*z2) is None
    assert isomorphic(G2, G2) == (0, 1, 2)
    assert isomorphic(G2, cyclic_family("f_a", 3, 4)) is None


def test_cyclic_family_congruences():
    assert cyclic_family("f_a", 2, 3, a=1)
    assert cyclic_family("g_d", 3, 3, d=2)
    with pytest.raises(CongruenceError) as e:
        cyclic_family("g_dc", 3, 3, d=2, c=1)
    assert e.value.congruence == "dc = c (mod k)"
    with pytest.raises(CongruenceError) as e:
        cyclic_family("g_d", 5, 3, d=2)
    assert e.value.congruence == "d^(n-1) = 1 (mod k)"
    with pytest.raises(CongruenceError):
        cyclic_family("g_d", 3, 3, d=1)
    with pytest.raises(ValueError):
        cyclic_family("h", 3, 3)
    g = cyclic_family("g_dc", 4, 3, d=3, c=2)
    assert all(g(x, y, z) == (x + 3 * y + z + 2) % 4 for x, y, z in itertools.product(range(4), repeat=3))


def test_classify_examples():
    assert len(classify_cyclic(2, 3)) == 2
    assert len(classify_cyclic(1, 3)) == len(classify_cyclic(1, 5)) == 1
    cls3 = classify_cyclic(3, 3)
    covered = {m for c in cls3 for m in c.members}
    assert ("f_a", (("a", 0),)) in covered and ("f_a", (("a", 1),)) in covered and ("g_d", (("d", 2),)) in covered
    assert len(cls3) == 2
    assert [len(classify_cyclic(k, 3)) for k in range(1, 8)] == [1, 2, 2, 4, 2, 4, 2]


@pytest.mark.parametrize("k,n", [(k, n) for k in range(1, 6) for n in (3, 4)])
def test_classify_partition(k, n):
    classes = classify_cyclic(k, n)
    reps = [c.representative for c in classes]
    for a, b in itertools.combinations(reps, 2):
        assert isomorphic(a, b) is None
    for _, _, g in cyclic_members(k, n):
        assert sum(isomorphic(r, g) is not None for r in reps) == 1
    for r in reps:
        assert r.table == canonical_form(r)


def test_special_forms_examples():
    assert special_forms(G2, "alternating")
    assert alternating_anchor(G2) is not None
    g = special_forms(cyclic_group(3), ("exponential", (1, 2, 1)))
    assert g is not None and g.table == G2.table
    assert exponential_form(cyclic_group(3), (1, 1, 2)) is None
    for _, G in catalog(4) + catalog(6):
        d = derived(G, 3)
        w = special_forms(d, ("k_exponential", 1))
        assert w == G.identity and d(w, w, w) == w
    assert not is_alternating(cyclic_family("f_a", 3, 3, a=0))
    with pytest.raises(ValueError):
        is_alternating(cyclic_family("f_a", 3, 4))
    with pytest.raises(ValueError):
        special_forms(G2, "nope")


def test_k_exponential_derived_neutral():
    S3 = dict(catalog(6))["S3"]
    d = derived(S3, 3)
    assert k_exponential_witness(d, 1) == S3.identity


def test_alternating_z5_five_ary():
    g = NaryGroup(NaryTable.from_function(5, 3, lambda *x: sum((-1) ** i * v for i, v in enumerate(x))))
    assert is_alternating(g)
    assert not is_alternating(cyclic_family("f_a", 3, 5))


@given(groups_strategy(ns=(2, 3, 4, 5), max_k=6), st.data())
def test_round_trip(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    h = hg_decompose(g, a)
    assert hg_construct(h).table == g.table


@given(groups_strategy(ns=(3, 4, 5), max_k=6), st.data())
def test_term_equivalence(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    h = hg_decompose(g, a)
    neg, plus, phi, b = term_operations(g, a)
    G = h.group
    assert tuple(neg) == G.inverse
    assert np.array_equal(plus, G.array)
    assert tuple(phi) == h.phi
    assert b == h.b


@given(groups_strategy(ns=(3, 4), max_k=6), st.data())
def test_retracts_isomorphic(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert find_isomorphism(retract(g, a), retract(g, b)) is not None


@given(groups_strategy(ns=(3, 4), max_k=6))
def test_semiabelian_iff_commutative_retracts(g):
    assert is_semiabelian(g) == semiabelian_via_retracts(g)


@given(groups_strategy(ns=(3, 4), max_k=4), st.data())
def test_isomorphic_matches_bruteforce(g, data):
    perm = data.draw(st.permutations(range(g.order)))
    relabelled = NaryGroup(g.table.relabel(perm))
    h = isomorphic(g, relabelled)
    assert h is not None and isomorphic_bruteforce(g, relabelled) is not None
    assert canonical_form(g) == canonical_form(relabelled)


@given(groups_strategy(ns=(3,), max_k=4), groups_strategy(ns=(3,), max_k=4))
def test_isomorphic_is_exact(g1, g2):
    fast = isomorphic(g1, g2) is not None
    assert fast == (isomorphic_bruteforce(g1, g2) is not None)
    if g1.order == g2.order:
        assert fast == (canonical_form(g1) == canonical_form(g2))


@given(groups_strategy(ns=(3, 4), max_k=4), groups_strategy(ns=(3, 4), max_k=4), groups_strategy(ns=(3, 4), max_k=4))
def test_isomorphic_equivalence_relation(a, b, c):
    ab, bc, ac = isomorphic(a, b), isomorphic(b, c), isomorphic(a, c)
    assert (isomorphic(b, a) is None) == (ab is None)
    if ab is not None and bc is not None:
        assert ac is not None
