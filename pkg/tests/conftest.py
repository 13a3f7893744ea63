import functools
import random

import pytest
from hypothesis import settings, strategies as st

from polyadic.core import NaryGroup, NaryTable
from polyadic.enumeration import catalog, hg_algebras
from polyadic.hg import cyclic_members, hg_construct

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def hg_groups(n: int, max_k: int = 6) -> tuple:
    """Every table from every HG-algebra over the catalog groups of order <= max_k."""
    out = []
    for k in range(1, max_k + 1):
        for _, G in catalog(k):
            for h in hg_algebras(G, n):
                if k**n <= 2**14:
                    out.append(hg_construct(h))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def cyclic_corpus(ns=(3, 4, 5), max_k=6) -> tuple:
    return tuple(g for n in ns for k in range(1, max_k + 1) for _, _, g in cyclic_members(k, n))


def mutated(g: NaryGroup, rng: random.Random) -> NaryTable:
    vals = list(g.table.table)
    i = rng.randrange(len(vals))
    vals[i] = (vals[i] + rng.randrange(1, g.order)) % g.order
    return NaryTable(g.arity, g.order, vals)


def groups_strategy(ns=(3, 4), max_k=5):
    pool = [g for n in ns for g in hg_groups(n, max_k)]
    return st.sampled_from(pool)


@pytest.fixture
def rng():
    return random.Random(20240611)
