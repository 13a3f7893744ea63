"""Exhaustive and Hosszu-Gluskin driven enumeration of small n-ary groups."""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .core import GuardError, NaryGroup, NaryTable, check_axioms
from .groups import GroupTable, cyclic_group
from .hg import HgAlgebra, HgInvariantError, canonical_form, hg_construct, isomorphic

BRUTE_FORCE_LIMIT = 2**20
CATALOG_MAX_ORDER = 7

_V4 = [0, 1, 2, 3,
       1, 0, 3, 2,
       2, 3, 0, 1,
       3, 2, 1, 0]

# S3 on the permutations of {0,1,2} in lexicographic order:
# 0=(012) identity, 1=(021), 2=(102), 3=(120), 4=(201), 5=(210)
_S3 = [0, 1, 2, 3, 4, 5,
       1, 0, 3, 2, 5, 4,
       2, 4, 0, 5, 1, 3,
       3, 5, 1, 4, 0, 2,
       4, 2, 5, 0, 3, 1,
       5, 3, 4, 1, 2, 0]

_NAMES = {1: ["trivial"], 2: ["Z2"], 3: ["Z3"], 4: ["Z4", "V4"], 5: ["Z5"], 6: ["Z6", "S3"], 7: ["Z7"]}


@lru_cache(maxsize=None)
def catalog(k: int) -> tuple[tuple[str, GroupTable], ...]:
    """The groups of order k (k <= 7) up to isomorphism, by name."""
    if not 1 <= k <= CATALOG_MAX_ORDER:
        raise GuardError("catalog-order", f"catalog covers orders 1..{CATALOG_MAX_ORDER}, got {k}")
    out = []
    for name in _NAMES[k]:
        if name == "V4":
            G = GroupTable(4, _V4)
        elif name == "S3":
            G = GroupTable(6, _S3)
        else:
            G = cyclic_group(k)
        out.append((name, G))
    return tuple(out)


def _latin_mask(cands: np.ndarray, n: int, k: int) -> np.ndarray:
    """Rows of ``cands`` (flattened tables) that are Latin in every coordinate."""
    cubes = cands.reshape((-1,) + (k,) * n)
    ok = np.ones(len(cands), dtype=bool)
    target = np.arange(k)
    for ax in range(1, n + 1):
        s = np.sort(cubes, axis=ax)
        shape = [1] * (n + 1)
        shape[ax] = k
        ok &= (s == target.reshape(shape)).reshape(len(cands), -1).all(axis=1)
    return ok


def brute_force_enumerate(n: int, k: int) -> list[NaryGroup]:
    """Every n-ary group table on {0..k-1}, in lexicographic order."""
    cells = k**n
    if k**cells > BRUTE_FORCE_LIMIT:
        raise GuardError("brute-force", f"k^(k^n) = {k}^{cells} exceeds 2^20")
    total = k**cells
    # row r is the base-k expansion of r, most significant cell first
    idx = np.arange(total, dtype=np.int64)
    weights = k ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    cands = (idx[:, None] // weights[None, :]) % k
    cands = cands[_latin_mask(cands, n, k)]
    out = []
    for row in cands:
        t = NaryTable(n, k, row)
        rep = check_axioms(t)
        if rep.is_group:
            out.append(NaryGroup(t, rep))
    return out


def hg_algebras(G: GroupTable, n: int) -> list[HgAlgebra]:
    if n == 2:
        return [HgAlgebra(G, tuple(range(G.order)), G.identity, 2)]
    out = []
    for phi in G.automorphisms():
        for b in range(G.order):
            if phi[b] != b:
                continue
            try:
                out.append(HgAlgebra(G, phi, b, n))
            except HgInvariantError:
                pass
    return out


def hg_enumerate(n: int, k: int) -> list[NaryGroup]:
    """All distinct tables hg_construct(G, phi, b) over the catalog groups of order k."""
    seen = {}
    for _, G in catalog(k):
        for h in hg_algebras(G, n):
            g = hg_construct(h)
            seen.setdefault(g.table.table, g)
    return [seen[key] for key in sorted(seen)]


def iso_classes(groups: Iterable[NaryGroup]) -> list[NaryGroup]:
    """One canonical (lexicographically least over relabelings) representative per class."""
    groups = list(groups)
    if not groups:
        return []
    shape = {(g.arity, g.order) for g in groups}
    if len(shape) > 1:
        raise ValueError(f"mixed arities/orders: {sorted(shape)}")
    reps: list[NaryGroup] = []
    for g in groups:
        if not any(isomorphic(r, g) is not None for r in reps):
            reps.append(g)
    canon = [NaryGroup(canonical_form(r)) for r in reps]
    return sorted(canon, key=lambda g: g.table.table)


def emit_name(k: int, n: int, index: int) -> str:
    return f"n{k}a{n}-{index}.ngt"


def emit(directory, groups: Sequence[NaryGroup]) -> list[str]:
    """Write one NGT file per group; returns the paths written."""
    from .formats import write_ngt

    os.makedirs(directory, exist_ok=True)
    paths = []
    for i, g in enumerate(groups, start=1):
        p = os.path.join(directory, emit_name(g.order, g.arity, i))
        write_ngt(p, g.table)
        paths.append(p)
    return paths
