"""Covering groups of n-ary groups, coset-defined n-ary groups, and
equivalence of cyclic extensions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import GuardError, NaryGroup, NaryTable, fold
from .groups import GroupTable, find_isomorphism
from .hg import retract

EXTENSION_ORDER_LIMIT = 16


class CoverInvariantError(AssertionError):
    pass


def diamond(s: int, t: int, n: int) -> int:
    if n < 2:
        raise ValueError("arity must be >= 2")
    if not (0 <= s <= n - 2 and 0 <= t <= n - 2):
        raise ValueError(f"indices must lie in 0..{n - 2}, got ({s}, {t})")
    return (s + t + 1) % (n - 1)


@dataclass(frozen=True)
class CoverGroup:
    base: NaryGroup
    anchor: int
    group: GroupTable

    @property
    def arity(self) -> int:
        return self.base.arity

    @property
    def carrier(self) -> list[tuple[int, int]]:
        m = self.arity - 1
        return [(x, s) for x in range(self.base.order) for s in range(m)]

    def index(self, x: int, s: int) -> int:
        return x * (self.arity - 1) + s

    def pair(self, i: int) -> tuple[int, int]:
        return divmod(i, self.arity - 1)

    def tau(self, x: int) -> int:
        return self.index(x, 0)

    def kernel(self) -> list[int]:
        """Carrier indices of G x {n-2}."""
        return [self.index(x, self.arity - 2) for x in range(self.base.order)]


def cover_product(g: NaryGroup, c: int, x: int, s: int, y: int, t: int) -> tuple[int, int]:
    n = g.arity
    st = diamond(s, t, n)
    tail = (n - 2 - st) % (n - 1)
    args = [x] + [c] * s + [y] + [c] * t + [g.skew_map[c]] + [c] * tail
    return int(fold(g.table, args)), st


def cover(g: NaryGroup, c: int) -> CoverGroup:
    n, k = g.arity, g.order
    if not 0 <= c < k:
        raise ValueError(f"anchor {c} outside 0..{k - 1}")
    m = n - 1
    N = k * m
    vals = []
    for i in range(N):
        x, s = divmod(i, m)
        for j in range(N):
            y, t = divmod(j, m)
            z, u = cover_product(g, c, x, s, y, t)
            vals.append(z * m + u)
    cg = CoverGroup(g, c, GroupTable(N, vals))
    verify_cover(cg)
    return cg


def verify_cover(cg: CoverGroup) -> None:
    g, G = cg.base, cg.group
    n, k, m = g.arity, g.order, g.arity - 1
    # s -> s+1 mod (n-1) is a homomorphism onto Z_{n-1} whose kernel is G x {n-2}
    pi = [(i % m + 1) % m for i in range(G.order)]
    Zm = GroupTable.from_function(m, lambda a, b: (a + b) % m)
    if not G.is_homomorphism(Zm, pi):
        raise CoverInvariantError("coset index is not a homomorphism onto Z_(n-1)")
    if not G.is_normal_subgroup(cg.kernel()):
        raise CoverInvariantError("G x {n-2} is not a normal subgroup")
    tau = np.arange(k) * m
    idx = np.indices((k,) * n).reshape(n, -1)
    acc = tau[idx[0]]
    for i in range(1, n):
        acc = G.array[acc, tau[idx[i]]]
    if not np.array_equal(acc, tau[g.cube.reshape(-1)]):
        raise CoverInvariantError("tau(f(x1..xn)) != tau(x1)*...*tau(xn)")
    if len(G.subgroup_closure([int(v) for v in tau])) != G.order:
        raise CoverInvariantError("tau(G) does not generate the cover")


def retract_vs_kernel(cg: CoverGroup) -> Optional[tuple[int, ...]]:
    """An isomorphism ret_c(G, f) -> G x {n-2}, the latter labelled by x."""
    sub, labels = cg.group.subgroup(cg.kernel())
    # labels are sorted carrier indices x*(n-1)+(n-2), so label i is x = i
    return find_isomorphism(retract(cg.base, cg.anchor), sub)


def coset_nary_group(G: GroupTable, G0: Sequence[int], rep: int, n: int) -> tuple[NaryGroup, list[int]]:
    """The coset rep.G0 under the n-fold product of G, relabelled by its sorted elements."""
    s0 = set(int(x) for x in G0)
    if not G.is_normal_subgroup(s0):
        raise ValueError("G0 is not a normal subgroup")
    if G.order % len(s0) or G.order // len(s0) != n - 1:
        raise ValueError(f"quotient has order {G.order // len(s0)}, expected {n - 1}")
    # quotient is generated by rep.G0 iff the first power of rep landing in G0 is the (n-1)-th
    y, q = rep, 1
    while y not in s0:
        y = G.mul(y, rep)
        q += 1
    if q != n - 1:
        raise ValueError(f"coset of {rep} has order {q} in the quotient, expected {n - 1}")
    coset = sorted(G.mul(rep, h) for h in s0)
    pos = {x: i for i, x in enumerate(coset)}
    vals = [pos[G.product(xs)] for xs in itertools.product(coset, repeat=n)]
    return NaryGroup(NaryTable(n, len(coset), vals)), coset


def _is_hom(A: GroupTable, B: GroupTable, h: Sequence[int]) -> bool:
    return len(h) == A.order and all(0 <= v < B.order for v in h) and A.is_homomorphism(B, h)


def check_exact(A: GroupTable, M: GroupTable, Q: GroupTable, alpha, beta) -> None:
    if not _is_hom(A, M, alpha) or len(set(alpha)) != A.order:
        raise ValueError("alpha is not an injective homomorphism")
    if not _is_hom(M, Q, beta) or len(set(beta)) != Q.order:
        raise ValueError("beta is not a surjective homomorphism")
    kernel = {x for x in range(M.order) if beta[x] == Q.identity}
    if kernel != set(alpha):
        raise ValueError("image of alpha is not the kernel of beta")


def extensions_equivalent(A: GroupTable, M: GroupTable, Q: GroupTable, alpha, beta1, beta2) -> bool:
    """Is there an automorphism lam of M with lam.alpha = alpha and beta2.lam = beta1?"""
    if M.order > EXTENSION_ORDER_LIMIT:
        raise GuardError("extension-order", f"|M| = {M.order} exceeds {EXTENSION_ORDER_LIMIT}")
    check_exact(A, M, Q, alpha, beta1)
    check_exact(A, M, Q, alpha, beta2)
    for lam in M.automorphisms():
        if all(lam[a] == a for a in alpha) and all(beta2[lam[x]] == beta1[x] for x in range(M.order)):
            return True
    return False
