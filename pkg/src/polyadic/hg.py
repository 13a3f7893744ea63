"""Binary retracts, Hosszu-Gluskin algebras, isomorphism of n-ary groups,
the cyclic families and a few special operation forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import GuardError, NaryGroup, NaryTable, check_axioms, fold
from .groups import GroupTable, isomorphisms

CANONICAL_ORDER_LIMIT = 8
BRUTEFORCE_ORDER_LIMIT = 8


class HgInvariantError(ValueError):
    """An HG-algebra invariant does not hold."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class CongruenceError(ValueError):
    def __init__(self, congruence: str, message: str):
        super().__init__(f"{congruence} fails: {message}")
        self.congruence = congruence


# -- retracts ----------------------------------------------------------------

def _retract_array(g: NaryGroup, a: int) -> np.ndarray:
    k, n = g.order, g.arity
    xs = np.arange(k)
    return g.cube[(xs[:, None],) + (a,) * (n - 2) + (xs[None, :],)]


def retract(g: NaryGroup, a: int) -> GroupTable:
    """ret_a: x o y = f(x, a^(n-2), y).  Its identity is the skew element of a."""
    if not 0 <= a < g.order:
        raise ValueError(f"element {a} outside 0..{g.order - 1}")
    r = GroupTable(g.order, _retract_array(g, a).reshape(-1))
    abar = g.skew_map[a]
    assert r.identity == abar
    if g.arity >= 3:
        # x^-1 = f(abar, x^(n-3), xbar, abar)
        xs = np.arange(g.order)
        inv = g.cube[(abar,) + (xs,) * (g.arity - 3) + (np.asarray(g.skew_map),) + (abar,)]
        assert tuple(int(v) for v in inv) == r.inverse
    return r


def term_operations(g: NaryGroup, a: int) -> tuple[list[int], np.ndarray, list[int], int]:
    """(-y, x+y, phi, b) evaluated by the closed formulas in terms of f, bar and a."""
    n, k = g.arity, g.order
    if n < 3:
        raise ValueError("the closed formulas need arity >= 3")
    bar = np.asarray(g.skew_map)
    abar = int(bar[a])
    ys = np.arange(k)
    neg = g.cube[(abar,) + (ys,) * (n - 3) + (bar[ys], abar)]
    x = ys[:, None]
    ny = neg[None, :]
    plus = g.cube[(x,) + (ny,) * (n - 3) + (bar[ny], abar)]
    phi = g.cube[(abar, ys) + (a,) * (n - 2)]
    b = int(g.cube[(abar,) * n])
    return [int(v) for v in neg], np.asarray(plus), [int(v) for v in phi], b


# -- HG-algebras -------------------------------------------------------------

@dataclass(frozen=True)
class HgAlgebra:
    group: GroupTable
    phi: tuple[int, ...]
    b: int
    arity: int

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(v) for v in self.phi))
        hg_validate(self)

    @property
    def order(self) -> int:
        return self.group.order


def hg_validate(h: HgAlgebra) -> None:
    G, phi, b, n = h.group, h.phi, h.b, h.arity
    k = G.order
    if n < 2:
        raise HgInvariantError("arity", f"arity must be >= 2, got {n}")
    if not 0 <= b < k:
        raise HgInvariantError("b in G", f"b = {b} outside 0..{k - 1}")
    if len(phi) != k or sorted(phi) != list(range(k)):
        raise HgInvariantError("phi bijective", "phi is not a permutation of 0..k-1")
    if not G.is_homomorphism(G, phi):
        raise HgInvariantError("phi automorphism", "phi(x*y) != phi(x)*phi(y) for some x, y")
    if phi[b] != b:
        raise HgInvariantError("phi(b) = b", f"phi({b}) = {phi[b]}")
    p = np.arange(k)
    ph = np.asarray(phi)
    for _ in range(n - 1):
        p = ph[p]
    binv = G.inverse[b]
    conj = G.array[G.array[b, np.arange(k)], binv]
    if not np.array_equal(p, conj):
        x = int(np.flatnonzero(p != conj)[0])
        raise HgInvariantError("phi^(n-1)(x) = b x b^-1", f"fails at x = {x}")


def hg_decompose(g: NaryGroup, a: int) -> HgAlgebra:
    """The HG-algebra (ret_a, phi, b) with phi(x) = f(abar, x, a^(n-2)), b = f(abar^n)."""
    n = g.arity
    G = retract(g, a)
    abar = g.skew_map[a]
    xs = np.arange(g.order)
    phi = g.cube[(abar, xs) + (a,) * (n - 2)] if n > 2 else xs
    b = int(g.cube[(abar,) * n]) if n > 2 else G.identity
    h = HgAlgebra(G, tuple(int(v) for v in phi), b, n)
    if hg_construct_table(h) != g.table:
        raise AssertionError("decomposition does not reproduce the table")
    return h


def hg_construct_table(h: HgAlgebra) -> NaryTable:
    """f(x1..xn) = x1 . phi(x2) . phi^2(x3) ... phi^(n-1)(xn) . b."""
    G, n, k = h.group, h.arity, h.order
    if k**n > 2**20:
        raise GuardError("table-size", f"k^n = {k}^{n} exceeds 2^20")
    grid = np.indices((k,) * n).reshape(n, -1)
    ph = np.asarray(h.phi)
    acc = grid[0]
    p = np.arange(k)
    for i in range(1, n):
        p = ph[p]
        acc = G.array[acc, p[grid[i]]]
    acc = G.array[acc, h.b]
    return NaryTable(n, k, acc)


def hg_construct(h: HgAlgebra) -> NaryGroup:
    return NaryGroup(hg_construct_table(h))


# -- isomorphism --------------------------------------------------------------

def _order_multiset(g: NaryGroup) -> tuple:
    from .skew import order

    return tuple(sorted(order(g, x) for x in range(g.order)))


def _confirm(g1: NaryGroup, g2: NaryGroup, h: Sequence[int]) -> bool:
    hm = np.asarray(h)
    return bool(np.array_equal(hm[g1.cube], g2.cube[np.ix_(*([hm] * g1.arity))]))


def isomorphic(g1: NaryGroup, g2: NaryGroup) -> Optional[tuple[int, ...]]:
    """An isomorphism g1 -> g2 as an image tuple, or None.

    Fix a = 0 in g1; for each b in g2 look for retract isomorphisms
    h: ret_a -> ret_b with h(a) = b, h(f1(abar^n)) = f2(bbar^n) and
    h(phi1(x)) = phi2(h(x)), then confirm on the whole table.
    """
    if g1.arity != g2.arity or g1.order != g2.order:
        return None
    if g1.table == g2.table:
        return tuple(range(g1.order))
    if _order_multiset(g1) != _order_multiset(g2):
        return None
    a = 0
    h1 = hg_decompose(g1, a)
    R1 = h1.group
    ph1 = np.asarray(h1.phi)
    for b in range(g2.order):
        R2 = retract(g2, b)
        if R1.element_orders[a] != R2.element_orders[b]:
            continue
        h2 = hg_decompose(g2, b)
        ph2 = np.asarray(h2.phi)
        for iso in isomorphisms(R1, R2):
            if iso[a] != b or iso[h1.b] != h2.b:
                continue
            hm = np.asarray(iso)
            if not np.array_equal(hm[ph1], ph2[hm]):
                continue
            if _confirm(g1, g2, iso):
                return iso
    return None


def isomorphic_bruteforce(g1: NaryGroup, g2: NaryGroup) -> Optional[tuple[int, ...]]:
    """Try every bijection against the full table."""
    if g1.arity != g2.arity or g1.order != g2.order:
        return None
    if g1.order > BRUTEFORCE_ORDER_LIMIT:
        raise GuardError("bruteforce-order", f"k = {g1.order} exceeds {BRUTEFORCE_ORDER_LIMIT}")
    for perm in itertools.permutations(range(g1.order)):
        if _confirm(g1, g2, perm):
            return perm
    return None


def relabelings(t: NaryTable) -> Iterator[NaryTable]:
    for perm in itertools.permutations(range(t.order)):
        yield t.relabel(perm)


def canonical_form(g) -> NaryTable:
    """Lexicographically least table over all relabelings."""
    t = g.table if isinstance(g, NaryGroup) else g
    if t.order > CANONICAL_ORDER_LIMIT:
        raise GuardError("canonical-order", f"k = {t.order} exceeds {CANONICAL_ORDER_LIMIT}")
    n, k = t.arity, t.order
    best = None
    for perm in itertools.permutations(range(k)):
        p = np.asarray(perm)
        inv = np.empty_like(p)
        inv[p] = np.arange(k)
        flat = p[t.cube[np.ix_(*([inv] * n))]].reshape(-1)
        if best is None or tuple_lt(flat, best):
            best = flat
    return NaryTable(n, k, best)


def tuple_lt(a: np.ndarray, b: np.ndarray) -> bool:
    diff = np.flatnonzero(a != b)
    return bool(diff.size) and a[diff[0]] < b[diff[0]]


# -- cyclic families ----------------------------------------------------------

def cyclic_family(kind: str, k: int, n: int, a: int = 0, d: Optional[int] = None,
                  c: Optional[int] = None) -> NaryGroup:
    """f_a, g_d or g_dc on Z_k."""
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 and n >= 2")
    if kind == "f_a":
        if not 0 <= a < k:
            raise CongruenceError("a in Z_k", f"a = {a}")
        coeffs, const = [1] * n, a
    elif kind in ("g_d", "g_dc"):
        if d is None or not 2 <= d < k:
            raise CongruenceError("d in Z_k \\ {0,1}", f"d = {d}")
        if pow(d, n - 1, k) != 1 % k:
            raise CongruenceError("d^(n-1) = 1 (mod k)", f"{d}^{n - 1} = {pow(d, n - 1, k)} (mod {k})")
        const = 0
        if kind == "g_dc":
            if c is None or not 0 <= c < k:
                raise CongruenceError("c in Z_k", f"c = {c}")
            if (d * c) % k != c:
                raise CongruenceError("dc = c (mod k)", f"{d}*{c} = {(d * c) % k} (mod {k})")
            if c < 2:
                raise CongruenceError("c in Z_k \\ {0,1}", f"c = {c}")
            const = c
        coeffs = [pow(d, i, k) for i in range(n - 1)] + [1]
    else:
        raise ValueError(f"unknown family {kind!r}")
    grid = np.indices((k,) * n).reshape(n, -1)
    vals = (np.asarray(coeffs)[:, None] * grid).sum(axis=0) + const
    return NaryGroup(NaryTable(n, k, vals % k))


def cyclic_members(k: int, n: int) -> list[tuple[str, dict, NaryGroup]]:
    out = [("f_a", {"a": a}, cyclic_family("f_a", k, n, a=a)) for a in range(k)]
    for d in range(2, k):
        if pow(d, n - 1, k) != 1:
            continue
        out.append(("g_d", {"d": d}, cyclic_family("g_d", k, n, d=d)))
        for c in range(2, k):
            if (d * c) % k == c:
                out.append(("g_dc", {"d": d, "c": c}, cyclic_family("g_dc", k, n, d=d, c=c)))
    return out


@dataclass(frozen=True)
class CyclicClass:
    representative: NaryGroup
    members: tuple[tuple[str, tuple], ...]


def classify_cyclic(k: int, n: int) -> list[CyclicClass]:
    """Isomorphism classes among f_a, g_d, g_dc on Z_k, with canonical representatives."""
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    if k > CANONICAL_ORDER_LIMIT or k**n > 2**20:
        raise GuardError("classify-size", f"k = {k}, n = {n} is beyond the exhaustive limit")
    classes: list[list] = []
    for kind, params, g in cyclic_members(k, n):
        for cl in classes:
            if isomorphic(cl[0], g) is not None:
                cl[1].append((kind, tuple(sorted(params.items()))))
                break
        else:
            classes.append([g, [(kind, tuple(sorted(params.items())))]])
    out = [CyclicClass(NaryGroup(canonical_form(g)), tuple(m)) for g, m in classes]
    return sorted(out, key=lambda c: c.representative.table.table)


# -- special forms --------------------------------------------------------------

def is_idempotent(g: NaryGroup) -> bool:
    xs = np.arange(g.order)
    return bool(np.array_equal(g.cube[(xs,) * g.arity], xs))


def _yy_free(g: NaryGroup, i: int) -> bool:
    # slots i, i+1 (0-based) share one index y; the value must not depend on y
    moved = np.moveaxis(g.cube, (i, i + 1), (0, 1))
    diag = np.diagonal(moved, axis1=0, axis2=1)
    return bool((diag == diag[..., :1]).all())


def alternating_anchor(g: NaryGroup) -> Optional[int]:
    """An a with f(x1^n) = x1 x2^-1 x3 ... xn in an abelian ret_a, or None.

    The operation has this form exactly when f is idempotent and every
    f(x1^i, y, y, x_{i+3}^n), 0 <= i <= n-2, is independent of y.
    """
    n, k = g.arity, g.order
    if n % 2 == 0:
        raise ValueError("the alternating form needs odd arity")
    if not is_idempotent(g) or not all(_yy_free(g, i) for i in range(n - 1)):
        return None
    grid = np.indices((k,) * n).reshape(n, -1)
    for a in range(k):
        R = retract(g, a)
        if not R.is_abelian:
            continue
        inv = np.asarray(R.inverse)
        acc = grid[0]
        for i in range(1, n):
            acc = R.array[acc, inv[grid[i]] if i % 2 else grid[i]]
        if np.array_equal(acc, g.cube.reshape(-1)):
            return a
    raise AssertionError("conditions hold but no retract realises the alternating form")


def is_alternating(g: NaryGroup) -> bool:
    return alternating_anchor(g) is not None


def exponential_form(G: GroupTable, exponents: Sequence[int]) -> Optional[NaryGroup]:
    """G with f(x1..xn) = x1^t1 ... xn^tn, when that is an n-ary group.

    Requires x^t1 = x = x^tn and some integer k with t_j = k^(j-1) on G for
    j = 2..n-1, (xy)^k = x^k y^k and x^(k^(n-1)) = x.  Returns None otherwise.
    """
    ts = [int(t) for t in exponents]
    n = len(ts)
    if n < 2:
        raise ValueError("exponent list needs at least two entries")
    m = G.exponent
    if ts[0] % m != 1 % m or ts[-1] % m != 1 % m:
        return None
    xs = np.arange(G.order)
    pw = [np.asarray([G.power(x, e) for x in xs]) for e in range(m)]
    for k in range(m):
        if any((ts[j - 1] - pow(k, j - 1, m)) % m for j in range(2, n)):
            continue
        if not G.is_homomorphism(G, pw[k]):
            continue
        if not np.array_equal(pw[pow(k, n - 1, m)], xs):
            continue
        grid = np.indices((G.order,) * n).reshape(n, -1)
        acc = grid[0]
        for i in range(1, n):
            acc = G.array[acc, pw[ts[i] % m][grid[i]]]
        t = NaryTable(n, G.order, acc)
        rep = check_axioms(t)
        assert rep.is_group
        return NaryGroup(t, rep)
    return None


def k_exponential_witness(g: NaryGroup, k: int) -> Optional[int]:
    """Least idempotent a with f_(k)(a^(n-2), x, ..., a^(n-2), x, a) = x for all x."""
    if k < 1:
        raise ValueError("k must be positive")
    n = g.arity
    xs = np.arange(g.order)
    for a in range(g.order):
        if int(g.cube[(a,) * n]) != a:
            continue
        args = ([a] * (n - 2) + [xs]) * k + [a]
        if np.array_equal(fold(g.table, args), xs):
            return a
    return None


def special_forms(g, which):
    """Dispatch: "alternating", ("exponential", exponents), ("k_exponential", k)."""
    if which == "alternating":
        return is_alternating(g)
    name, arg = which
    if name == "exponential":
        return exponential_form(g, arg)
    if name == "k_exponential":
        return k_exponential_witness(g, arg)
    raise ValueError(f"unknown form {which!r}")


def semiabelian_via_retracts(g: NaryGroup) -> bool:
    return all(retract(g, a).is_abelian for a in range(g.order))


__all__ = [
    "HgAlgebra", "HgInvariantError", "CongruenceError", "CyclicClass",
    "retract", "term_operations", "hg_validate", "hg_decompose", "hg_construct", "hg_construct_table",
    "isomorphic", "isomorphic_bruteforce", "canonical_form", "relabelings",
    "cyclic_family", "cyclic_members", "classify_cyclic",
    "is_idempotent", "alternating_anchor", "is_alternating", "exponential_form",
    "k_exponential_witness", "special_forms", "semiabelian_via_retracts",
]
