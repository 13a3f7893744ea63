"""Skew elements, n-ary powers and orders, and endomorphism criteria."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import GuardError, NaryGroup, NaryTable, check_axioms, fold

MEDIAL_EXHAUSTIVE_LIMIT = 2**20
ENDOMORPHISM_ORDER_LIMIT = 6


def skew(g: NaryGroup, x: int) -> int:
    return g.skew_map[x]


def power(g: NaryGroup, x: int, k: int) -> int:
    """The n-ary power x^<k>.

    x^<0> = x, x^<k+1> = f(x^(n-1), x^<k>), and for k > 0 the negative power
    x^<-k> is the z with f(x^<k-1>, x^(n-2), z) = x, found by scanning.
    """
    n = g.arity
    if k >= 0:
        y = x
        for _ in range(k):
            y = int(g.cube[(x,) * (n - 1) + (y,)])
        return y
    base = power(g, x, -k - 1)
    col = g.cube[(base,) + (x,) * (n - 2)]
    return int(np.flatnonzero(col == x)[0])


def order(g: NaryGroup, x: int) -> int:
    """The least k >= 1 with x^<k> = x."""
    n = g.arity
    y = x
    for k in range(1, g.order * (n - 1) + 2):
        y = int(g.cube[(x,) * (n - 1) + (y,)])
        if y == x:
            return k
    raise AssertionError("n-ary order search did not terminate")  # unreachable on a group


def skew_tower(g: NaryGroup, x: int, s: int) -> int:
    """x with the skew operation applied s times."""
    for _ in range(s):
        x = g.skew_map[x]
    return x


def s_m(n: int, m: int) -> int:
    """((2-n)^m - 1)/(n-1), exactly."""
    num = (2 - n) ** m - 1
    q, r = divmod(num, n - 1)
    assert r == 0
    return q


@dataclass(frozen=True)
class OrderProfile:
    element: int
    order: int
    tower_orders: tuple[int, ...]
    stabilized_value: int


def order_profile(g: NaryGroup, x: int) -> OrderProfile:
    orders = [order(g, x)]
    y = x
    while True:
        y = g.skew_map[y]
        o = order(g, y)
        if o == orders[-1]:
            break
        orders.append(o)
    return OrderProfile(x, orders[0], tuple(orders), orders[-1])


# -- semiabelian / medial ----------------------------------------------------

def is_semiabelian(g: NaryGroup) -> bool:
    """f(x_1^n) = f(x_n, x_2^{n-1}, x_1) for every tuple."""
    c = g.cube
    return bool(np.array_equal(c, np.swapaxes(c, 0, g.arity - 1)))


def medial_by_criterion(g: NaryGroup) -> bool:
    """Some a has f(x, a^(n-2), y) = f(y, a^(n-2), x) for all x, y."""
    n, k = g.arity, g.order
    xs = np.arange(k)
    for a in range(k):
        m = g.cube[(xs[:, None],) + (a,) * (n - 2) + (xs[None, :],)]
        if np.array_equal(m, m.T):
            return True
    return False


def medial_exhaustive(g: NaryGroup) -> bool:
    """The n x n matrix identity, read by rows versus by columns, on every matrix."""
    n, k = g.arity, g.order
    if k ** (n * n) > MEDIAL_EXHAUSTIVE_LIMIT:
        raise GuardError("medial-exhaustive", f"k^(n^2) = {k}^{n * n} exceeds 2^20")
    nv = n * n
    grid = [np.arange(k).reshape((1,) * i + (k,) + (1,) * (nv - 1 - i)) for i in range(nv)]
    var = lambda r, c: grid[r * n + c]
    rows = [g.cube[tuple(var(r, c) for c in range(n))] for r in range(n)]
    cols = [g.cube[tuple(var(r, c) for r in range(n))] for c in range(n)]
    return bool(np.array_equal(*np.broadcast_arrays(g.cube[tuple(rows)], g.cube[tuple(cols)])))


def is_medial(g: NaryGroup) -> bool:
    if g.order ** (g.arity ** 2) <= MEDIAL_EXHAUSTIVE_LIMIT:
        return medial_exhaustive(g)
    return medial_by_criterion(g)


# -- the skew map as an endomorphism ----------------------------------------

def _grid(k: int, nv: int):
    return [np.arange(k).reshape((1,) * i + (k,) + (1,) * (nv - 1 - i)) for i in range(nv)]


def is_endomorphism(g: NaryGroup, h: Sequence[int]) -> bool:
    hm = np.asarray(h)
    return bool(np.array_equal(hm[g.cube], g.cube[np.ix_(*([hm] * g.arity))]))


def _tower_map(g: NaryGroup, depth: int) -> list[int]:
    return [skew_tower(g, x, depth) for x in range(g.order)]


def _p8(g: NaryGroup, a: int) -> bool:
    n, k = g.arity, g.order
    bar = np.asarray(g.skew_map)
    x = np.arange(k).reshape(k, 1)
    y = np.arange(k).reshape(1, k)
    ab = int(bar[a])
    # (i) skew f(x, a^(n-2), y) = f(skew x, (skew a)^(n-2), skew y)
    lhs = bar[g.cube[(x,) + (a,) * (n - 2) + (y,)]]
    rhs = g.cube[(bar[x],) + (ab,) * (n - 2) + (bar[y],)]
    if not np.array_equal(lhs, rhs):
        return False
    # (ii) skew f(skew a, x, a^(n-2)) = f(skew skew a, skew x, (skew a)^(n-2))
    xs = np.arange(k)
    lhs = bar[g.cube[(ab, xs) + (a,) * (n - 2)]]
    rhs = g.cube[(int(bar[ab]), bar[xs]) + (ab,) * (n - 2)]
    return bool(np.array_equal(lhs, rhs))


def p8_condition_iii(g: NaryGroup, a: int) -> tuple[int, int, int]:
    """Both sides of the third condition and a^<n^2-3n+1>; all three coincide in any n-ary group."""
    n = g.arity
    ab = g.skew_map[a]
    lhs = g.skew_map[int(g.cube[(ab,) * n])]
    rhs = int(g.cube[(g.skew_map[ab],) * n])
    return lhs, rhs, power(g, a, n * n - 3 * n + 1)


def _p9(g: NaryGroup) -> bool:
    n, k = g.arity, g.order
    c = g.cube
    x = np.arange(k).reshape(k, 1, 1)
    u = np.arange(k).reshape(1, k, 1)
    y = np.arange(k).reshape(1, 1, k)
    # f(u^(n-1), f(x^(n-2), u, u)) = f(f(x^(n-2), u, u), u^(n-1))
    w = c[(x,) * (n - 2) + (u, u)]
    if not np.array_equal(*np.broadcast_arrays(c[(u,) * (n - 1) + (w,)], c[(w,) + (u,) * (n - 1)])):
        return False
    # f(v^(n-2), u, u) = f(y^(n-2), f(u, z^(n-3), x, u), u)
    # with v = f(x, u^(n-2), y) and z = f(x, u^(n-1))
    v = c[(x,) + (u,) * (n - 2) + (y,)]
    lhs = c[(v,) * (n - 2) + (u, u)]
    z = c[(x,) + (u,) * (n - 1)]
    inner = c[(u,) + (z,) * (n - 3) + (x, u)]
    rhs = c[(y,) * (n - 2) + (inner, u)]
    return bool(np.array_equal(*np.broadcast_arrays(lhs, rhs)))


def _shchuchkin(g: NaryGroup, depth: int) -> bool:
    """The odd/even identity whose validity characterises the depth-k skew tower as an endomorphism.

    Every long product is evaluated on exactly the displayed argument list; the
    fold depth follows from its length.
    """
    n, k = g.arity, g.order
    r = (n - 2) ** depth
    t = g.table
    if depth % 2:
        grid = _grid(k, n + 2)
        args = [grid[0]] + [v for v in grid[1:n + 1] for _ in range(r)] + [grid[n + 1]]
        lhs = fold(t, args)
        w = g.cube[tuple(reversed(grid[1:n + 1]))]
        rhs = fold(t, [grid[0]] + [w] * r + [grid[n + 1]])
    else:
        grid = _grid(k, n)
        w = g.cube[tuple(grid)]
        lhs = fold(t, [w] * r)
        rhs = fold(t, [v for v in grid for _ in range(r)])
    return bool(np.array_equal(*np.broadcast_arrays(lhs, rhs)))


def skew_endomorphism_check(g: NaryGroup, mode: str = "direct", a: Optional[int] = None, depth: int = 1) -> bool:
    """Decide whether the (depth-fold) skew map is an endomorphism.

    ``direct`` tests the defining identity; ``p8`` the two conditions at a fixed
    ``a`` (any ``a`` when omitted); ``p9`` the two Sokhatsky identities;
    ``shchuchkin`` the odd/even identity at ``depth``.  p8 and p9 speak about
    depth 1 only.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if mode == "direct":
        return is_endomorphism(g, _tower_map(g, depth))
    if mode in ("p9", "shchuchkin") and g.arity < 3:
        raise ValueError(f"{mode} needs arity >= 3")
    if mode in ("p8", "p9") and depth != 1:
        raise ValueError(f"{mode} characterises depth 1 only")
    if mode == "p8":
        cands = range(g.order) if a is None else [a]
        return any(_p8(g, c) for c in cands)
    if mode == "p9":
        return _p9(g)
    if mode == "shchuchkin":
        return _shchuchkin(g, depth)
    raise ValueError(f"unknown mode {mode!r}")


def is_subgroup_set(g: NaryGroup, elems) -> bool:
    s = sorted(elems)
    sub = g.cube[np.ix_(*([np.asarray(s)] * g.arity))]
    return set(np.unique(sub).tolist()) <= set(s)


def g_chain(g: NaryGroup) -> list[frozenset]:
    """G, G^(1), G^(2), ... (images of the skew towers) up to the first repetition."""
    if not skew_endomorphism_check(g, "direct"):
        raise ValueError("skew map is not an endomorphism; the images need not be subgroups")
    chain = [frozenset(range(g.order))]
    while True:
        nxt = frozenset(g.skew_map[x] for x in chain[-1])
        if not is_subgroup_set(g, nxt):
            raise AssertionError("image of the skew tower is not closed under f")
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


# -- endomorphisms and the (n,2)-nearring -------------------------------------

def endomorphisms(g: NaryGroup) -> list[tuple[int, ...]]:
    """Every self-map h with h(f(x)) = f(h(x_1), .., h(x_n)), by filtering all k^k maps."""
    k = g.order
    if k > ENDOMORPHISM_ORDER_LIMIT:
        raise GuardError("endomorphism-order", f"k = {k} exceeds {ENDOMORPHISM_ORDER_LIMIT}")
    out = []
    # h(f(x^n)) = f(h(x)^n): prune on the image of each diagonal before the full scan
    diag = [int(g.cube[(x,) * g.arity]) for x in range(k)]
    for h in itertools.product(range(k), repeat=k):
        if any(h[diag[x]] != int(g.cube[(h[x],) * g.arity]) for x in range(k)):
            continue
        if is_endomorphism(g, h):
            out.append(h)
    return out


@dataclass(frozen=True)
class NearringReport:
    nary_group: bool
    closed: bool
    semigroup: bool
    left_distributive: bool
    right_distributive: bool

    @property
    def ok(self) -> bool:
        return all((self.nary_group, self.closed, self.semigroup, self.left_distributive, self.right_distributive))


def nearring_report(g: NaryGroup, endos: Sequence[Sequence[int]]) -> NearringReport:
    n = g.arity
    maps = [tuple(e) for e in endos]
    index = {m: i for i, m in enumerate(maps)}
    E = len(maps)
    if E ** n > 2**20:
        raise GuardError("nearring-size", f"|E|^n = {E}^{n} exceeds 2^20")
    arr = np.asarray(maps)

    def fhat(*hs):
        return tuple(int(v) for v in g.cube[tuple(arr[h] for h in hs)])

    def comp(p, q):  # p o q: apply q first
        return tuple(maps[p][maps[q][x]] for x in range(g.order))

    closed = True
    values = []
    for hs in itertools.product(range(E), repeat=n):
        img = fhat(*hs)
        if img not in index:
            closed = False
            break
        values.append(index[img])
    nary = False
    if closed:
        nary = check_axioms(NaryTable(n, E, values)).is_group
    compose_closed = all(comp(p, q) in index for p in range(E) for q in range(E))
    semigroup = compose_closed  # composition of maps is associative by construction
    left = right = closed and compose_closed
    if left:
        for y in range(E):
            for hs in itertools.product(range(E), repeat=n):
                fx = index[fhat(*hs)]
                if left and comp(y, fx) != fhat(*(index[comp(y, h)] for h in hs)):
                    left = False
                if right and comp(fx, y) != fhat(*(index[comp(h, y)] for h in hs)):
                    right = False
                if not (left or right):
                    break
    return NearringReport(nary, closed, semigroup, left, right)


def nearring_check(g: NaryGroup, endos: Sequence[Sequence[int]]) -> bool:
    return nearring_report(g, endos).ok
