"""Term operations of commutative HG-algebras and G-/M-independence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import GuardError, NaryGroup
from .hg import HgAlgebra

UNARY_ORDER_LIMIT = 8
SET_SIZE_LIMIT = 5
ORACLE_ORDER_LIMIT = 4
ORACLE_SET_LIMIT = 3


def _require_commutative(h: HgAlgebra):
    if not h.group.is_abelian:
        raise ValueError("independence is decided for commutative HG-algebras only")


@dataclass(frozen=True, eq=False)
class UnaryTerm:
    """g(x) = sum_l m_l phi^l(x) + k b; equal when equal as functions."""

    coeffs: tuple[int, ...]
    k: int
    values: tuple[int, ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, UnaryTerm) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def linear(self) -> bool:
        return self.k == 0


@dataclass(frozen=True)
class MultiTerm:
    """F(x_1..x_m) = sum g_i(x_i) + k b, with each g_i linear."""

    parts: tuple[UnaryTerm, ...]
    k: int

    def evaluate(self, h: HgAlgebra, xs: Sequence[int]) -> int:
        G = h.group
        acc = G.power(h.b, self.k)
        for g, x in zip(self.parts, xs):
            acc = G.mul(acc, g(x))
        return acc


def _phi_powers(h: HgAlgebra) -> list[np.ndarray]:
    ph = np.asarray(h.phi)
    out = [np.arange(h.order)]
    while True:
        nxt = ph[out[-1]]
        if np.array_equal(nxt, out[0]):
            return out
        out.append(nxt)


def _b_multiples(h: HgAlgebra) -> list[int]:
    G = h.group
    out = [G.identity]
    while True:
        nxt = G.mul(out[-1], h.b)
        if nxt == G.identity:
            return out
        out.append(nxt)


def linear_terms(h: HgAlgebra) -> list[UnaryTerm]:
    """Distinct functions sum_l m_l phi^l, found as the span of the phi^l.

    Coefficients run over 0..exponent-1; breadth-first search records the
    first coefficient vector reaching each function."""
    _require_commutative(h)
    G = h.group
    gens = _phi_powers(h)
    r = len(gens)
    start = (tuple([0] * r), tuple([G.identity] * G.order))
    seen = {start[1]: start[0]}
    frontier = [start]
    while frontier:
        nxt = []
        for coeffs, vals in frontier:
            for l, p in enumerate(gens):
                v = tuple(G.mul(a, int(p[x])) for x, a in enumerate(vals))
                if v not in seen:
                    c = list(coeffs)
                    c[l] += 1
                    seen[v] = tuple(c)
                    nxt.append((tuple(c), v))
        frontier = nxt
    return sorted((UnaryTerm(c, 0, v) for v, c in seen.items()), key=lambda t: (sum(t.coeffs), t.coeffs))


def unary_terms(h: HgAlgebra) -> list[UnaryTerm]:
    """All distinct unary term functions g(x) = g_lin(x) + k b."""
    _require_commutative(h)
    if h.order > UNARY_ORDER_LIMIT:
        raise GuardError("unary-order", f"k = {h.order} exceeds {UNARY_ORDER_LIMIT}")
    G = h.group
    out: dict[tuple, UnaryTerm] = {}
    for kk, bk in enumerate(_b_multiples(h)):
        for t in linear_terms(h):
            v = tuple(G.mul(a, bk) for a in t.values)
            if v not in out:
                out[v] = UnaryTerm(t.coeffs, kk, v)
    return list(out.values())


# -- independent clone computations (used as oracles) --------------------------

def hg_clone(h: HgAlgebra, m: int) -> set[tuple[int, ...]]:
    """All m-ary term functions of (G, +, phi, b) as tables over G^m, by closure."""
    G = h.group
    k = G.order
    grid = np.indices((k,) * m).reshape(m, -1) if m else np.zeros((0, 1), dtype=np.int64)
    ph = np.asarray(h.phi)
    start = {tuple(int(v) for v in grid[i]) for i in range(m)}
    start.add(tuple([h.b] * grid.shape[1]))
    fns = set(start)
    frontier = set(start)
    while frontier:
        new = set()
        for f in frontier:
            fa = np.asarray(f)
            cand = [tuple(int(v) for v in ph[fa])]
            for g in fns:
                ga = np.asarray(g)
                cand.append(tuple(int(v) for v in G.array[fa, ga]))
                cand.append(tuple(int(v) for v in G.array[ga, fa]))
            for c in cand:
                if c not in fns:
                    new.add(c)
        fns |= new
        frontier = new
    return fns


def nary_unary_clone(g: NaryGroup, a: int) -> set[tuple[int, ...]]:
    """Unary term functions of (G, f, bar, a): closure of x and the constant a
    under the skew operation and f."""
    k, n = g.order, g.arity
    bar = np.asarray(g.skew_map)
    fns = {tuple(range(k)), tuple([a] * k)}
    while True:
        arrs = [np.asarray(f) for f in sorted(fns)]
        new = {tuple(int(v) for v in bar[f]) for f in arrs}
        for combo in itertools.product(arrs, repeat=n):
            new.add(tuple(int(v) for v in g.cube[combo]))
        if new <= fns:
            return fns
        fns |= new


def canonical_unary_tables(h: HgAlgebra) -> set[tuple[int, ...]]:
    return {t.values for t in unary_terms(h)}


# -- deciders ------------------------------------------------------------------

def _check_set(h: HgAlgebra, X: Iterable[int]) -> list[int]:
    xs = sorted(set(int(x) for x in X))
    if not xs:
        raise ValueError("X must be non-empty")
    if len(xs) > SET_SIZE_LIMIT:
        raise GuardError("set-size", f"|X| = {len(xs)} exceeds {SET_SIZE_LIMIT}")
    if any(not 0 <= x < h.order for x in xs):
        raise ValueError("element of X out of range")
    return xs


def _violation(h: HgAlgebra, X: Sequence[int], strong: bool) -> Optional[tuple]:
    """A distinct tuple and a vanishing sum sum g_i(a_i) + k b = 0 that is not
    trivial: some g_i(a_i) != 0 (or, if ``strong``, some g_i != 0 as a
    function) or k b != 0."""
    G = h.group
    e = G.identity
    lins = linear_terms(h)
    bs = _b_multiples(h)
    for m in range(1, len(X) + 1):
        for pts in itertools.permutations(X, m):
            # reachable (partial sum, nontrivial-so-far), with one witness each
            states = {(v, v != e): (kk,) for kk, v in enumerate(bs)}
            for a in pts:
                opts = {}
                for t in lins:
                    nontriv = (t.values != tuple([e] * G.order)) if strong else t(a) != e
                    opts.setdefault((t(a), nontriv), t.coeffs)
                nxt = {}
                for (s, flag), wit in states.items():
                    for (v, nt), c in opts.items():
                        nxt.setdefault((G.mul(s, v), flag or nt), wit + (c,))
                states = nxt
            if (e, True) in states:
                return pts, states[(e, True)]
    return None


def g_violation(h: HgAlgebra, X: Iterable[int]) -> Optional[tuple]:
    _require_commutative(h)
    return _violation(h, _check_set(h, X), strong=False)


def m_violation(h: HgAlgebra, X: Iterable[int]) -> Optional[tuple]:
    _require_commutative(h)
    return _violation(h, _check_set(h, X), strong=True)


def is_g_independent(h: HgAlgebra, X: Iterable[int]) -> bool:
    return g_violation(h, X) is None


def is_m_independent(h: HgAlgebra, X: Iterable[int]) -> bool:
    return m_violation(h, X) is None


def _unary_preservers(h: HgAlgebra, unary: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Maps p: G -> G with f(a) = g(a) => f(p a) = g(p a) for all unary f, g and all a."""
    k = h.order
    fs = np.asarray(sorted(unary))  # rows are functions
    out = []
    for p in itertools.product(range(k), repeat=k):
        ok = True
        for a in range(k):
            col, pcol = fs[:, a], fs[:, p[a]]
            # equal values at a must stay equal at p(a)
            for v in np.unique(col):
                if len(np.unique(pcol[col == v])) > 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(p)
    return out


def definitional_oracle(h: HgAlgebra, X: Iterable[int], mode: str, unary_family: str = "terms") -> bool:
    """Decide M- or G-independence straight from the map-extension definition.

    For each admissible p: X -> G, every pair of term functions agreeing at a
    tuple from X must agree at its image under p.  M admits all maps; G admits
    restrictions of maps G -> G preserving every equality f(a) = g(a) of unary
    term functions.  ``unary_family="linear"`` uses only the b-free unary
    terms sum m_l phi^l for that preservation condition.
    """
    _require_commutative(h)
    xs = sorted(set(int(x) for x in X))
    if not xs:
        raise ValueError("X must be non-empty")
    if h.order > ORACLE_ORDER_LIMIT or len(xs) > ORACLE_SET_LIMIT:
        raise GuardError("oracle-size", "oracle needs |G| <= 4 and |X| <= 3")
    k = h.order
    if mode == "M":
        maps = set(itertools.product(range(k), repeat=len(xs)))
    elif mode == "G":
        if unary_family == "terms":
            unary = hg_clone(h, 1)
        elif unary_family == "linear":
            unary = {t.values for t in linear_terms(h)}
        else:
            raise ValueError(f"unknown unary family {unary_family!r}")
        maps = {tuple(p[x] for x in xs) for p in _unary_preservers(h, unary)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pos = {x: i for i, x in enumerate(xs)}
    weights = None
    for m in range(1, len(xs) + 1):
        fns = np.asarray(sorted(hg_clone(h, m)))
        weights = k ** np.arange(m - 1, -1, -1)
        for pts in itertools.product(xs, repeat=m):
            col = fns[:, int(np.dot(pts, weights))]
            for p in maps:
                img = [p[pos[a]] for a in pts]
                pcol = fns[:, int(np.dot(img, weights))]
                for v in np.unique(col):
                    if len(np.unique(pcol[col == v])) > 1:
                        return False
    return True


def commutative_hg_algebras(G, n: int) -> list[HgAlgebra]:
    """Every HG-algebra (G, phi, b) of arity n over a commutative group G."""
    from .hg import HgInvariantError

    out = []
    for phi in G.automorphisms():
        for b in range(G.order):
            try:
                out.append(HgAlgebra(G, phi, b, n))
            except HgInvariantError:
                pass
    return out
