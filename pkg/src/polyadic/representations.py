"""Bi-element (left, right, middle) representations of n-ary groups on the
group algebra, diagonal n-ary groups and n-ary substitution groups.

Matrices act on columns: entry (i, j) is 1 exactly when basis vector j is sent
to basis vector i, so ``A @ B`` applies ``B`` first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .core import GuardError, NaryGroup, NaryTable
from .groups import GroupTable
from .hg import retract


class RepMatrix:
    """An exact integer square matrix, immutable."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    def __setattr__(self, name, value):
        raise AttributeError("RepMatrix is immutable")

    @classmethod
    def from_perm(cls, images: Sequence[int]) -> "RepMatrix":
        k = len(images)
        a = np.zeros((k, k), dtype=np.int64)
        a[np.asarray(images, dtype=np.int64), np.arange(k)] = 1
        return cls(a)

    @classmethod
    def identity(cls, k: int) -> "RepMatrix":
        return cls(np.eye(k, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_permutation(self) -> bool:
        a = self.entries
        return bool(((a == 0) | (a == 1)).all() and (a.sum(axis=0) == 1).all() and (a.sum(axis=1) == 1).all())

    @property
    def perm(self) -> tuple[int, ...]:
        """Image of each basis vector; only for permutation matrices."""
        if not self.is_permutation():
            raise ValueError("not a permutation matrix")
        return tuple(int(i) for i in self.entries.argmax(axis=0))

    def complex(self) -> np.ndarray:
        return self.entries.astype(complex)

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        return RepMatrix(self.entries @ other.entries)

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"RepMatrix({self.entries.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def eigenvalues(m: RepMatrix) -> np.ndarray:
    ev = np.linalg.eigvals(m.complex())
    return ev[np.lexsort((ev.imag, ev.real))]


def char_poly(m: RepMatrix) -> list[int]:
    """Coefficients of det(tI - M), leading first, by Faddeev-LeVerrier."""
    a = [[Fraction(int(v)) for v in row] for row in m.entries]
    k = len(a)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        prev = [[mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(k)] for i in range(k)]
        mk = [[sum(a[i][t] * prev[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        coeffs.append(-sum(mk[i][i] for i in range(k)) / step)
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def change_basis(m: RepMatrix, basis: np.ndarray) -> np.ndarray:
    """Q^H M Q for a matrix Q whose columns are the new basis."""
    q = np.asarray(basis, dtype=complex)
    return q.conj().T @ m.complex() @ q


# -- regular representations ---------------------------------------------------

def _tuple(g: NaryGroup, a: Sequence[int], length: int) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != length:
        raise ValueError(f"expected {length} elements, got {len(a)}")
    if any(not 0 <= x < g.order for x in a):
        raise ValueError("element out of range")
    return a


def left_regular(g: NaryGroup, a: Sequence[int]) -> RepMatrix:
    """Matrix of y -> f(a_1 .. a_{n-1}, y)."""
    a = _tuple(g, a, g.arity - 1)
    return RepMatrix.from_perm([int(v) for v in g.cube[a]])


def right_regular(g: NaryGroup, a: Sequence[int]) -> RepMatrix:
    """Matrix of y -> f(y, a_1 .. a_{n-1})."""
    a = _tuple(g, a, g.arity - 1)
    return RepMatrix.from_perm([int(v) for v in g.cube[(slice(None),) + a]])


def middle_regular(g: NaryGroup, a: int, b: int, j: int = 2) -> RepMatrix:
    """Matrix of y -> f(a, y, b) for ternary g.

    For larger arity ``a`` and ``b`` are tuples filling the slots before and
    after position ``j`` (2 <= j <= n-1); no axioms are checked there.
    """
    n = g.arity
    if n == 3:
        pre, post = _tuple(g, [a], 1), _tuple(g, [b], 1)
    else:
        if not 2 <= j <= n - 1:
            raise ValueError(f"middle slot must lie in 2..{n - 1}")
        pre, post = _tuple(g, a, j - 1), _tuple(g, b, n - j)
    return RepMatrix.from_perm([int(v) for v in g.cube[pre + (slice(None),) + post]])


@dataclass
class BiElementRep:
    kind: str
    source: NaryGroup
    matrices: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("left", "right", "middle"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "middle" and self.source.arity != 3:
            raise ValueError("middle representations are ternary only")

    def __getitem__(self, key) -> RepMatrix:
        return self.matrices[tuple(key)]

    def keys(self):
        if self.kind == "middle":
            return itertools.product(range(self.source.order), repeat=2)
        return itertools.product(range(self.source.order), repeat=self.source.arity - 1)


def regular_rep(g: NaryGroup, kind: str) -> BiElementRep:
    build = {"left": left_regular, "right": right_regular, "middle": lambda g, ab: middle_regular(g, *ab)}[kind]
    r = BiElementRep(kind, g)
    r.matrices = {key: build(g, key) for key in r.keys()}
    return r


def rep_axiom_failure(r: BiElementRep) -> Optional[tuple]:
    """The first violated axiom instance as (axiom, arguments), or None."""
    g = r.source
    n, k = g.arity, g.order
    bar = g.skew_map
    dim = next(iter(r.matrices.values())).dim if r.matrices else k
    ident = RepMatrix.identity(dim)
    if r.kind == "middle":
        for a, b in itertools.product(range(k), repeat=2):
            inv = r[(bar[a], bar[b])]
            if r[(a, b)] @ inv != ident or inv @ r[(a, b)] != ident:
                return ("pm1", (a, b))
        for a3, b3, a2, b2, a1, b1 in itertools.product(range(k), repeat=6):
            lhs = r[(a3, b3)] @ r[(a2, b2)] @ r[(a1, b1)]
            if lhs != r[(g(a3, a2, a1), g(b1, b2, b3))]:
                return ("pm", (a3, b3, a2, b2, a1, b1))
        return None
    for a in range(k):
        for j in range(1, n):
            key = (a,) * (j - 1) + (bar[a],) + (a,) * (n - j - 1)
            if r[key] != ident:
                return ("lr2", (a, j))
    keys = list(r.keys())
    for a in keys:
        for b in keys:
            if r.kind == "left":
                lhs = r[a] @ r[b]
                rhs = r[(g(*a, b[0]),) + b[1:]]
            else:
                # right action: first a, then b
                lhs = r[b] @ r[a]
                rhs = r[a[:-1] + (g(a[-1], *b),)]
            if lhs != rhs:
                return ("lr1", (a, b))
    return None


def check_rep_axioms(r: BiElementRep) -> bool:
    return rep_axiom_failure(r) is None


def two_element_reduce(g: NaryGroup, a: Sequence[int], b: int) -> tuple[int, int]:
    """(b, c) with Pi^L(a_1..a_{n-1}) = Pi^L(b^(n-2), c)."""
    n = g.arity
    a = _tuple(g, a, n - 1)
    target = g.cube[a]
    col = g.cube[(b,) * (n - 2) + (slice(None), 0)]
    cs = np.flatnonzero(col == target[0])
    assert len(cs) == 1
    c = int(cs[0])
    # equal left actions iff the products agree at every x
    if not np.array_equal(g.cube[(b,) * (n - 2) + (c,)], target):
        raise AssertionError("two-element reduction does not reproduce the action")
    return b, c


def retract_representation(r: BiElementRep, a: int) -> list[RepMatrix]:
    """pi(x) = Pi^L(a^(n-2), x), checked to be a representation of ret_a."""
    if r.kind != "left":
        raise ValueError("needs a left representation")
    g = r.source
    n, k = g.arity, g.order
    pi = [r[(a,) * (n - 2) + (x,)] for x in range(k)]
    R = retract(g, a)
    if pi[g.skew_map[a]] != RepMatrix.identity(pi[0].dim):
        raise AssertionError("pi(abar) is not the identity")
    for x, y in itertools.product(range(k), repeat=2):
        if pi[x] @ pi[y] != pi[R.mul(x, y)]:
            raise AssertionError(f"pi is not multiplicative at ({x}, {y})")
    return pi


def lrep_factorization_holds(r: BiElementRep, pi: Sequence[RepMatrix]) -> bool:
    """Pi^L(x_1..x_{n-1}) = pi(x_1) ... pi(x_{n-1}) for every tuple."""
    for key in r.keys():
        m = pi[key[0]]
        for x in key[1:]:
            m = m @ pi[x]
        if m != r[key]:
            return False
    return True


def gamma_identity_check(g: NaryGroup, sigma: Union[Callable[[int, int], int], Mapping],
                         gammas: Optional[Mapping[int, RepMatrix]] = None) -> bool:
    """gamma_i gamma_j gamma_k = gamma_f(i,j,k), where gamma_sigma(a,b) = Pi^M(a,b).

    ``gammas`` replaces the matrices built from the regular middle
    representation (used to probe the identity with altered data).
    """
    if g.arity != 3:
        raise ValueError("gamma identity is for ternary groups")
    k = g.order
    sig = sigma if callable(sigma) else (lambda a, b: sigma[(a, b)])
    if gammas is None:
        gammas = {}
        for a, b in itertools.product(range(k), repeat=2):
            lab = int(sig(a, b))
            m = middle_regular(g, a, b)
            if gammas.setdefault(lab, m) != m:
                raise ValueError(f"sigma is not constant on middle-representation classes (label {lab})")
    labels = sorted(gammas)
    for i, j, l in itertools.product(labels, repeat=3):
        t = g(i, j, l)
        if t not in gammas or gammas[i] @ gammas[j] @ gammas[l] != gammas[t]:
            return False
    return True


# -- diagonal and substitution groups --------------------------------------

def diagonal_group(g: NaryGroup) -> NaryGroup:
    """The skew product on (n-1)-tuples: component r uses row i at column
    r + i - 1 (cyclically) for rows 1..n-1 and row n at column r."""
    n, k = g.arity, g.order
    m = n - 1
    K = k**m
    if K**n > 2**20:
        raise GuardError("table-size", f"(k^(n-1))^n = {K}^{n} exceeds 2^20")
    weights = k ** np.arange(m - 1, -1, -1)
    digits = (np.arange(K)[:, None] // weights) % k  # digits[x, col]
    grid = np.indices((K,) * n).reshape(n, -1)
    out = np.zeros(grid.shape[1], dtype=np.int64)
    for r in range(m):
        args = [digits[grid[i], (r + i) % m] for i in range(m)] + [digits[grid[m], r]]
        out = out * k + g.cube[tuple(args)]
    return NaryGroup(NaryTable(n, K, out))


def diagonal_encode(k: int, xs: Sequence[int]) -> int:
    v = 0
    for x in xs:
        v = v * k + x
    return v


def substitution_group(m: int, n: int) -> tuple[NaryGroup, list[tuple[tuple[int, ...], ...]]]:
    """n-ary substitutions on n-1 sets of size m, under n-fold superposition.

    A carrier element is (s_1, ..., s_{n-1}) with s_i : A_i -> A_{i+1}
    (indices mod n-1).  The product of n of them has components
    A_i -> A_{i+n} = A_{i+1}, composed along the path starting at A_i.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    perms = list(itertools.permutations(range(m)))
    carrier = list(itertools.product(perms, repeat=n - 1))
    N = len(carrier)
    if N**n > 2**20:
        raise GuardError("table-size", f"{N}^{n} exceeds 2^20")
    index = {s: i for i, s in enumerate(carrier)}
    w = n - 1
    vals = []
    for args in itertools.product(carrier, repeat=n):
        comps = []
        for i in range(w):
            out = []
            for x in range(m):
                y = x
                for step, s in enumerate(args):
                    y = s[(i + step) % w][y]
                out.append(y)
            comps.append(tuple(out))
        vals.append(index[tuple(comps)])
    return NaryGroup(NaryTable(n, N, vals)), carrier
