"""Finite n-ary groupoids stored as Cayley hypercubes, and their axiom checks.

Elements are the integers ``0..k-1``.  The value of ``f(x1, ..., xn)`` lives at
flat index ``sum(xi * k**(n-i))``; internally the table is kept as a read-only
numpy array of shape ``(k,) * n`` so that whole families of products can be
evaluated by fancy indexing.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Callable, Iterator, Optional, Sequence, Union

import numpy as np

if TYPE_CHECKING:
    from .groups import GroupTable

TABLE_LIMIT = 2**20
ASSOC_WORK_LIMIT = 2**28
_CHUNK = 2**21


class GuardError(ValueError):
    """An exhaustive computation would exceed a documented size guard."""

    def __init__(self, guard: str, message: str):
        super().__init__(f"{guard}: {message}")
        self.guard = guard


class NotAGroupError(ValueError):
    def __init__(self, report: "AxiomReport"):
        super().__init__(f"table is not an n-ary group (witness {report.failure_witness})")
        self.report = report


def _dtype_for(k: int):
    return np.uint8 if k <= 256 else np.int32


class NaryTable:
    """An n-ary operation on ``{0..k-1}``.  Immutable."""

    __slots__ = ("_n", "_k", "_cube", "__dict__")

    def __init__(self, arity: int, order: int, values):
        n, k = int(arity), int(order)
        if n < 2:
            raise ValueError(f"arity must be >= 2, got {n}")
        if k < 1:
            raise ValueError(f"order must be >= 1, got {k}")
        if k**n > TABLE_LIMIT:
            raise GuardError("table-size", f"k^n = {k}^{n} exceeds 2^20")
        arr = np.asarray(values, dtype=np.int64).reshape(-1)
        if arr.size != k**n:
            raise ValueError(f"expected {k**n} table values, got {arr.size}")
        if arr.size and (arr.min() < 0 or arr.max() >= k):
            bad = int(np.flatnonzero((arr < 0) | (arr >= k))[0])
            raise ValueError(f"value {arr[bad]} at index {bad} outside 0..{k - 1}")
        cube = arr.astype(_dtype_for(k)).reshape((k,) * n)
        cube.flags.writeable = False
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_k", k)
        object.__setattr__(self, "_cube", cube)

    def __setattr__(self, name, value):
        if name in ("_n", "_k", "_cube", "arity", "order"):
            raise AttributeError("NaryTable is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_function(cls, arity: int, order: int, fn: Callable[..., int]) -> "NaryTable":
        values = [fn(*xs) % order for xs in itertools.product(range(order), repeat=arity)]
        return cls(arity, order, values)

    @property
    def arity(self) -> int:
        return self._n

    @property
    def order(self) -> int:
        return self._k

    @property
    def cube(self) -> np.ndarray:
        return self._cube

    @cached_property
    def table(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._cube.reshape(-1))

    def __call__(self, *args: int) -> int:
        return evaluate(self, args)

    def __eq__(self, other):
        if not isinstance(other, NaryTable):
            return NotImplemented
        return (self._n, self._k) == (other._n, other._k) and np.array_equal(self._cube, other._cube)

    def __hash__(self):
        return hash((self._n, self._k, self._cube.tobytes()))

    def __lt__(self, other: "NaryTable"):
        return (self._n, self._k, self.table) < (other._n, other._k, other.table)

    def __repr__(self):
        return f"NaryTable(arity={self._n}, order={self._k})"

    def relabel(self, perm: Sequence[int]) -> "NaryTable":
        """Transport the operation along the bijection ``x -> perm[x]``."""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(p)
        inv[p] = np.arange(self._k)
        cube = self._cube[np.ix_(*([inv] * self._n))]
        return NaryTable(self._n, self._k, p[cube].reshape(-1))


def evaluate(t: NaryTable, args: Sequence[int]) -> int:
    if len(args) != t.arity:
        raise ValueError(f"expected {t.arity} arguments, got {len(args)}")
    for a in args:
        if not 0 <= a < t.order:
            raise ValueError(f"element {a} outside 0..{t.order - 1}")
    return int(t.cube[tuple(args)])


def apply(t: NaryTable, args):
    """Vectorised f on broadcastable index arrays (or ints)."""
    return t.cube[tuple(args)]


def fold(t: NaryTable, args):
    """Left-nested long product f_(j) on broadcastable arrays; no range checks."""
    n = t.arity
    m = len(args)
    if m < 1 or (m - 1) % (n - 1):
        raise ValueError(f"long product needs j(n-1)+1 arguments, got {m} for n={n}")
    if m == 1:
        return args[0]
    acc = t.cube[tuple(args[:n])]
    for pos in range(n, m, n - 1):
        acc = t.cube[(acc, *args[pos:pos + n - 1])]
    return acc


def long_product(t: NaryTable, args: Sequence[int]) -> int:
    """f_(j)(x_1 .. x_{j(n-1)+1}) = f(f(..f(f(x_1^n), x_{n+1}^{2n-1})..)..)."""
    for a in args:
        if not 0 <= a < t.order:
            raise ValueError(f"element {a} outside 0..{t.order - 1}")
    return int(fold(t, list(args)))


# -- associativity ---------------------------------------------------------

def _check_work(t: NaryTable):
    work = t.order ** (2 * t.arity - 1)
    if work > ASSOC_WORK_LIMIT:
        raise GuardError("associativity-work", f"k^(2n-1) = {work} exceeds 2^28")


def _chunks(k: int, nvars: int) -> Iterator[tuple[tuple[int, ...], list]]:
    """Split the k^nvars grid into (prefix, open-grid suffix) chunks."""
    fixed = 0
    while fixed < nvars and k ** (nvars - fixed) > _CHUNK:
        fixed += 1
    free = nvars - fixed
    dt = _dtype_for(k)
    grids = [np.arange(k, dtype=dt).reshape((1,) * i + (k,) + (1,) * (free - 1 - i)) for i in range(free)]
    for prefix in itertools.product(range(k), repeat=fixed):
        yield prefix, list(prefix) + grids


def _bracket(t: NaryTable, vars_, i: int):
    """Value of f(x_1^{i-1}, f(x_i^{n+i-1}), x_{n+i}^{2n-1}) with 1-based i."""
    n = t.arity
    inner = t.cube[tuple(vars_[i - 1:i - 1 + n])]
    return t.cube[tuple(vars_[:i - 1]) + (inner,) + tuple(vars_[i - 1 + n:])]


def _witness(prefix, mask) -> tuple[int, ...]:
    idx = np.unravel_index(int(np.flatnonzero(mask)[0]), mask.shape)
    return tuple(prefix) + tuple(int(v) for v in idx)


@dataclass(frozen=True)
class _AssocProfile:
    # (i, j) -> None if the law holds, else a failing (2n-1)-tuple
    failures: dict


# equal tables share one profile; tables are immutable so content is a safe key
_PROFILE_CACHE: dict = {}
_PROFILE_CACHE_SIZE = 512


def _assoc_profile(t: NaryTable) -> _AssocProfile:
    cached = t.__dict__.get("_assoc")
    if cached is not None:
        return cached
    key = (t.arity, t.order, t.cube.tobytes())
    cached = _PROFILE_CACHE.get(key)
    if cached is not None:
        t.__dict__["_assoc"] = cached
        return cached
    _check_work(t)
    n, k = t.arity, t.order
    nvars = 2 * n - 1
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    failures = {p: None for p in pairs}
    for prefix, vars_ in _chunks(k, nvars):
        shape = (k,) * (nvars - len(prefix))
        vals = [np.broadcast_to(_bracket(t, vars_, i), shape) for i in range(1, n + 1)]
        for (i, j) in pairs:
            if failures[(i, j)] is None:
                bad = vals[i - 1] != vals[j - 1]
                if bad.any():
                    failures[(i, j)] = _witness(prefix, bad)
    prof = _AssocProfile(failures)
    t.__dict__["_assoc"] = prof
    if len(_PROFILE_CACHE) >= _PROFILE_CACHE_SIZE:
        _PROFILE_CACHE.pop(next(iter(_PROFILE_CACHE)))
    _PROFILE_CACHE[key] = prof
    return prof


def _check_positions(t: NaryTable, *pos: int):
    for p in pos:
        if not 1 <= p <= t.arity:
            raise ValueError(f"position {p} outside 1..{t.arity}")


def associativity_failure(t: NaryTable, i: int, j: int) -> Optional[tuple[int, ...]]:
    """A (2n-1)-tuple on which the (i,j)-associative law fails, or None."""
    _check_positions(t, i, j)
    if not i < j:
        raise ValueError(f"need i < j, got ({i}, {j})")
    return _assoc_profile(t).failures[(i, j)]


def is_ij_associative(t: NaryTable, i: int, j: int) -> bool:
    return associativity_failure(t, i, j) is None


def is_associative(t: NaryTable) -> bool:
    return all(w is None for w in _assoc_profile(t).failures.values())


# -- solvability -----------------------------------------------------------

class Solvability(enum.Enum):
    NONE = "none"
    SOME = "some"
    UNIQUE = "unique"


def _lines(t: NaryTable, i: int) -> np.ndarray:
    """Rows are the maps z -> f(x_1^{i-1}, z, x_{i+1}^n), other arguments ordered lexicographically."""
    k = t.order
    return np.moveaxis(t.cube, i - 1, -1).reshape(-1, k)


def solvability_failure(t: NaryTable, i: int) -> Optional[tuple[int, ...]]:
    """A tuple (x0, x_1..x_n without x_i) whose equation has no solution, or None.

    On a finite carrier a line z -> f(.., z, ..) hits every x0 iff it is a
    bijection, so existence everywhere already forces uniqueness.
    """
    _check_positions(t, i)
    k = t.order
    rows = _lines(t, i)
    ok = np.sort(rows, axis=1) == np.arange(k)
    good = ok.all(axis=1)
    if good.all():
        return None
    r = int(np.flatnonzero(~good)[0])
    others = np.unravel_index(r, (k,) * (t.arity - 1)) if t.arity > 1 else ()
    missing = sorted(set(range(k)) - set(int(v) for v in rows[r]))[0]
    return (missing,) + tuple(int(v) for v in others)


def solvability(t: NaryTable, i: int) -> Solvability:
    """Classify ``f(x_1^{i-1}, z, x_{i+1}^n) = x0`` over all choices of the other arguments."""
    # SOME would need every equation solvable with a repeated solution, which a
    # finite line cannot do; it is kept for the report type only.
    return Solvability.UNIQUE if solvability_failure(t, i) is None else Solvability.NONE


def is_uniquely_solvable(t: NaryTable, i: int) -> bool:
    return solvability(t, i) is Solvability.UNIQUE


@dataclass(frozen=True)
class AxiomReport:
    associative: dict
    solvable: dict
    is_group: bool
    failure_witness: Optional[tuple[int, ...]] = None
    failure_kind: Optional[str] = None


def check_axioms(t: NaryTable) -> AxiomReport:
    n = t.arity
    solv = {i: solvability(t, i) for i in range(1, n + 1)}
    witness = kind = None
    for i in range(1, n + 1):
        if solv[i] is not Solvability.UNIQUE:
            witness, kind = solvability_failure(t, i), f"solvability at {i}"
            break
    # a Latin hypercube failure is cheap to find; skip the k^(2n-1) scan then
    if witness is not None and t.order ** (2 * n - 1) > ASSOC_WORK_LIMIT:
        return AxiomReport({}, solv, False, witness, kind)
    prof = _assoc_profile(t)
    assoc = {p: w is None for p, w in prof.failures.items()}
    if witness is None:
        for p, w in prof.failures.items():
            if w is not None:
                witness, kind = w, f"({p[0]},{p[1]})-associativity"
                break
    is_group = all(assoc.values()) and all(s is Solvability.UNIQUE for s in solv.values())
    return AxiomReport(assoc, solv, is_group, witness, kind)


# -- reduced axiom systems --------------------------------------------------

_CRIT_RE = re.compile(r"^\s*(dgg_a|dgg_b|dgg_c|celakoski|galmak)\s*(?:\(([\d,\s]*)\))?\s*$")


def parse_criterion(text) -> tuple:
    if isinstance(text, tuple):
        return text
    m = _CRIT_RE.match(text)
    if not m:
        raise ValueError(f"unknown criterion {text!r}")
    params = tuple(int(p) for p in m.group(2).split(",")) if m.group(2) else ()
    return (m.group(1),) + params


def criteria_for(n: int) -> list[tuple]:
    """Every reduced axiom system applicable at arity n, with all parameter choices."""
    out = [("dgg_a",), ("dgg_b",)]
    if n >= 4:
        out.append(("dgg_c",))
    out += [("celakoski", k) for k in range(1, n - 1)]
    out += [("galmak", i, j) for i in range(1, n) for j in range(1, n)]
    return out


def _identity_rows(t: NaryTable, at_end: bool) -> np.ndarray:
    """Boolean array over the (n-1)-prefixes p: whether b -> f(p, b) (or f(b, p)) is the identity."""
    k, n = t.order, t.arity
    cube = t.cube if at_end else np.moveaxis(t.cube, 0, -1)
    rows = cube.reshape(-1, k)
    return (rows == np.arange(k)).all(axis=1).reshape((k,) * (n - 1))


def _celakoski(t: NaryTable, kk: int) -> bool:
    n, k = t.arity, t.order
    if not 1 <= kk <= n - 2:
        raise ValueError(f"celakoski parameter must lie in 1..{n - 2}, got {kk}")
    if not is_associative(t):
        return False
    # f(a_1^k, x_{k+1}^{n-1}, b) = b for all b
    left = _identity_rows(t, at_end=True).reshape(k**kk, -1).any(axis=1)
    # f(b, y_{k+1}^{n-1}, a_1^k) = b: after moving b last, the prefix is (y, a)
    right = _identity_rows(t, at_end=False)
    right = np.moveaxis(right.reshape((k,) * (n - 1)), list(range(n - 1 - kk, n - 1)), list(range(kk)))
    right = right.reshape(k**kk, -1).any(axis=1)
    return bool(left.all() and right.all())


def _galmak(t: NaryTable, i: int, j: int) -> bool:
    n, k = t.arity, t.order
    if not (1 <= i <= n - 1 and 1 <= j <= n - 1):
        raise ValueError(f"galmak parameters must lie in 1..{n - 1}, got ({i}, {j})")
    if not is_associative(t):
        return False
    a = np.arange(k).reshape(k, 1)
    b = np.arange(k).reshape(1, k)
    xs = np.arange(k).reshape(k, 1, 1)
    aa, bb = a[None], b[None]
    lhs = t.cube[(xs,) + (bb,) * (i - 1) + (aa,) * (n - i)]
    ok_x = (lhs == bb).any(axis=0)
    rhs = t.cube[(aa,) * (n - j) + (bb,) * (j - 1) + (xs,)]
    ok_y = (rhs == bb).any(axis=0)
    return bool(ok_x.all() and ok_y.all())


def minimal_axiom_check(t: NaryTable, criterion) -> bool:
    """Evaluate one reduced axiom system literally, by exhaustive search.

    ``criterion`` is ``"dgg_a"``, ``"dgg_b"``, ``"dgg_c"``, ``("celakoski", k)``,
    ``("galmak", i, j)`` or the string forms ``"celakoski(1)"``, ``"galmak(1,2)"``.
    The dgg systems only assume the laws they name; the other two assume an
    n-ary semigroup, which is checked as part of the hypothesis.
    """
    name, *params = parse_criterion(criterion)
    n = t.arity
    if name == "dgg_a":
        return (is_ij_associative(t, 1, 2) and is_uniquely_solvable(t, n)
                and is_uniquely_solvable(t, 1))
    if name == "dgg_b":
        return (is_ij_associative(t, n - 1, n) and is_uniquely_solvable(t, 1)
                and is_uniquely_solvable(t, n))
    if name == "dgg_c":
        if n < 4:
            raise ValueError("dgg_c needs arity >= 4")
        cands = params or list(range(2, n - 1))
        for i in cands:
            if not 2 <= i <= n - 2:
                raise ValueError(f"dgg_c position must lie in 2..{n - 2}, got {i}")
            if (is_ij_associative(t, i, i + 1) and is_uniquely_solvable(t, i)
                    and any(is_uniquely_solvable(t, j) for j in range(i + 1, n + 1))):
                return True
        return False
    if name == "celakoski":
        if len(params) != 1:
            raise ValueError("celakoski takes one parameter")
        return _celakoski(t, params[0])
    if name == "galmak":
        if len(params) != 2:
            raise ValueError("galmak takes two parameters")
        return _galmak(t, *params)
    raise ValueError(f"unknown criterion {name!r}")


# -- validated groups -------------------------------------------------------

def _skew_candidates(t: NaryTable) -> list[list[int]]:
    n, k = t.arity, t.order
    xs = np.arange(k)
    rows = t.cube[(xs[:, None],) * (n - 1) + (xs[None, :],)]
    return [list(np.flatnonzero(rows[x] == x)) for x in range(k)]


class NaryGroup:
    """A table validated as an n-ary group, with its skew map."""

    __slots__ = ("table", "skew_map", "report", "__dict__")

    def __init__(self, table: NaryTable, report: Optional[AxiomReport] = None):
        report = report if report is not None else check_axioms(table)
        if not report.is_group:
            raise NotAGroupError(report)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "report", report)
        skew = tuple(int(c[0]) for c in _skew_candidates(table))
        object.__setattr__(self, "skew_map", skew)

    def __setattr__(self, name, value):
        raise AttributeError("NaryGroup is immutable")

    @classmethod
    def from_function(cls, arity: int, order: int, fn) -> "NaryGroup":
        return cls(NaryTable.from_function(arity, order, fn))

    @property
    def arity(self) -> int:
        return self.table.arity

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def cube(self) -> np.ndarray:
        return self.table.cube

    def __call__(self, *args: int) -> int:
        return evaluate(self.table, args)

    def __eq__(self, other):
        return isinstance(other, NaryGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __lt__(self, other):
        return self.table < other.table

    def __repr__(self):
        return f"NaryGroup(arity={self.arity}, order={self.order})"

    @cached_property
    def neutral_set(self) -> frozenset:
        return frozenset(neutral_elements(self))


def as_table(g: Union[NaryGroup, NaryTable]) -> NaryTable:
    return g.table if isinstance(g, NaryGroup) else g


def neutral_elements(g: Union[NaryGroup, NaryTable]) -> set:
    """Elements e with f(e^(i-1), x, e^(n-i)) = x for every x and every slot i."""
    t = as_table(g)
    n, k = t.arity, t.order
    xs = np.arange(k)
    out = set()
    for e in range(k):
        if all(np.array_equal(t.cube[(e,) * (i - 1) + (xs,) + (e,) * (n - i)], xs) for i in range(1, n + 1)):
            out.add(e)
    return out


def is_reducible(g: NaryGroup) -> Optional["GroupTable"]:
    """The binary group x.y = f(x, e^(n-2), y) at the least neutral e, if any."""
    from .groups import GroupTable

    neutral = sorted(neutral_elements(g))
    if not neutral:
        return None
    e = neutral[0]
    t = g.table
    k, n = t.order, t.arity
    xs = np.arange(k)
    mul = t.cube[(xs[:, None],) + (e,) * (n - 2) + (xs[None, :],)]
    return GroupTable(k, mul.reshape(-1))


# -- identity systems with a unary operation -----------------------------------

def _hat_map(t: NaryTable) -> list[int]:
    n, k = t.arity, t.order
    xs = np.arange(k)
    vals = fold(t, [xs[:, None]] * (2 * n - 2) + [xs[None, :]])
    out = []
    for x in range(k):
        sols = np.flatnonzero(vals[x] == x)
        if len(sols) != 1:
            raise ValueError(f"f_(2)(x^(2n-2), z) = x has {len(sols)} solutions for x = {x}")
        out.append(int(sols[0]))
    return out


def _dornte(t: NaryTable, bar: Sequence[int], i: int, j: int) -> bool:
    n, k = t.arity, t.order
    if not (2 <= i <= n and 2 <= j <= n):
        raise ValueError(f"Dornte positions must lie in 2..{n}, got ({i}, {j})")
    x = np.arange(k).reshape(k, 1)
    y = np.arange(k).reshape(1, k)
    s = np.asarray(bar)[x]
    right = t.cube[(x,) * (i - 2) + (s,) + (x,) * (n - i) + (y,)]
    left = t.cube[(y,) + (x,) * (n - j) + (s,) + (x,) * (j - 2)]
    yy = np.broadcast_to(y, (k, k))
    return bool(np.array_equal(right, yy) and np.array_equal(left, yy))


def _hat_identities(t: NaryTable, hat: Sequence[int], i: int, j: int) -> bool:
    n, k = t.arity, t.order
    if not (2 <= i <= n and 2 <= j <= n):
        raise ValueError(f"hat positions must lie in 2..{n}, got ({i}, {j})")
    x = np.arange(k).reshape(k, 1)
    y = np.arange(k).reshape(1, k)
    h = np.asarray(hat)[x]
    first = fold(t, [y] + [x] * (i - 2) + [h] + [x] * (2 * n - i - 1))
    second = fold(t, [x] * (2 * n - 1 - j) + [h] + [x] * (j - 2) + [y])
    yy = np.broadcast_to(y, (k, k))
    return bool(np.array_equal(first, yy) and np.array_equal(second, yy))


def identity_suite(g: Union[NaryGroup, NaryTable], which, skew_map: Optional[Sequence[int]] = None) -> bool:
    """Check an identity system over all elements.

    ``which`` is ``("dornte", i, j)``, ``("variety", i, j)`` (Dornte plus the
    (1,2)-associative identity) or ``("hat", i, j)``.  ``skew_map`` overrides the
    unary operation used by the Dornte-type systems; for a bare table without an
    override the skew candidate is solved from its defining equation.
    """
    name, i, j = which
    t = as_table(g)
    if name == "hat":
        return _hat_identities(t, _hat_map(t), i, j)
    if skew_map is None:
        if isinstance(g, NaryGroup):
            skew_map = g.skew_map
        else:
            cands = _skew_candidates(t)
            if any(len(c) != 1 for c in cands):
                raise ValueError("skew equation is not uniquely solvable")
            skew_map = [c[0] for c in cands]
    if len(skew_map) != t.order:
        raise ValueError("skew_map has wrong length")
    if name == "dornte":
        return _dornte(t, skew_map, i, j)
    if name == "variety":
        return _dornte(t, skew_map, i, j) and is_ij_associative(t, 1, 2)
    raise ValueError(f"unknown identity system {name!r}")
