"""Binary groups on ``{0..k-1}`` and isomorphism search between them."""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence

import numpy as np


class NotAGroup(ValueError):
    pass


class GroupTable:
    """A binary group given by its k x k Cayley table (entry (i, j) = i*j)."""

    __slots__ = ("order", "array", "identity", "inverse", "__dict__")

    def __init__(self, order: int, table):
        k = int(order)
        arr = np.asarray(table, dtype=np.int64).reshape(-1)
        if arr.size != k * k:
            raise NotAGroup(f"expected {k * k} entries, got {arr.size}")
        if arr.min() < 0 or arr.max() >= k:
            raise NotAGroup(f"entries must lie in 0..{k - 1}")
        a = arr.reshape(k, k)
        xs = np.arange(k)
        ids = [e for e in range(k) if np.array_equal(a[e], xs) and np.array_equal(a[:, e], xs)]
        if not ids:
            raise NotAGroup("no identity element")
        e = ids[0]
        if not (np.sort(a, axis=1) == xs).all() or not (np.sort(a, axis=0) == xs[:, None]).all():
            raise NotAGroup("table is not a Latin square")
        # (xy)z == x(yz) for all triples
        if not np.array_equal(a[a[:, :, None], xs[None, None, :]], a[xs[:, None, None], a[None, :, :]]):
            raise NotAGroup("operation is not associative")
        inv = [int(np.flatnonzero(a[x] == e)[0]) for x in range(k)]
        a = a.astype(np.int64)
        a.flags.writeable = False
        object.__setattr__(self, "order", k)
        object.__setattr__(self, "array", a)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))

    def __setattr__(self, name, value):
        raise AttributeError("GroupTable is immutable")

    @classmethod
    def from_function(cls, order: int, mul: Callable[[int, int], int]) -> "GroupTable":
        return cls(order, [mul(x, y) for x in range(order) for y in range(order)])

    @cached_property
    def table(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.array.reshape(-1))

    def mul(self, x: int, y: int) -> int:
        return int(self.array[x, y])

    def product(self, xs: Sequence[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = int(self.array[acc, x])
        return acc

    def power(self, x: int, m: int) -> int:
        if m < 0:
            x, m = self.inverse[x], -m
        acc = self.identity
        for _ in range(m):
            acc = int(self.array[acc, x])
        return acc

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            m, y = 1, x
            while y != self.identity:
                y = int(self.array[y, x])
                m += 1
            out.append(m)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(np.array(self.element_orders)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.array, self.array.T))

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.order == other.order and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.order, self.array.tobytes()))

    def __repr__(self):
        return f"GroupTable(order={self.order})"

    def subgroup_closure(self, gens: Sequence[int]) -> frozenset:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = int(self.array[x, g])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, preferring elements of large order."""
        by_order = sorted(range(self.order), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        span = frozenset({self.identity})
        for x in by_order:
            if len(span) == self.order:
                break
            if x not in span:
                gens.append(x)
                span = self.subgroup_closure(gens)
        return tuple(gens)

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(int(self.array[x, self.inverse[y]]) in s for x in s for y in s)

    def is_normal_subgroup(self, elems) -> bool:
        s = set(elems)
        if not self.is_subgroup(s):
            return False
        return all(self.mul(self.mul(g, h), self.inverse[g]) in s for g in range(self.order) for h in s)

    def subgroup(self, elems) -> tuple["GroupTable", list[int]]:
        """The subgroup on ``elems`` relabelled 0..m-1 in sorted order, plus the labels."""
        labels = sorted(elems)
        pos = {x: i for i, x in enumerate(labels)}
        m = len(labels)
        return GroupTable(m, [pos[self.mul(x, y)] for x in labels for y in labels]), labels

    def is_homomorphism(self, other: "GroupTable", h: Sequence[int]) -> bool:
        hm = np.asarray(h)
        return bool(np.array_equal(hm[self.array], other.array[hm[:, None], hm[None, :]]))

    def automorphisms(self) -> list[tuple[int, ...]]:
        cached = self.__dict__.get("_auts")
        if cached is None:
            cached = sorted(isomorphisms(self, self))
            self.__dict__["_auts"] = cached
        return list(cached)


def cyclic_group(k: int) -> GroupTable:
    return GroupTable.from_function(k, lambda x, y: (x + y) % k)


def _extend(G: GroupTable, H: GroupTable, gens, images) -> Optional[list[int]]:
    """Extend generator images to a map G -> H along words; None if inconsistent."""
    h = [-1] * G.order
    h[G.identity] = H.identity
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for g, im in zip(gens, images):
            y = int(G.array[x, g])
            v = int(H.array[h[x], im])
            if h[y] == -1:
                h[y] = v
                frontier.append(y)
            elif h[y] != v:
                return None
    return h


def isomorphisms(G: GroupTable, H: GroupTable) -> Iterator[tuple[int, ...]]:
    """All isomorphisms G -> H as image tuples.

    Generators of G are sent to elements of H of the same order (backtracking),
    then the map is extended along words and checked in full.
    """
    if G.order != H.order:
        return
    if sorted(G.element_orders) != sorted(H.element_orders):
        return
    gens = G.generators
    by_order: dict[int, list[int]] = {}
    for y in range(H.order):
        by_order.setdefault(H.element_orders[y], []).append(y)
    cands = [by_order.get(G.element_orders[g], []) for g in gens]

    def rec(i, chosen):
        if i == len(gens):
            h = _extend(G, H, gens, chosen)
            if h is not None and len(set(h)) == G.order and G.is_homomorphism(H, h):
                yield tuple(h)
            return
        for c in cands[i]:
            if c in chosen:
                continue
            yield from rec(i + 1, chosen + [c])

    yield from rec(0, [])


def find_isomorphism(G: GroupTable, H: GroupTable) -> Optional[tuple[int, ...]]:
    return next(isomorphisms(G, H), None)


def isomorphisms_bruteforce(G: GroupTable, H: GroupTable) -> Iterator[tuple[int, ...]]:
    """Every bijection checked against the full table; the oracle for small orders."""
    if G.order != H.order:
        return
    for perm in itertools.permutations(range(G.order)):
        if G.is_homomorphism(H, perm):
            yield perm
