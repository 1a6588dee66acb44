"""Finite groups given by multiplication tables.

Elements are the indices ``0 .. order-1`` with ``0`` the identity and
``table[a, b]`` the index of the product ``a b``. Groups generated by
permutations are enumerated breadth first from the identity, multiplying on
the right by the generators in input order, so element numbering is
reproducible. Permutations are image arrays and compose as functions:
``(a b)[x] = a[b[x]]``.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError, SizeError, StructureError

DEFAULT_ORDER_CAP = 10_000
CLASS_SUBSET_CAP = 2**24


class FiniteGroup:
    """Finite group with a dense multiplication table; identity is index 0."""

    __slots__ = ("_table", "_names", "_inverse", "_key", "__weakref__")

    def __init__(self, table, names: Sequence[str] | None = None, *, check: bool = True):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise StructureError(f"multiplication table must be square and nonempty, got {table.shape}")
        n = table.shape[0]
        if n > DEFAULT_ORDER_CAP:
            raise SizeError(f"group order {n} exceeds cap {DEFAULT_ORDER_CAP}")
        if table.min() < 0 or table.max() >= n:
            raise StructureError("multiplication table entries out of range")
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != n or len(set(names)) != n:
                raise StructureError("element names must be distinct, one per element")
        if check:
            _check_group_table(table)
        table.flags.writeable = False
        inverse = np.argmin(table, axis=1)  # the column holding the identity
        inverse.flags.writeable = False
        self._table = table
        self._names = names
        self._inverse = inverse
        self._key = table.tobytes()

    @property
    def order(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def names(self) -> tuple[str, ...] | None:
        return self._names

    @property
    def inverse(self) -> np.ndarray:
        return self._inverse

    def name(self, g: int) -> str:
        return self._names[g] if self._names else str(g)

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        power = np.arange(n)
        alive = power != 0
        k = 1
        while alive.any():
            k += 1
            power = self._table[power, np.arange(n)]
            hit = alive & (power == 0)
            orders[hit] = k
            alive &= ~hit
        return orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def is_cyclic(self) -> bool:
        return bool((self.element_orders() == self.order).any())

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        idx = np.array(sorted(set(int(e) for e in elements)), dtype=np.int64)
        if idx.size == 0 or idx[0] != 0 or idx[-1] >= self.order:
            return False
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return bool(mask[self._table[np.ix_(idx, idx)]].all())

    def subgroup(self, elements: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
        """The subgroup on ``elements`` (ascending order) with its inclusion."""
        idx = sorted(set(int(e) for e in elements))
        if not self.is_subgroup(idx):
            raise PreconditionError(f"{idx} is not a subgroup")
        pos = {g: i for i, g in enumerate(idx)}
        sub = [[pos[int(self._table[a, b])] for b in idx] for a in idx]
        names = [self.name(g) for g in idx] if self._names else None
        h = FiniteGroup(sub, names, check=False)
        return h, GroupHom(h, self, idx)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _check_group_table(table: np.ndarray):
    n = table.shape[0]
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise StructureError("index 0 is not a two-sided identity")
    srt = np.sort(table, axis=1)
    if not (srt == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise StructureError("table is not a Latin square (missing inverses)")
    # Light's test: associativity needs checking only against a generating set
    gens = _greedy_generators(table)
    for g in gens:
        lhs = table[table[:, g][:, None], ar[None, :]]  # (x g) y
        rhs = table[ar[:, None], table[g][None, :]]  # x (g y)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = bad[0]
            raise StructureError(f"table is not associative: ({x} {g}) {y} != {x} ({g} {y})")


def _greedy_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    covered = np.zeros(n, dtype=bool)
    covered[0] = True
    for g in range(1, n):
        if covered[g]:
            continue
        gens.append(g)
        # closure of the current generators under right multiplication
        covered[:] = False
        covered[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for h in gens:
                y = table[x, h]
                if not covered[y]:
                    covered[y] = True
                    queue.append(y)
        if covered.all():
            break
    return gens


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism given by the image index of each source element."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __init__(self, source: FiniteGroup, target: FiniteGroup, map: Iterable[int], *, check: bool = True):
        images = tuple(int(x) for x in map)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", images)
        if len(images) != source.order:
            raise StructureError(f"map has length {len(images)}, expected {source.order}")
        if any(not 0 <= x < target.order for x in images):
            raise StructureError("map images out of range")
        if check:
            if images[0] != 0:
                raise StructureError("homomorphism must send identity to identity")
            m = np.array(images)
            lhs = m[source.table]
            rhs = target.table[m[:, None], m[None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                a, b = bad[0]
                raise StructureError(f"not a homomorphism: f({a}*{b}) != f({a})*f({b})")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.map, dtype=np.int64)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def kernel(self) -> tuple[int, ...]:
        return tuple(g for g, x in enumerate(self.map) if x == 0)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def compose(self, first: GroupHom) -> GroupHom:
        """``self`` after ``first``."""
        if first.target != self.source:
            raise PreconditionError("homomorphisms are not composable")
        return GroupHom(first.source, self.target, [self.map[x] for x in first.map])


def from_permutations(degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_ORDER_CAP,
                      names: bool = False) -> FiniteGroup:
    """Enumerate the group generated by permutations of ``range(degree)``."""
    if degree < 1:
        raise StructureError("degree must be positive")
    gens = []
    for p in generators:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise StructureError(f"{p} is not a permutation of range({degree})")
        gens.append(np.array(p, dtype=np.int64))
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]  # (element, generator) with e = parent * gen
    right = [[0] * len(gens)]  # right[e][s] = index of e * gens[s]
    queue = deque([0])
    while queue:
        e = queue.popleft()
        perm = np.array(elements[e])
        for s, g in enumerate(gens):
            prod = tuple(perm[g].tolist())
            j = index.get(prod)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise SizeError(f"generated group exceeds order cap {cap}")
                index[prod] = j
                elements.append(prod)
                parent.append((e, s))
                right.append([0] * len(gens))
                queue.append(j)
            right[e][s] = j
    n = len(elements)
    right_arr = np.array(right, dtype=np.int64).reshape(n, len(gens))
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    # column j = column parent(j) followed by right multiplication by its generator
    for j in range(1, n):
        p, s = parent[j]
        table[:, j] = right_arr[table[:, p], s]
    labels = [_cycle_notation(p) for p in elements] if names else None
    return FiniteGroup(table, labels, check=False)


def _cycle_notation(perm: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


@functools.lru_cache(maxsize=None)
def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with element index equal to the residue."""
    return from_permutations(n, [[(i + 1) % n for i in range(n)]] if n > 1 else [])


@functools.lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return from_permutations(max(n, 1), [])
    cycle = [(i + 1) % n for i in range(n)]
    swap = [1, 0] + list(range(2, n))
    return from_permutations(n, [cycle, swap], names=True)


@functools.lru_cache(maxsize=None)
def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return from_permutations(max(n, 1), [])
    gens = []
    for k in range(n - 2):
        p = list(range(n))
        p[k], p[k + 1], p[k + 2] = p[k + 1], p[k + 2], p[k]
        gens.append(p)
    return from_permutations(n, gens, names=True)


@functools.lru_cache(maxsize=None)
def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return from_permutations(n, [rot, ref], names=True)


@functools.lru_cache(maxsize=None)
def quaternion_group() -> FiniteGroup:
    """Q8 as left multiplication on its own elements."""
    # units 1, i, j, k encoded 0..3; element (s, u) means (-1)^s u, index 4s + u
    unit_table = {  # u * v = sign, w
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def left(x):
        sx, ux = divmod(x, 4)
        perm = []
        for y in range(8):
            sy, uy = divmod(y, 4)
            s, w = unit_table[(ux, uy)]
            perm.append(4 * ((sx + sy + s) % 2) + w)
        return perm

    return from_permutations(8, [left(1), left(2)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``g x h`` with element ``(a, b)`` at index ``a * |h| + b``."""
    m = h.order
    table = (g.table[:, None, :, None] * m + h.table[None, :, None, :]).reshape(g.order * m, g.order * m)
    return FiniteGroup(table, check=False)


def conjugacy_classes(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Partition into conjugacy classes, each sorted ascending.

    Classes are ordered by (element order, class size, smallest element); the
    identity class comes first.
    """
    return _classes(g)


@functools.lru_cache(maxsize=256)
def _classes(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    t, inv = g.table, g.inverse
    n = g.order
    label = np.full(n, -1)
    classes = []
    everything = np.arange(n)
    for x in range(n):
        if label[x] >= 0:
            continue
        conj = np.unique(t[t[everything, x], inv])  # g x g^-1
        label[conj] = len(classes)
        classes.append(tuple(conj.tolist()))
    orders = g.element_orders()
    classes.sort(key=lambda c: (orders[c[0]], len(c), c[0]))
    return tuple(classes)


def class_index(g: FiniteGroup) -> np.ndarray:
    """Array mapping each element to the position of its conjugacy class."""
    out = np.empty(g.order, dtype=np.int64)
    for i, c in enumerate(conjugacy_classes(g)):
        out[list(c)] = i
    return out


def normal_subgroups(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """All normal subgroups as sorted index tuples, ordered by (size, elements)."""
    return _normal_subgroups(g)


@functools.lru_cache(maxsize=256)
def _normal_subgroups(g: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    classes = conjugacy_classes(g)
    rest = classes[1:]
    if 2 ** len(rest) > CLASS_SUBSET_CAP:
        raise SizeError(f"{2 ** len(rest)} class unions exceed cap {CLASS_SUBSET_CAP}")
    n = g.order
    t = g.table
    sizes = [len(c) for c in rest]
    found = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(range(len(rest)), r):
            size = 1 + sum(sizes[i] for i in combo)
            if n % size:
                continue
            elems = np.array(sorted(itertools.chain([0], *(rest[i] for i in combo))), dtype=np.int64)
            mask = np.zeros(n, dtype=bool)
            mask[elems] = True
            if mask[t[np.ix_(elems, elems)]].all():
                found.append(tuple(elems.tolist()))
    found.sort(key=lambda s: (len(s), s))
    return tuple(found)


def is_simple(g: FiniteGroup) -> bool:
    return g.order > 1 and len(normal_subgroups(g)) == 2


def is_normal_subgroup(g: FiniteGroup, elements: Iterable[int]) -> bool:
    idx = tuple(sorted(set(int(e) for e in elements)))
    if not g.is_subgroup(idx):
        return False
    t, inv = g.table, g.inverse
    mask = np.zeros(g.order, dtype=bool)
    mask[list(idx)] = True
    conj = t[t[:, list(idx)], inv[:, None]]  # conj[x, h] = x h x^-1
    return bool(mask[conj].all())


def quotient(g: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, GroupHom]:
    """Coset group ``g / normal`` with its projection; cosets ordered by least element."""
    normal = tuple(sorted(set(int(e) for e in normal)))
    if not is_normal_subgroup(g, normal):
        raise PreconditionError(f"{list(normal)} is not a normal subgroup")
    t = g.table
    coset_min = t[:, list(normal)].min(axis=1)  # least element of g N
    reps = np.unique(coset_min)
    pos = np.full(g.order, -1)
    pos[reps] = np.arange(reps.size)
    proj = pos[coset_min]
    qtable = proj[t[np.ix_(reps, reps)]]
    q = FiniteGroup(qtable, check=False)
    return q, GroupHom(g, q, proj.tolist())


def check_group_exact(i: GroupHom, p: GroupHom) -> bool:
    """``1 -> A -i-> B -p-> C -> 1`` is exact."""
    if i.target != p.source:
        raise PreconditionError("i.target and p.source are different groups")
    return i.is_injective() and p.is_surjective() and set(i.image()) == set(p.kernel())


@dataclass(frozen=True)
class GroupExtension:
    """A short exact sequence ``1 -> kernel -> group -> quotient -> 1``."""

    kernel: FiniteGroup
    group: FiniteGroup
    quotient: FiniteGroup
    inclusion: GroupHom
    projection: GroupHom

    def __post_init__(self):
        if self.inclusion.source != self.kernel or self.projection.target != self.quotient:
            raise StructureError("extension maps do not match the groups")
        if not check_group_exact(self.inclusion, self.projection):
            raise PreconditionError("sequence of groups is not exact")


def extension_from_normal(g: FiniteGroup, normal: Iterable[int]) -> GroupExtension:
    """The sequence ``1 -> N -> G -> G/N -> 1`` for a normal subgroup N."""
    n, incl = g.subgroup(normal)
    q, proj = quotient(g, normal)
    return GroupExtension(n, g, q, incl, proj)


def generated_subgroup(g: FiniteGroup, generators: Iterable[int]) -> tuple[int, ...]:
    """Elements of the subgroup generated by ``generators``, ascending."""
    gens = [int(x) for x in generators]
    span = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for s in gens:
            b = int(g.table[a, s])
            if b not in span:
                span.add(b)
                frontier.append(b)
    return tuple(sorted(span))
