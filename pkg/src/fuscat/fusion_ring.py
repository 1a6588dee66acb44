"""Fusion rings: Grothendieck rings of fusion categories.

A fusion ring is stored by its basis labels, the index of the unit, the
duality involution and sparse structure constants ``N[i, j, k]``, the
multiplicity of the k-th simple in the product of the i-th and j-th.

Frobenius-Perron dimensions are computed by power iteration on ``M_i + 1``
where ``(M_i)[k, j] = N[i, j, k]`` is the matrix of left multiplication.
The iteration keeps a strictly positive vector, so the Collatz-Wielandt
quotients bracket the spectral radius from both sides; iteration stops when
the bracket is narrower than ``PERRON_TOL``.
"""
from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import ConsistencyError, ConvergenceError, StructureError
from .tolerances import OBJ_TOL, PERRON_MAX_ITER, PERRON_TOL
from .validation import ValidationReport

__all__ = [
    "FusionRing",
    "FPData",
    "validate",
    "fpdim",
    "generated_subring",
    "is_pointed",
    "trivial_ring",
    "fibonacci_ring",
]


class FusionRing:
    """Based ring with basis ``labels``, unit index and duality ``dual``.

    ``n`` maps ``(i, j, k)`` to a positive multiplicity; it may also be given
    as an iterable of ``(i, j, k, n)`` quadruples. Zero entries are dropped.
    Construction only checks structure (shapes, index ranges, that ``dual`` is
    a permutation); the ring axioms are checked by :func:`validate`.
    """

    __slots__ = ("_labels", "_unit", "_dual", "_n", "_dense", "_key")

    def __init__(self, labels: Iterable[str], unit: int, dual: Iterable[int], n):
        labels = tuple(str(x) for x in labels)
        rank = len(labels)
        if rank == 0:
            raise StructureError("a fusion ring needs at least one basis element")
        if len(set(labels)) != rank:
            raise StructureError("basis labels must be distinct")
        unit = int(unit)
        if not 0 <= unit < rank:
            raise StructureError(f"unit index {unit} out of range for rank {rank}")
        dual = tuple(int(d) for d in dual)
        if len(dual) != rank:
            raise StructureError(f"dual has length {len(dual)}, expected {rank}")
        if sorted(dual) != list(range(rank)):
            raise StructureError("dual is not a permutation of the basis indices")

        if isinstance(n, Mapping):
            items = ((*key, val) for key, val in n.items())
        else:
            items = n
        coeffs: dict[tuple[int, int, int], int] = {}
        for quad in items:
            if len(quad) != 4:
                raise StructureError(f"structure constant entry {quad!r} is not (i, j, k, n)")
            i, j, k, val = (int(x) for x in quad)
            for idx in (i, j, k):
                if not 0 <= idx < rank:
                    raise StructureError(f"index {idx} in {(i, j, k)} out of range for rank {rank}")
            if val < 0:
                raise StructureError(f"negative multiplicity {val} at {(i, j, k)}")
            if (i, j, k) in coeffs:
                raise StructureError(f"duplicate structure constant at {(i, j, k)}")
            if val:
                coeffs[(i, j, k)] = val

        dense = np.zeros((rank, rank, rank), dtype=np.int64)
        for (i, j, k), val in coeffs.items():
            dense[i, j, k] = val
        dense.flags.writeable = False

        self._labels = labels
        self._unit = unit
        self._dual = dual
        self._n = MappingProxyType(dict(sorted(coeffs.items())))
        self._dense = dense
        self._key = (labels, unit, dual, tuple(self._n.items()))

    @property
    def rank(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def unit(self) -> int:
        return self._unit

    @property
    def dual(self) -> tuple[int, ...]:
        return self._dual

    @property
    def n(self) -> Mapping[tuple[int, int, int], int]:
        return self._n

    @property
    def N(self) -> np.ndarray:
        """Dense read-only ``(rank, rank, rank)`` array of structure constants."""
        return self._dense

    def coefficient(self, i: int, j: int, k: int) -> int:
        return self._n.get((i, j, k), 0)

    def index(self, label: str) -> int:
        return self._labels.index(label)

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis element ``i``: entry ``[k, j] = N[i, j, k]``."""
        return self._dense[i].T

    def product(self, i: int, j: int) -> np.ndarray:
        """Coefficient vector of ``i * j``."""
        return self._dense[i, j].copy()

    def multiply(self, a, b) -> np.ndarray:
        """Product of two integer coefficient vectors."""
        return np.einsum("i,j,ijk->k", np.asarray(a), np.asarray(b), self._dense)

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FusionRing(rank={self.rank}, labels={list(self._labels)})"

    def __setattr__(self, name, value):
        if hasattr(self, "_key"):
            raise AttributeError("FusionRing is immutable")
        object.__setattr__(self, name, value)


@dataclass(frozen=True)
class FPData:
    """Frobenius-Perron dimensions of the simples and of the whole ring."""

    dims: tuple[float, ...]
    total: float
    tol: float

    def __getitem__(self, i):
        return self.dims[i]

    def __len__(self):
        return len(self.dims)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.dims)


def trivial_ring() -> FusionRing:
    return FusionRing(["1"], 0, [0], {(0, 0, 0): 1})


def fibonacci_ring() -> FusionRing:
    return FusionRing(
        ["1", "tau"], 0, [0, 1],
        {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1},
    )


def validate(ring: FusionRing) -> ValidationReport:
    """Check unit, associativity, rigidity and Frobenius reciprocity axioms."""
    report = ValidationReport()
    r, u, dual, N = ring.rank, ring.unit, np.array(ring.dual), ring.N

    for i in range(r):
        if dual[dual[i]] != i:
            report.add("structure", "dual-involutive", (i,), f"dual(dual({i})) = {dual[dual[i]]}")
    if dual[u] != u:
        report.add("structure", "dual-unit", (u,), f"dual(unit) = {dual[u]}")
    if report.structural:
        return report

    eye = np.eye(r, dtype=np.int64)
    for j, k in zip(*np.nonzero(N[u] != eye)):
        report.add("axiom", "left-unit", (u, int(j), int(k)), f"N = {N[u, j, k]}")
    for i, k in zip(*np.nonzero(N[:, u, :] != eye)):
        report.add("axiom", "right-unit", (int(i), u, int(k)), f"N = {N[i, u, k]}")

    # (i j) k versus i (j k), coefficient of l
    # float products are exact for the integer sizes involved and hit BLAS
    Nf = N.astype(float)
    flat = Nf.reshape(r * r, r)
    wide = Nf.reshape(r, r * r)
    for i in range(r):
        left = (Nf[i] @ wide).reshape(r, r, r)
        right = (flat @ Nf[i]).reshape(r, r, r)
        for j, k, l in zip(*np.nonzero(left != right)):
            report.add("axiom", "associativity", (i, int(j), int(k), int(l)),
                       f"{int(left[j, k, l])} != {int(right[j, k, l])}")

    expected = eye[dual]  # expected[i, j] = 1 iff j == dual(i)
    for i, j in zip(*np.nonzero(N[:, :, u] != expected)):
        report.add("axiom", "rigidity", (int(i), int(j)), f"N[{i},{j},unit] = {N[i, j, u]}")

    # N_ij^k = N_{i*,k}^j = N_{k,j*}^i
    recip1 = N[dual][:, :, :].transpose(0, 2, 1)  # [i, j, k] -> N[i*, k, j]
    recip2 = N[:, dual, :].transpose(2, 1, 0)  # [i, j, k] -> N[k, j*, i]
    for idx in zip(*np.nonzero((N != recip1) | (N != recip2))):
        idx = tuple(int(x) for x in idx)
        report.add("axiom", "frobenius-reciprocity", idx,
                   f"N={N[idx]}, N[i*,k,j]={recip1[idx]}, N[k,j*,i]={recip2[idx]}")
    return report


def _perron_batch(mats: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Spectral radii of a stack of nonnegative square matrices.

    Iterates on ``A + 1``; for a strictly positive vector ``v`` the quotients
    ``(Av)_k / v_k`` satisfy ``min <= rho(A) <= max``.
    """
    count, size, _ = mats.shape
    shifted = mats.astype(float) + np.eye(size)
    v = np.ones((count, size))
    result = np.full(count, np.nan)
    active = np.arange(count)
    for _ in range(max_iter):
        w = np.einsum("bkj,bj->bk", shifted[active], v[active])
        ratio = w / v[active]
        lo, hi = ratio.min(axis=1), ratio.max(axis=1)
        done = hi - lo <= tol * np.maximum(1.0, hi)
        if done.any():
            result[active[done]] = 0.5 * (lo[done] + hi[done]) - 1.0
        v[active] = w / w.max(axis=1, keepdims=True)
        active = active[~done]
        if active.size == 0:
            return result
    raise ConvergenceError(
        f"power iteration did not converge for basis indices {active.tolist()} "
        f"within {max_iter} iterations"
    )


@functools.lru_cache(maxsize=512)
def fpdim(ring: FusionRing, tol: float = PERRON_TOL, max_iter: int = PERRON_MAX_ITER) -> FPData:
    """Frobenius-Perron dimension of each simple and of the ring.

    Raises :class:`ConvergenceError` rather than returning an unconverged value.
    """
    mats = np.stack([ring.left_matrix(i) for i in range(ring.rank)])
    dims = _perron_batch(mats, tol, max_iter)
    return FPData(tuple(float(d) for d in dims), float(np.sum(dims**2)), tol)


def generated_subring(ring: FusionRing, seeds: Iterable[int]) -> frozenset[int]:
    """Smallest set containing ``seeds`` and the unit, closed under products and duals."""
    seeds = [int(s) for s in seeds]
    for s in seeds:
        if not 0 <= s < ring.rank:
            raise StructureError(f"seed {s} out of range for rank {ring.rank}")
    N = ring.N
    found = {ring.unit}
    queue = deque([ring.unit])
    for s in seeds:
        if s not in found:
            found.add(s)
            queue.append(s)
    while queue:
        x = queue.popleft()
        new = {ring.dual[x]}
        for y in list(found):
            new.update(np.nonzero(N[x, y])[0].tolist())
            new.update(np.nonzero(N[y, x])[0].tolist())
        for z in new:
            if z not in found:
                found.add(z)
                queue.append(z)
    return frozenset(found)


def is_permutation_fusion(ring: FusionRing) -> bool:
    """Exact test: every product of basis elements is a single basis element."""
    N = ring.N
    return bool(np.all(N.sum(axis=2) == 1) and N.max(initial=0) <= 1)


def is_pointed(ring: FusionRing, fp: FPData | None = None, tol: float = OBJ_TOL) -> bool:
    """True iff every simple is invertible.

    The float criterion (all FP dimensions equal 1) is cross-checked against the
    exact one (all multiplication matrices are permutation matrices).
    """
    fp = fpdim(ring) if fp is None else fp
    by_float = all(abs(d - 1.0) < tol for d in fp.dims)
    exact = is_permutation_fusion(ring)
    if by_float != exact:
        raise ConsistencyError(
            f"pointedness disagrees: FP dimensions say {by_float}, fusion matrices say {exact}"
        )
    return exact
