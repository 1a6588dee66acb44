"""Normalized group cochains with coefficients in Z/M.

A 3-cochain is a dense ``(n, n, n)`` integer array reduced mod ``M``; it is
normalized when every value with an identity argument is zero. Cohomology
questions become integer linear algebra on the normalized bar complex:
rows of ``d2`` are the normalized triples in lexicographic order, columns the
normalized pairs, and likewise one degree up for ``d3``.

Triviality is decided with ``Q/Z`` coefficients in mind. A cocycle with
values in ``Z/M`` is read as taking values in ``(1/M) Z / Z``; it is trivial
there exactly when ``|G| alpha = d beta`` has a solution mod ``M |G|``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .errors import PreconditionError, SizeError, StructureError
from .groups import FiniteGroup, GroupHom, cyclic_group
from .smith import SmithDecomposition, smith_normal_form

#: largest group order for coboundary solving (|G|^3 equations)
COBOUNDARY_CAP = 24
#: largest group order for H^3 counts; d3 has (|G|-1)^4 dense rows
H3_CAP = 10
#: largest group order for the exact integer Smith route
INTEGER_SNF_CAP = 8
#: the kernels work in int64, so products of two residues must fit
MODULUS_CAP = 2**31


def _check_modulus(m: int) -> int:
    m = int(m)
    if not 1 <= m < MODULUS_CAP:
        raise StructureError(f"modulus must be in [1, {MODULUS_CAP}), got {m}")
    return m


@dataclass(frozen=True, eq=False)
class Cocycle3:
    """Normalized 3-cochain ``G^3 -> Z/modulus``.

    The name reflects intended use; closure is not enforced at construction,
    call :func:`is_cocycle` for that.
    """

    group: FiniteGroup
    modulus: int
    values: np.ndarray

    def __post_init__(self):
        m = _check_modulus(self.modulus)
        n = self.group.order
        vals = np.array(self.values, dtype=np.int64)
        if vals.shape != (n, n, n):
            raise StructureError(f"cochain has shape {vals.shape}, expected {(n, n, n)}")
        vals %= m
        if vals[0].any() or vals[:, 0].any() or vals[:, :, 0].any():
            raise StructureError("cochain is not normalized: nonzero value with an identity argument")
        vals.flags.writeable = False
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_flat(cls, group: FiniteGroup, modulus: int, flat: Iterable[int]) -> Cocycle3:
        n = group.order
        arr = np.array(list(flat), dtype=np.int64)
        if arr.size != n**3:
            raise StructureError(f"expected {n**3} values, got {arr.size}")
        return cls(group, modulus, arr.reshape(n, n, n))

    def flat(self) -> list[int]:
        """Values in lexicographic ``(g1, g2, g3)`` order."""
        return self.values.ravel().tolist()

    def __call__(self, g1: int, g2: int, g3: int) -> int:
        return int(self.values[g1, g2, g3])

    def _compatible(self, other: Cocycle3):
        if self.group != other.group or self.modulus != other.modulus:
            raise PreconditionError("cochains live on different groups or moduli")

    def __add__(self, other: Cocycle3) -> Cocycle3:
        self._compatible(other)
        return Cocycle3(self.group, self.modulus, self.values + other.values)

    def __sub__(self, other: Cocycle3) -> Cocycle3:
        self._compatible(other)
        return Cocycle3(self.group, self.modulus, self.values - other.values)

    def __neg__(self) -> Cocycle3:
        return Cocycle3(self.group, self.modulus, -self.values)

    def scaled(self, k: int) -> Cocycle3:
        return Cocycle3(self.group, self.modulus, self.values * int(k))

    def is_zero(self) -> bool:
        return not self.values.any()

    def __eq__(self, other):
        if not isinstance(other, Cocycle3):
            return NotImplemented
        return (self.group == other.group and self.modulus == other.modulus
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.group, self.modulus, self.values.tobytes()))

    def __repr__(self):
        return f"Cocycle3(order={self.group.order}, modulus={self.modulus})"


def zero_cocycle(g: FiniteGroup, modulus: int) -> Cocycle3:
    n = g.order
    return Cocycle3(g, modulus, np.zeros((n, n, n), dtype=np.int64))


def is_cocycle(a: Cocycle3) -> bool:
    """``d alpha = 0`` at every one of the ``|G|^4`` tuples."""
    return cocycle_witness(a) is None


def cocycle_witness(a: Cocycle3):
    """First tuple ``(g1, g2, g3, g4)`` where ``d alpha`` is nonzero, else None."""
    return kernels.cocycle_defect(a.group.table, a.values, a.modulus)


def normalize_2cochain(beta) -> np.ndarray:
    beta = np.array(beta, dtype=np.int64)
    beta[0, :] = 0
    beta[:, 0] = 0
    return beta


def coboundary(g: FiniteGroup, beta, modulus: int) -> Cocycle3:
    """``d beta`` for a normalized 2-cochain ``beta`` (an ``(n, n)`` array)."""
    beta = np.array(beta, dtype=np.int64)
    n = g.order
    if beta.shape != (n, n):
        raise StructureError(f"2-cochain has shape {beta.shape}, expected {(n, n)}")
    if beta[0].any() or beta[:, 0].any():
        raise StructureError("2-cochain is not normalized")
    modulus = _check_modulus(modulus)
    return Cocycle3(g, modulus, kernels.coboundary2(g.table, beta % modulus, modulus))


def random_2cochain(g: FiniteGroup, modulus: int, rng: np.random.Generator) -> np.ndarray:
    n = g.order
    return normalize_2cochain(rng.integers(0, modulus, size=(n, n)))


def cyclic_representative(n: int, q: int) -> Cocycle3:
    """``omega_q(a, b, c) = q a floor((b + c) / n)`` on Z/n, modulus ``n``."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if not 0 <= q < n:
        raise PreconditionError(f"q must lie in [0, {n}), got {q}")
    r = np.arange(n)
    carry = (r[:, None] + r[None, :]) // n
    vals = (q * r[:, None, None] * carry[None, :, :]) % n
    return Cocycle3(cyclic_group(n), n, vals)


# ---------------------------------------------------------------- bar complex

def _normalized(n: int, degree: int) -> np.ndarray:
    """Normalized ``degree``-tuples in lexicographic order, one per row."""
    if n == 1:
        return np.zeros((0, degree), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(1, n)] * degree), indexing="ij")
    return np.stack([x.ravel() for x in grids], axis=1)


def _position(n: int, degree: int, tuples: np.ndarray) -> np.ndarray:
    """Column index of each normalized tuple, or -1 when it has an identity entry."""
    idx = np.zeros(tuples.shape[0], dtype=np.int64)
    for k in range(degree):
        idx = idx * (n - 1) + (tuples[:, k] - 1)
    idx[(tuples == 0).any(axis=1)] = -1
    return idx


def _accumulate(mat: np.ndarray, rows: np.ndarray, cols: np.ndarray, sign: int):
    keep = cols >= 0
    np.add.at(mat, (rows[keep], cols[keep]), sign)


@functools.lru_cache(maxsize=32)
def d2_matrix(g: FiniteGroup) -> np.ndarray:
    """Integer matrix of ``d: C^2 -> C^3`` on normalized cochains."""
    n = g.order
    t = g.table
    triples = _normalized(n, 3)
    mat = np.zeros((triples.shape[0], (n - 1) ** 2), dtype=np.int64)
    rows = np.arange(triples.shape[0])
    g1, g2, g3 = triples.T
    for sign, pair in ((1, (g2, g3)), (-1, (t[g1, g2], g3)), (1, (g1, t[g2, g3])), (-1, (g1, g2))):
        _accumulate(mat, rows, _position(n, 2, np.stack(pair, axis=1)), sign)
    mat.flags.writeable = False
    return mat


def d3_matrix(g: FiniteGroup) -> np.ndarray:
    """Integer matrix of ``d: C^3 -> C^4`` on normalized cochains."""
    n = g.order
    t = g.table
    quads = _normalized(n, 4)
    mat = np.zeros((quads.shape[0], (n - 1) ** 3), dtype=np.int64)
    rows = np.arange(quads.shape[0])
    g1, g2, g3, g4 = quads.T
    terms = ((1, (g2, g3, g4)), (-1, (t[g1, g2], g3, g4)), (1, (g1, t[g2, g3], g4)),
             (-1, (g1, g2, t[g3, g4])), (1, (g1, g2, g3)))
    for sign, triple in terms:
        _accumulate(mat, rows, _position(n, 3, np.stack(triple, axis=1)), sign)
    return mat


def _triples_vector(a: Cocycle3) -> np.ndarray:
    n = a.group.order
    return a.values[1:, 1:, 1:].reshape(-1) if n > 1 else np.zeros(0, dtype=np.int64)


def _pairs_to_cochain(n: int, y) -> np.ndarray:
    beta = np.zeros((n, n), dtype=np.int64)
    if n > 1:
        beta[1:, 1:] = np.asarray(y, dtype=np.int64).reshape(n - 1, n - 1)
    return beta


# ---------------------------------------------------------------- coboundaries

def working_modulus(a: Cocycle3) -> int:
    return a.modulus * a.group.order


@functools.lru_cache(maxsize=16)
def d2_smith(g: FiniteGroup) -> SmithDecomposition:
    """Exact Smith decomposition of ``d2``, cached per group."""
    if g.order > INTEGER_SNF_CAP:
        raise SizeError(f"integer Smith route is capped at order {INTEGER_SNF_CAP}, got {g.order}")
    return smith_normal_form(d2_matrix(g).tolist())


def _solve_integer(a: Cocycle3, rhs: np.ndarray, modulus: int):
    snf = d2_smith(a.group)
    c = snf.apply_u(rhs.tolist())
    y = []
    for i, d in enumerate(snf.diagonal):
        g = math.gcd(d, modulus)
        if c[i] % g:
            return None
        m = modulus // g
        y.append(0 if m == 1 else (c[i] // g) * pow(d // g, -1, m) % m)
    if any(x % modulus for x in c[len(snf.diagonal):]):
        return None
    y += [0] * (snf.shape[1] - len(y))
    return np.array(snf.apply_v(y), dtype=object) % modulus


def solve_coboundary(a: Cocycle3, method: str = "modular"):
    """A normalized 2-cochain ``beta`` mod ``M |G|`` with ``d beta = |G| alpha``, or None.

    ``method="modular"`` eliminates over ``Z/(M |G|)`` in the kernel;
    ``method="integer"`` goes through the exact Smith decomposition of ``d2``.
    Any returned witness has been checked against the defining equation.
    """
    g = a.group
    if g.order > COBOUNDARY_CAP:
        raise SizeError(f"coboundary solving is capped at order {COBOUNDARY_CAP}, got {g.order}")
    mod = _check_modulus(working_modulus(a))
    n = g.order
    if n == 1:
        return np.zeros((1, 1), dtype=np.int64)
    rhs = (n * _triples_vector(a)) % mod
    if method == "modular":
        y = kernels.solve_mod(d2_matrix(g), rhs, mod)
    elif method == "integer":
        y = _solve_integer(a, rhs, mod)
    else:
        raise ValueError(f"unknown method {method!r}")
    if y is None:
        return None
    beta = _pairs_to_cochain(n, np.asarray(y, dtype=np.int64))
    if not np.array_equal(coboundary(g, beta, mod).values, (n * a.values) % mod):
        raise AssertionError("coboundary witness failed verification")
    return beta


def is_coboundary(a: Cocycle3, method: str = "modular") -> bool:
    return solve_coboundary(a, method) is not None


def cohomologous(a: Cocycle3, b: Cocycle3) -> bool:
    return is_coboundary(a - b)


# ---------------------------------------------------------------- H^3 counts

def image_size(mat, modulus: int) -> int:
    """Number of elements in the column space of an integer matrix mod ``modulus``."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 1
    size = 1
    for d in kernels.smith_diagonal_mod(mat, modulus):
        size *= modulus // d
    return size


def h3_order(g: FiniteGroup, modulus: int) -> int:
    """``|H^3(G, Z/M)| = M^{c3} / (|im d3| |im d2|)`` on normalized cochains."""
    modulus = _check_modulus(modulus)
    if g.order > H3_CAP:
        raise SizeError(f"H^3 computation is capped at order {H3_CAP}, got {g.order}")
    if g.order == 1:
        return 1
    c3 = (g.order - 1) ** 3
    im2 = image_size(d2_matrix(g), modulus)
    im3 = image_size(d3_matrix(g), modulus)
    total = modulus**c3
    if total % (im2 * im3):
        raise AssertionError("image sizes do not divide the cochain count")
    return total // (im2 * im3)


# ---------------------------------------------------------------- functoriality

def inflate(a: Cocycle3, proj: GroupHom) -> Cocycle3:
    """Pull back along a surjection ``G -> G''``."""
    if proj.target != a.group:
        raise PreconditionError("projection target is not the cocycle's group")
    if not proj.is_surjective():
        raise PreconditionError("inflation needs a surjective homomorphism")
    p = proj.array
    return Cocycle3(proj.source, a.modulus, a.values[np.ix_(p, p, p)])


def pullback(a: Cocycle3, hom: GroupHom) -> Cocycle3:
    """Pull back along any homomorphism into the cocycle's group."""
    if hom.target != a.group:
        raise PreconditionError("homomorphism target is not the cocycle's group")
    p = hom.array
    return Cocycle3(hom.source, a.modulus, a.values[np.ix_(p, p, p)])


def restrict(a: Cocycle3, sub: Iterable[int]) -> Cocycle3:
    """Restriction to the subgroup on ``sub``, relabelled in ascending element order."""
    _, incl = a.group.subgroup(sub)
    return pullback(a, incl)
