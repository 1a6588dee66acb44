"""Tensor functors seen through their Grothendieck rings.

A :class:`FunctorMatrix` records, for every source simple ``X`` and target
simple ``Y``, the multiplicity ``m[Y, X]`` of ``Y`` in ``F(X)``. Its transpose
describes the adjoint, and ``m @ m.T`` is the matrix of the monad ``F G`` on the
target. Everything here checks necessary conditions only: a matrix passing
:func:`validate_functor` need not come from an actual tensor functor.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, PreconditionError, StructureError
from .fusion_ring import FPData, FusionRing, fpdim, generated_subring
from .tolerances import AGG_TOL, OBJ_TOL
from .validation import ValidationReport


class FunctorMatrix:
    """Nonnegative integer matrix ``m`` of shape ``(target.rank, source.rank)``."""

    __slots__ = ("source", "target", "m")

    def __init__(self, source: FusionRing, target: FusionRing, m):
        m = np.array(m, dtype=np.int64)
        if m.shape != (target.rank, source.rank):
            raise StructureError(
                f"functor matrix has shape {m.shape}, expected {(target.rank, source.rank)}"
            )
        if m.size and m.min() < 0:
            raise StructureError("functor multiplicities must be nonnegative")
        m.flags.writeable = False
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("FunctorMatrix is immutable")

    def __eq__(self, other):
        if not isinstance(other, FunctorMatrix):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.m, other.m))

    def __hash__(self):
        return hash((self.source, self.target, self.m.tobytes()))

    def __repr__(self):
        return f"FunctorMatrix({self.source.rank} -> {self.target.rank})"

    def image(self, x: int) -> np.ndarray:
        return self.m[:, x]


def identity_functor(ring: FusionRing) -> FunctorMatrix:
    return FunctorMatrix(ring, ring, np.eye(ring.rank, dtype=np.int64))


def unit_embedding(ring: FusionRing) -> FunctorMatrix:
    """The inclusion of the trivial ring spanned by the unit."""
    from .fusion_ring import trivial_ring

    m = np.zeros((ring.rank, 1), dtype=np.int64)
    m[ring.unit, 0] = 1
    return FunctorMatrix(trivial_ring(), ring, m)


def compose(f: FunctorMatrix, g: FunctorMatrix) -> FunctorMatrix:
    """``f`` after ``g``."""
    if g.target != f.source:
        raise PreconditionError("functors are not composable")
    return FunctorMatrix(g.source, f.target, f.m @ g.m)


def validate_functor(f: FunctorMatrix) -> ValidationReport:
    """Unit column, ring-homomorphism and duality compatibility checks."""
    report = ValidationReport()
    src, tgt, m = f.source, f.target, f.m
    expected_unit = np.zeros(tgt.rank, dtype=np.int64)
    expected_unit[tgt.unit] = 1
    for y in np.nonzero(m[:, src.unit] != expected_unit)[0]:
        report.add("axiom", "unit-column", (int(y), src.unit), f"m = {m[y, src.unit]}")

    # F(i) F(j) versus F(i j), as integer vectors over the target basis
    mf = m.astype(float)
    Nt = tgt.N.astype(float)
    Ns = src.N.astype(float)
    # prod[i, j, c] = sum_ab m[a, i] m[b, j] Nt[a, b, c]
    tmp = np.tensordot(mf.T, Nt, axes=(1, 0))  # [i, b, c]
    lhs = np.einsum("ibc,bj->ijc", tmp, mf)
    rhs = np.tensordot(Ns, mf.T, axes=(2, 0))  # [i, j, c]
    for i, j, c in zip(*np.nonzero(lhs != rhs)):
        report.add("axiom", "ring-homomorphism", (int(i), int(j), int(c)),
                   f"F(i)F(j) has {int(lhs[i, j, c])}, F(ij) has {int(rhs[i, j, c])}")

    sd, td = np.array(src.dual), np.array(tgt.dual)
    bad = m[:, sd] != m[td, :]
    for y, x in zip(*np.nonzero(bad)):
        report.add("axiom", "duality", (int(y), int(x)),
                   f"m[Y, X*] = {m[y, sd[x]]}, m[Y*, X] = {m[td[y], x]}")
    return report


def is_dominant(f: FunctorMatrix) -> bool:
    """Every target simple occurs in the image of some source simple."""
    return bool((f.m.sum(axis=1) > 0).all())


def _kernel_from_dims(m: np.ndarray, unit_row: int, dims, tol: float) -> frozenset[int]:
    dims = np.asarray(dims, dtype=float)
    return frozenset(int(x) for x in np.nonzero(np.abs(dims - m[unit_row]) < tol)[0])


def kernel_simples(f: FunctorMatrix, fp: FPData | None = None, tol: float = OBJ_TOL) -> frozenset[int]:
    """Source simples sent to a multiple of the unit: ``FPdim X == m[1, X]``."""
    fp = fpdim(f.source) if fp is None else fp
    ker = _kernel_from_dims(f.m, f.target.unit, fp.dims, tol)
    if f.source.unit not in ker or generated_subring(f.source, ker) != ker:
        raise ConsistencyError(
            f"kernel {sorted(ker)} is not a fusion subring; the functor matrix is not a tensor functor"
        )
    return ker


def normality_witnesses(f: FunctorMatrix, fp: FPData | None = None, tol: float = OBJ_TOL) -> list[int]:
    """Source simples whose image contains the unit but which are not in the kernel."""
    ker = kernel_simples(f, fp, tol)
    hits = np.nonzero(f.m[f.target.unit] > 0)[0]
    return [int(x) for x in hits if int(x) not in ker]


def is_normal(f: FunctorMatrix, fp: FPData | None = None, tol: float = OBJ_TOL) -> bool:
    return not normality_witnesses(f, fp, tol)


def fp_index(f: FunctorMatrix, fpC: FPData | None = None, fpD: FPData | None = None,
             tol: float = AGG_TOL) -> float:
    """``FPdim C / FPdim D`` for a dominant functor, cross-checked against ``FPdim G(1)``."""
    if not is_dominant(f):
        raise PreconditionError("the Frobenius-Perron index is only defined for dominant functors")
    fpC = fpdim(f.source) if fpC is None else fpC
    fpD = fpdim(f.target) if fpD is None else fpD
    ratio = fpC.total / fpD.total
    adjoint_unit = float(f.m[f.target.unit] @ np.asarray(fpC.dims))
    if abs(ratio - adjoint_unit) >= tol:
        raise ConsistencyError(f"FP index {ratio} differs from FPdim G(1) = {adjoint_unit}")
    return ratio


def monad_matrix(f: FunctorMatrix) -> np.ndarray:
    """``T[Y', Y] = sum_X m[Y', X] m[Y, X]``: the monad ``F G`` on the target basis."""
    return f.m @ f.m.T


@dataclass
class MonadReport:
    monad_normal: bool
    functor_normal: bool
    agrees: bool
    dominant: bool
    fpdim_T1: float
    fp_index: float | None = None
    index_residual: float | None = None
    max_TX_residual: float | None = None
    passed: bool = False


def monad_checks(f: FunctorMatrix, fpC: FPData | None = None, fpD: FPData | None = None,
                 tols=(OBJ_TOL, AGG_TOL)) -> MonadReport:
    obj_tol, agg_tol = tols
    fpC = fpdim(f.source) if fpC is None else fpC
    fpD = fpdim(f.target) if fpD is None else fpD
    T = monad_matrix(f)
    u = f.target.unit
    column = T[:, u]
    monad_normal = bool(np.all(np.delete(column, u) == 0))
    functor_normal = is_normal(f, fpC, obj_tol)
    dD = np.asarray(fpD.dims)
    fp_T = dD @ T  # FPdim T(Y) for each target simple Y
    report = MonadReport(
        monad_normal=monad_normal,
        functor_normal=functor_normal,
        agrees=monad_normal == functor_normal,
        dominant=is_dominant(f),
        fpdim_T1=float(fp_T[u]),
    )
    if report.dominant:
        report.fp_index = fpC.total / fpD.total
        report.index_residual = abs(report.fpdim_T1 - report.fp_index)
        report.max_TX_residual = float(np.abs(fp_T - fp_T[u] * dD).max())
        report.passed = (report.agrees and report.index_residual < agg_tol
                         and report.max_TX_residual < agg_tol)
    else:
        report.passed = report.agrees
    return report


def is_basis_embedding(f: FunctorMatrix) -> bool:
    """Every column is a standard unit vector and distinct columns hit distinct simples."""
    m = f.m
    if not (np.all(m.sum(axis=0) == 1) and m.max(initial=0) <= 1):
        return False
    hits = np.argmax(m, axis=0)
    return len(set(hits.tolist())) == m.shape[1]


def embedding_image(f: FunctorMatrix) -> frozenset[int]:
    return frozenset(int(y) for y in np.argmax(f.m, axis=0))


@dataclass
class ExactnessReport:
    embedding_valid: bool
    embedding_full_into_kernel: bool
    image_equals_kernel: bool
    dominant: bool
    normal: bool
    multiplicativity_residual: float
    fpdimy_max_residual: float
    fpdim_sub: float
    fpdim_mid: float
    fpdim_quot: float
    kernel: tuple[int, ...]
    image: tuple[int, ...]
    consistent: bool = True
    notes: list[str] = field(default_factory=list)
    verdict: bool = False


def verify_exact_sequence(i: FunctorMatrix, f: FunctorMatrix, tols=(OBJ_TOL, AGG_TOL)) -> ExactnessReport:
    """Check ``C' -i-> C -f-> C''`` both by definition and by FP multiplicativity.

    The definitional route asks for ``f`` dominant and normal with the image
    of ``i`` equal to the kernel of ``f``. The numerical route asks for
    ``f`` dominant, the image inside the kernel, and
    ``FPdim C = FPdim C' * FPdim C''``. The two are equivalent for genuine
    tensor functors; a disagreement is reported as an inconsistency.
    """
    obj_tol, agg_tol = tols
    if i.target != f.source:
        raise PreconditionError("the embedding's target is not the functor's source")
    if not is_basis_embedding(i):
        raise PreconditionError("the first functor is not a full embedding (basis-injective 0/1 columns)")
    fp_sub, fp_mid, fp_quot = fpdim(i.source), fpdim(f.source), fpdim(f.target)

    embedding_valid = validate_functor(i).ok and validate_functor(f).ok
    ker = kernel_simples(f, fp_mid, obj_tol)
    img = embedding_image(i)
    dominant = is_dominant(f)
    normal = is_normal(f, fp_mid, obj_tol)
    mult = abs(fp_mid.total - fp_sub.total * fp_quot.total)
    dims_mid = np.asarray(fp_mid.dims)
    predicted = (f.m @ dims_mid) / fp_sub.total
    fpdimy = float(np.abs(np.asarray(fp_quot.dims) - predicted).max())

    report = ExactnessReport(
        embedding_valid=embedding_valid,
        embedding_full_into_kernel=img <= ker,
        image_equals_kernel=img == ker,
        dominant=dominant,
        normal=normal,
        multiplicativity_residual=mult,
        fpdimy_max_residual=fpdimy,
        fpdim_sub=fp_sub.total,
        fpdim_mid=fp_mid.total,
        fpdim_quot=fp_quot.total,
        kernel=tuple(sorted(ker)),
        image=tuple(sorted(img)),
    )
    definitional = dominant and normal and report.image_equals_kernel
    if dominant and report.embedding_full_into_kernel:
        numerical = mult < agg_tol
        if numerical != definitional:
            report.consistent = False
            report.notes.append(
                f"definitional verdict {definitional} but FP multiplicativity verdict {numerical}"
            )
    if definitional and fpdimy >= agg_tol:
        report.consistent = False
        report.notes.append(f"exact by definition but FPdim Y identity residual is {fpdimy:.3g}")
    report.verdict = (embedding_valid and definitional and mult < agg_tol
                      and fpdimy < agg_tol and report.consistent)
    return report


@dataclass
class Index2Report:
    fp_index: float
    J: int | None
    unit_hits: tuple[int, ...]
    J_invertible: bool
    J_squared_unit: bool
    normal: bool
    kernel: tuple[int, ...]
    passed: bool


def index2_check(f: FunctorMatrix, fpC: FPData | None = None, fpD: FPData | None = None,
                 tols=(OBJ_TOL, AGG_TOL)) -> Index2Report:
    """A dominant functor of FP index 2 kills exactly one nontrivial simple ``J``, which is invertible."""
    obj_tol, agg_tol = tols
    fpC = fpdim(f.source) if fpC is None else fpC
    fpD = fpdim(f.target) if fpD is None else fpD
    if not is_dominant(f):
        raise PreconditionError("index2_check needs a dominant functor")
    index = fp_index(f, fpC, fpD, agg_tol)
    if abs(index - 2.0) >= agg_tol:
        raise PreconditionError(f"FP index is {index}, not 2")
    ring = f.source
    u = ring.unit
    hits = tuple(int(x) for x in np.nonzero(f.m[f.target.unit] > 0)[0] if x != u)
    J = hits[0] if len(hits) == 1 else None
    invertible = squared = False
    if J is not None:
        jj_dual = ring.product(J, ring.dual[J])
        expected = np.zeros(ring.rank, dtype=np.int64)
        expected[u] = 1
        invertible = abs(fpC.dims[J] - 1.0) < obj_tol and np.array_equal(jj_dual, expected)
        squared = np.array_equal(ring.product(J, J), expected)
    ker = kernel_simples(f, fpC, obj_tol)
    normal = is_normal(f, fpC, obj_tol)
    passed = (J is not None and invertible and squared and normal and ker == frozenset({u, J}))
    return Index2Report(index, J, hits, bool(invertible), bool(squared), normal,
                        tuple(sorted(ker)), passed)


def induced_algebra_dimension(f: FunctorMatrix, fp: FPData | None = None, tol: float = OBJ_TOL) -> float:
    """FP dimension of the kernel, i.e. the dimension of the induced Hopf algebra."""
    fp = fpdim(f.source) if fp is None else fp
    ker = kernel_simples(f, fp, tol)
    return float(sum(fp.dims[x] ** 2 for x in ker))
