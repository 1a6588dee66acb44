"""Pointed categories ``C(G, alpha)`` at the level of Grothendieck rings.

The simple objects are the group elements and tensor product is the group
law, so the fusion ring is the group ring whatever the cocycle. The cocycle
is carried along as data: it decides simplicity through its restrictions
to normal subgroups, which the fusion ring alone cannot see.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .cohomology import Cocycle3, inflate, is_coboundary, is_cocycle, restrict, zero_cocycle
from .errors import ConsistencyError, PreconditionError
from .functors import ExactnessReport, FunctorMatrix, verify_exact_sequence
from .fusion_ring import FusionRing
from .groups import FiniteGroup, GroupExtension, is_simple, normal_subgroups
from .tolerances import AGG_TOL, OBJ_TOL


@dataclass(frozen=True, eq=False)
class PointedCategory:
    group: FiniteGroup
    alpha: Cocycle3

    def __post_init__(self):
        if self.alpha.group != self.group:
            raise PreconditionError("the cocycle lives on a different group")
        if not is_cocycle(self.alpha):
            raise PreconditionError("alpha is not a 3-cocycle")

    @property
    def ring(self) -> FusionRing:
        return pointed_fusion_ring(self)


def untwisted(g: FiniteGroup, modulus: int | None = None) -> PointedCategory:
    """``C(G, 1)``, with the zero cocycle mod ``|G|`` unless told otherwise."""
    return PointedCategory(g, zero_cocycle(g, g.order if modulus is None else modulus))


@functools.lru_cache(maxsize=64)
def group_ring(g: FiniteGroup) -> FusionRing:
    """``N[g, h, k] = 1`` exactly when ``k = g h``; the dual of ``g`` is its inverse."""
    t = g.table
    n = g.order
    labels = g.names if g.names is not None else tuple(f"g{i}" for i in range(n))
    quads = [(a, b, int(t[a, b]), 1) for a in range(n) for b in range(n)]
    return FusionRing(labels, 0, [int(x) for x in g.inverse], quads)


def pointed_fusion_ring(p: PointedCategory) -> FusionRing:
    return group_ring(p.group)


@dataclass
class PointedSequence:
    embedding: FunctorMatrix
    quotient: FunctorMatrix
    report: ExactnessReport
    middle: PointedCategory
    sub: PointedCategory
    quot: PointedCategory


def build_pointed_exact_sequence(ext: GroupExtension, alpha: Cocycle3,
                                 tols=(OBJ_TOL, AGG_TOL)) -> PointedSequence:
    """``C(G', 1) -> C(G, infl alpha) -> C(G'', alpha)`` from ``1 -> G' -> G -> G'' -> 1``."""
    if alpha.group != ext.quotient:
        raise PreconditionError("alpha must live on the quotient group")
    quot = PointedCategory(ext.quotient, alpha)
    middle = PointedCategory(ext.group, inflate(alpha, ext.projection))
    sub = PointedCategory(ext.kernel, zero_cocycle(ext.kernel, alpha.modulus))
    r_sub, r_mid, r_quot = group_ring(ext.kernel), group_ring(ext.group), group_ring(ext.quotient)

    emb = np.zeros((r_mid.rank, r_sub.rank), dtype=np.int64)
    emb[list(ext.inclusion.map), np.arange(r_sub.rank)] = 1
    proj = np.zeros((r_quot.rank, r_mid.rank), dtype=np.int64)
    proj[list(ext.projection.map), np.arange(r_mid.rank)] = 1
    i = FunctorMatrix(r_sub, r_mid, emb)
    f = FunctorMatrix(r_mid, r_quot, proj)
    report = verify_exact_sequence(i, f, tols)
    if not report.verdict:
        raise ConsistencyError(f"pointed sequence from an exact group sequence failed: {report}")
    return PointedSequence(i, f, report, middle, sub, quot)


@dataclass
class SimplicityReport:
    simple: bool
    witness: tuple[int, ...] | None
    checked: list[tuple[tuple[int, ...], bool]] = field(default_factory=list)

    def __bool__(self):
        return self.simple


def is_simple_pointed(p: PointedCategory, method: str = "modular") -> SimplicityReport:
    """Not simple exactly when some normal ``1 < H < G`` has ``alpha|_H`` trivial.

    ``checked`` lists each proper nontrivial normal subgroup with whether the
    restriction was a coboundary. The trivial group gives a non-simple
    category.
    """
    g = p.group
    if g.order == 1:
        return SimplicityReport(False, None)
    report = SimplicityReport(True, None)
    for h in normal_subgroups(g):
        if len(h) in (1, g.order):
            continue
        trivial = is_coboundary(restrict(p.alpha, h), method)
        report.checked.append((h, trivial))
        if trivial and report.witness is None:
            report.simple = False
            report.witness = h
    if p.alpha.is_zero() and report.simple != is_simple(g):
        raise ConsistencyError("untwisted simplicity disagrees with simplicity of the group")
    return report


def is_simple_eno(p: PointedCategory) -> bool:
    """No proper nontrivial fusion subcategory: ``G`` cyclic of prime order."""
    n = p.group.order
    return n > 1 and p.group.is_cyclic() and all(n % k for k in range(2, int(n**0.5) + 1))
