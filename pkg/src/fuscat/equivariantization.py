"""Group actions on fusion rings and the simples of the equivariantization.

An action is a basis permutation for every group element. Simples of
``C^G`` are modelled as pairs (orbit, irreducible character of the stabilizer
of the orbit's least element), with FP dimension
``|orbit| * degree * FPdim(representative)``. This ignores any stabilizer
2-cocycle, which basis permutations cannot record; the dimension identity
``FPdim C^G = |G| FPdim C`` is asserted so a mismatch would surface.
Fusion rules of ``C^G`` are not determined by this data and are not built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .characters import character_table, rep_fusion_ring
from .errors import ConsistencyError, StructureError
from .functors import _kernel_from_dims
from .fusion_ring import FPData, FusionRing, fpdim
from .groups import FiniteGroup, GroupExtension
from .tolerances import AGG_TOL, OBJ_TOL
from .validation import ValidationReport


@dataclass(frozen=True, eq=False)
class GroupAction:
    """``perms[g][x]`` is the image of basis element ``x`` under ``g``."""

    group: FiniteGroup
    ring: FusionRing
    perms: np.ndarray

    def __post_init__(self):
        p = np.array(self.perms, dtype=np.int64)
        if p.shape != (self.group.order, self.ring.rank):
            raise StructureError(
                f"action needs one permutation of length {self.ring.rank} per group element, "
                f"got shape {p.shape}"
            )
        if p.size and not (np.sort(p, axis=1) == np.arange(self.ring.rank)).all():
            raise StructureError("every action entry must be a permutation of the basis")
        p.flags.writeable = False
        object.__setattr__(self, "perms", p)


def trivial_action(g: FiniteGroup, ring: FusionRing) -> GroupAction:
    return GroupAction(g, ring, np.tile(np.arange(ring.rank), (g.order, 1)))


def validate_action(a: GroupAction) -> ValidationReport:
    """Identity, composition, unit, duality and structure-constant checks."""
    report = ValidationReport()
    p = a.perms
    ring = a.ring
    ident = np.arange(ring.rank)
    if not np.array_equal(p[0], ident):
        report.add("axiom", "identity", (0,), "the identity element acts nontrivially")
    t = a.group.table
    composed = p[np.arange(a.group.order)[:, None, None], p[None, :, :]]  # [g, h, x] = pi_g(pi_h(x))
    bad = np.argwhere((composed != p[t]).any(axis=2))
    for g, h in bad:
        report.add("axiom", "composition", (int(g), int(h)), "pi_g pi_h != pi_gh")
    for g in np.nonzero(p[:, ring.unit] != ring.unit)[0]:
        report.add("axiom", "unit", (int(g),), f"moves the unit to {int(p[g, ring.unit])}")
    dual = np.array(ring.dual)
    for g, x in np.argwhere(p[:, dual] != dual[p]):
        report.add("axiom", "duality", (int(g), int(x)), "pi_g(x*) != pi_g(x)*")
    N = ring.N
    for g in range(a.group.order):
        pg = p[g]
        moved = N[np.ix_(pg, pg, pg)]
        for i, j, k in np.argwhere(moved != N):
            report.add("axiom", "structure constants", (g, int(i), int(j), int(k)),
                       f"N[pi i, pi j, pi k] = {moved[i, j, k]}, N[i, j, k] = {N[i, j, k]}")
    return report


def orbits(a: GroupAction) -> list[tuple[int, ...]]:
    """Orbits as sorted tuples, ordered by least element."""
    seen = set()
    out = []
    for x in range(a.ring.rank):
        if x in seen:
            continue
        orb = tuple(sorted(set(int(y) for y in a.perms[:, x])))
        seen.update(orb)
        out.append(orb)
    return out


def stabilizer(a: GroupAction, x: int) -> tuple[int, ...]:
    return tuple(int(g) for g in np.nonzero(a.perms[:, x] == x)[0])


@dataclass(frozen=True)
class EquivariantSimple:
    orbit: tuple[int, ...]
    irrep: int
    degree: int
    fpdim: float


@dataclass
class EquivariantSimples:
    entries: list[EquivariantSimple]
    group_order: int
    ring_fpdim: float
    fpdims: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        self.fpdims = tuple(e.fpdim for e in self.entries)

    @property
    def total(self) -> float:
        return float(sum(d * d for d in self.fpdims))

    @property
    def residual(self) -> float:
        return abs(self.total - self.group_order * self.ring_fpdim)

    def __len__(self):
        return len(self.entries)


def equivariant_simples(a: GroupAction, fp: FPData | None = None, seed: int = 0,
                        tol: float = AGG_TOL) -> EquivariantSimples:
    fp = fpdim(a.ring) if fp is None else fp
    entries = []
    for orb in orbits(a):
        rep = orb[0]
        stab, _ = a.group.subgroup(stabilizer(a, rep))
        table = character_table(stab, seed)
        for i, d in enumerate(table.degrees):
            entries.append(EquivariantSimple(orb, i, d, len(orb) * d * fp.dims[rep]))
    es = EquivariantSimples(entries, a.group.order, fp.total)
    if es.residual >= tol:
        raise ConsistencyError(
            f"sum of squared dimensions {es.total} differs from |G| FPdim = "
            f"{a.group.order * fp.total}; the action is not untwisted"
        )
    return es


@dataclass(frozen=True, eq=False)
class ForgetfulMatrix:
    """Multiplicities ``m[X, e]`` of ring simples in the image of each equivariant simple.

    Not a :class:`FunctorMatrix`: the source basis has FP dimensions but no
    fusion ring.
    """

    simples: EquivariantSimples
    target: FusionRing
    m: np.ndarray


def forgetful_functor(a: GroupAction, es: EquivariantSimples) -> ForgetfulMatrix:
    m = np.zeros((a.ring.rank, len(es)), dtype=np.int64)
    for col, e in enumerate(es.entries):
        m[list(e.orbit), col] = e.degree
    m.flags.writeable = False
    return ForgetfulMatrix(es, a.ring, m)


@dataclass
class EquivariantSequenceReport:
    kernel: tuple[int, ...]
    unit_orbit_entries: tuple[int, ...]
    kernel_is_unit_orbit: bool
    degrees_match: bool
    total_residual: float
    dominant: bool
    normal: bool
    passed: bool


def check_equivariant_sequence(a: GroupAction, es: EquivariantSimples, u: ForgetfulMatrix,
                               tols=(OBJ_TOL, AGG_TOL), seed: int = 0) -> EquivariantSequenceReport:
    """``rep G -> C^G -> C`` at the level of dimensions."""
    obj_tol, agg_tol = tols
    unit = a.ring.unit
    ker = _kernel_from_dims(u.m, unit, es.fpdims, obj_tol)
    unit_entries = frozenset(i for i, e in enumerate(es.entries) if unit in e.orbit)
    group_degrees = sorted(character_table(a.group, seed).degrees)
    kernel_degrees = sorted(es.entries[i].degree for i in ker)
    dominant = bool((u.m.sum(axis=1) > 0).all())
    hits = set(int(x) for x in np.nonzero(u.m[unit] > 0)[0])
    normal = hits <= ker
    residual = es.residual
    passed = (ker == unit_entries and kernel_degrees == group_degrees
              and residual < agg_tol and dominant and normal)
    return EquivariantSequenceReport(tuple(sorted(ker)), tuple(sorted(unit_entries)),
                                     ker == unit_entries, kernel_degrees == group_degrees,
                                     residual, dominant, normal, passed)


def conjugation_action(ext: GroupExtension, seed: int = 0) -> GroupAction:
    """The quotient acting on ``rep`` of the kernel by ``chi -> chi(g^-1 . g)``.

    ``g`` is the least lift of each quotient element; inner automorphisms of
    the kernel fix every character, so the choice of lift does not matter.
    """
    big, sub, quot = ext.group, ext.kernel, ext.quotient
    table = character_table(sub, seed)
    ring = rep_fusion_ring(table)
    incl = ext.inclusion.array
    pos = np.full(big.order, -1)
    pos[incl] = np.arange(sub.order)
    values = table.on_elements()
    proj = ext.projection.array
    t, inv = big.table, big.inverse
    perms = []
    for q in range(quot.order):
        g = int(np.nonzero(proj == q)[0][0])
        moved = pos[t[t[inv[g], incl], g]]  # g^-1 n g as kernel elements
        twisted = values[:, moved]
        perm = []
        for i in range(len(table)):
            match = np.nonzero(np.abs(values - twisted[i]).max(axis=1) < AGG_TOL)[0]
            if match.size != 1:
                raise ConsistencyError("conjugated character does not match a unique irreducible")
            perm.append(int(match[0]))
        perms.append(perm)
    return GroupAction(quot, ring, perms)
