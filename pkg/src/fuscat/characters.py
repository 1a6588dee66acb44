"""Character tables by Burnside's class-matrix method, and rep-ring functors.

Class multiplication coefficients are exact integers. A random real
combination of the class matrices is diagonalised numerically; its
eigenvectors, scaled to 1 on the identity class, are the central characters
``|C| chi(g) / chi(1)``. Degrees follow from the orthogonality relation and
every integer consumed downstream (degrees, fusion multiplicities, functor
multiplicities) is rounded with a checked residual.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, NumericalError, PreconditionError
from .functors import FunctorMatrix
from .fusion_ring import FusionRing
from .groups import FiniteGroup, GroupHom, class_index, conjugacy_classes
from .tolerances import AGG_TOL

#: how many perturbation seeds to try before giving up on eigenspace separation
SEED_ATTEMPTS = 16


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: tuple[tuple[int, ...], ...]
    values: np.ndarray  # values[i, c] = chi_i(class c)
    degrees: tuple[int, ...]

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes])

    @property
    def class_of(self) -> np.ndarray:
        return class_index(self.group)

    def __len__(self):
        return len(self.degrees)

    def on_elements(self) -> np.ndarray:
        """``[i, g] = chi_i(g)`` for every group element."""
        return self.values[:, self.class_of]

    def inner(self, f, h) -> complex:
        """``<f, h> = 1/|G| sum_g f(g) conj(h(g))`` for class functions on classes."""
        return complex(np.sum(self.class_sizes * np.asarray(f) * np.conj(h)) / self.group.order)

    def orthogonality_residual(self) -> float:
        sizes = self.class_sizes
        gram = (self.values * sizes) @ self.values.conj().T / self.group.order
        return float(np.abs(gram - np.eye(len(self))).max())

    def column_orthogonality_residual(self) -> float:
        sizes = self.class_sizes
        gram = self.values.conj().T @ self.values
        expected = np.diag(self.group.order / sizes)
        return float(np.abs(gram - expected).max())

    def export(self) -> dict:
        return {
            "order": self.group.order,
            "class_sizes": [len(c) for c in self.classes],
            "representatives": [c[0] for c in self.classes],
            "degrees": list(self.degrees),
            "rows": [[[float(v.real), float(v.imag)] for v in row] for row in self.values],
        }


def class_coefficients(g: FiniteGroup) -> np.ndarray:
    """``c[r, s, t] = #{(x, y) in C_r x C_s : x y = z}`` for a fixed ``z`` in ``C_t``."""
    classes = conjugacy_classes(g)
    cls = class_index(g)
    k = len(classes)
    coeff = np.zeros((k, k, k), dtype=np.int64)
    xs = np.arange(g.order)
    for t, c in enumerate(classes):
        ys = g.table[g.inverse[xs], c[0]]  # y = x^-1 z
        np.add.at(coeff[:, :, t], (cls[xs], cls[ys]), 1)
    return coeff


@functools.lru_cache(maxsize=128)
def character_table(g: FiniteGroup, seed: int = 0) -> CharacterTable:
    """Irreducible complex characters of ``g``.

    Rows are sorted by degree, then by descending values, so the trivial
    character is first. ``seed`` starts the deterministic sequence of random
    class-matrix combinations used to separate eigenspaces.
    """
    classes = conjugacy_classes(g)
    sizes = np.array([len(c) for c in classes], dtype=float)
    k = len(classes)
    coeff = class_coefficients(g).astype(float)
    # (mats[r])[s, t] = c[r, s, t]; central characters w satisfy mats[r] w = w_r w
    mats = coeff
    scale = max(1.0, float(np.abs(mats).max()))

    for attempt in range(SEED_ATTEMPTS):
        rng = np.random.default_rng(seed + attempt)
        weights = rng.uniform(0.5, 1.5, size=k)
        combo = np.einsum("r,rst->st", weights, mats)
        eigvals, eigvecs = np.linalg.eig(combo)
        gaps = np.abs(eigvals[:, None] - eigvals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if k > 1 and gaps.min() < 1e-6 * scale:
            continue
        if np.any(np.abs(eigvecs[0]) < 1e-12):
            continue
        central = (eigvecs / eigvecs[0]).T  # rows: w with w[0] = 1
        resid = max(
            float(np.abs(mats[r] @ w - w[r] * w).max()) for w in central for r in range(k)
        )
        if resid > 1e-8 * scale:
            continue
        break
    else:
        raise NumericalError(
            f"could not separate class-matrix eigenspaces for a group of order {g.order} "
            f"after {SEED_ATTEMPTS} seeds starting at {seed}; retry with another --seed"
        )

    norms = np.sum(np.abs(central) ** 2 / sizes, axis=1)
    raw_degrees = np.sqrt(g.order / norms)
    degrees = np.rint(raw_degrees).astype(np.int64)
    if np.abs(raw_degrees - degrees).max() > AGG_TOL:
        raise IntegrityError(f"character degrees {raw_degrees} are not integers")
    values = degrees[:, None] * central / sizes[None, :]

    def sort_key(i):
        vals = np.round(values[i], 6) + 0.0
        return (int(degrees[i]), tuple((-v.real + 0.0, -v.imag + 0.0) for v in vals))

    order = sorted(range(k), key=sort_key)
    values = values[order]
    degrees = degrees[order]
    table = CharacterTable(g, classes, values, tuple(int(d) for d in degrees))

    if sum(d * d for d in table.degrees) != g.order:
        raise IntegrityError("sum of squared degrees differs from the group order")
    if table.orthogonality_residual() > AGG_TOL:
        raise IntegrityError(f"row orthogonality residual {table.orthogonality_residual():.3g}")
    if np.abs(values[0] - 1).max() > AGG_TOL:
        raise IntegrityError("first character is not trivial")
    return table


def _round_checked(raw: np.ndarray, what: str) -> np.ndarray:
    if np.abs(raw.imag).max(initial=0.0) > AGG_TOL:
        raise IntegrityError(f"{what}: imaginary residual {np.abs(raw.imag).max():.3g}")
    rounded = np.rint(raw.real)
    err = np.abs(raw.real - rounded).max(initial=0.0)
    if err > AGG_TOL:
        raise IntegrityError(f"{what}: distance {err:.3g} from the nearest integer")
    if rounded.min(initial=0.0) < 0:
        raise IntegrityError(f"{what}: negative multiplicity")
    return rounded.astype(np.int64)


def fusion_coefficients(t: CharacterTable) -> np.ndarray:
    """Unrounded ``N[i, j, k] = <chi_i chi_j, chi_k>`` as complex floats."""
    sizes = t.class_sizes
    v = t.values
    return np.einsum("c,ic,jc,kc->ijk", sizes, v, v, v.conj()) / t.group.order


@functools.lru_cache(maxsize=128)
def rep_fusion_ring(t: CharacterTable) -> FusionRing:
    """Grothendieck ring of the representation category."""
    n = _round_checked(fusion_coefficients(t), "fusion coefficient")
    conj = t.values.conj()
    dual = []
    for i in range(len(t)):
        match = np.nonzero(np.abs(t.values - conj[i]).max(axis=1) < AGG_TOL)[0]
        if match.size != 1:
            raise IntegrityError(f"character {i} has no unique complex conjugate")
        dual.append(int(match[0]))
    labels = ["1"] + [f"chi{i}_{d}" for i, d in enumerate(t.degrees) if i > 0]
    quads = [(i, j, k, int(n[i, j, k])) for i, j, k in zip(*np.nonzero(n))]
    return FusionRing(labels, 0, dual, quads)


def restriction_functor(big: CharacterTable, sub) -> FunctorMatrix:
    """Restriction ``rep G -> rep H`` for the subgroup on element set ``sub``."""
    g = big.group
    h, incl = g.subgroup(sub)
    small = character_table(h)
    big_on_h = big.on_elements()[:, list(incl.map)]  # [j, h] = chi_j(incl h)
    psi = small.on_elements()  # [i, h]
    raw = psi.conj() @ big_on_h.T / h.order  # [i, j] = <Res chi_j, psi_i>
    m = _round_checked(raw, "restriction multiplicity")
    return FunctorMatrix(rep_fusion_ring(big), rep_fusion_ring(small), m)


def inflation_functor(quot: CharacterTable, proj: GroupHom) -> FunctorMatrix:
    """Pull back ``rep G' -> rep G`` along a surjection ``G -> G'``."""
    if proj.target != quot.group:
        raise PreconditionError("projection target is not the quotient group of the table")
    if not proj.is_surjective():
        raise PreconditionError("projection is not surjective")
    big = character_table(proj.source)
    pulled = quot.on_elements()[:, list(proj.map)]  # [i, g] = chi'_i(pi g)
    chi = big.on_elements()
    raw = chi.conj() @ pulled.T / proj.source.order  # [j, i] = <chi'_i o pi, chi_j>
    m = _round_checked(raw, "inflation multiplicity")
    return FunctorMatrix(rep_fusion_ring(quot), rep_fusion_ring(big), m)


def induced_character(big: CharacterTable, sub, psi_values) -> np.ndarray:
    """Values on the classes of ``big`` of the character induced from ``sub``.

    ``psi_values`` is indexed by the elements of ``sub`` in ascending order.
    """
    g = big.group
    sub = sorted(set(int(x) for x in sub))
    pos = {x: i for i, x in enumerate(sub)}
    t, inv = g.table, g.inverse
    out = []
    for c in big.classes:
        rep = c[0]
        total = 0j
        for x in range(g.order):
            y = int(t[t[x, rep], inv[x]])
            if y in pos:
                total += psi_values[pos[y]]
        out.append(total / len(sub))
    return np.array(out)
