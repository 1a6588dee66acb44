"""Smith normal form over the integers, with unimodular transforms.

Works on Python integers so intermediate values never overflow. ``U A V = D``
where ``D`` is diagonal with nonnegative entries, each dividing the next.
The inverses of ``U`` and ``V`` are tracked alongside on request, which gives
an exact unimodularity certificate without computing determinants.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s a + t b = g = gcd(a, b)`` up to sign."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


@dataclass(frozen=True)
class SmithDecomposition:
    shape: tuple[int, int]
    diagonal: tuple[int, ...]  # length min(shape); trailing zeros past the rank
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    u_inv: tuple[tuple[int, ...], ...] | None = None
    v_inv: tuple[tuple[int, ...], ...] | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    def diagonal_matrix(self) -> Matrix:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out

    def verify(self, a: Sequence[Sequence[int]]) -> bool:
        """Exact check of ``U A V = D``, the divisibility chain and, when tracked, ``U U^-1 = V V^-1 = I``."""
        a = [[int(x) for x in row] for row in a]
        m, n = self.shape
        if matmul(matmul(self.u, a), self.v) != self.diagonal_matrix():
            return False
        nz = self.invariant_factors
        if any(d < 0 for d in self.diagonal) or any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
            return False
        if any(self.diagonal[i] == 0 and self.diagonal[i + 1] != 0 for i in range(len(self.diagonal) - 1)):
            return False
        if self.u_inv is not None and matmul(self.u, self.u_inv) != _identity(m):
            return False
        if self.v_inv is not None and matmul(self.v, self.v_inv) != _identity(n):
            return False
        return True

    def apply_u(self, vec: Sequence[int]) -> list[int]:
        return [sum(x * y for x, y in zip(row, vec) if x) for row in self.u]

    def apply_v(self, vec: Sequence[int]) -> list[int]:
        return [sum(x * y for x, y in zip(row, vec) if x) for row in self.v]


class _Eliminator:
    def __init__(self, a: Sequence[Sequence[int]], inverses: bool):
        self.A = [[int(x) for x in row] for row in a]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.m else 0
        self.U = _identity(self.m)
        self.V = _identity(self.n)
        self.Ui = _identity(self.m) if inverses else None
        self.Vi = _identity(self.n) if inverses else None

    # row operations act on A and U from the left, on U^-1 from the right
    def swap_rows(self, i, k):
        if i == k:
            return
        A, U = self.A, self.U
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        if self.Ui is not None:
            for row in self.Ui:
                row[i], row[k] = row[k], row[i]

    def add_row(self, i, k, q, start=0):
        """row_i += q * row_k"""
        if not q:
            return
        Ai, Ak = self.A[i], self.A[k]
        for c in range(start, self.n):
            if Ak[c]:
                Ai[c] += q * Ak[c]
        Ui, Uk = self.U[i], self.U[k]
        for c in range(self.m):
            if Uk[c]:
                Ui[c] += q * Uk[c]
        if self.Ui is not None:
            for row in self.Ui:
                if row[i]:
                    row[k] -= q * row[i]

    def negate_row(self, i):
        self.A[i] = [-x for x in self.A[i]]
        self.U[i] = [-x for x in self.U[i]]
        if self.Ui is not None:
            for row in self.Ui:
                row[i] = -row[i]

    # column operations act on A and V from the right, on V^-1 from the left
    def swap_cols(self, j, k):
        if j == k:
            return
        for row in self.A:
            row[j], row[k] = row[k], row[j]
        for row in self.V:
            row[j], row[k] = row[k], row[j]
        if self.Vi is not None:
            self.Vi[j], self.Vi[k] = self.Vi[k], self.Vi[j]

    def add_col(self, j, k, q, start=0):
        """col_j += q * col_k"""
        if not q:
            return
        for r in range(start, self.m):
            row = self.A[r]
            if row[k]:
                row[j] += q * row[k]
        for row in self.V:
            if row[k]:
                row[j] += q * row[k]
        if self.Vi is not None:
            Vk, Vj = self.Vi[k], self.Vi[j]
            for c in range(self.n):
                if Vj[c]:
                    Vk[c] -= q * Vj[c]

    def combine_rows(self, i, k, s, t, x, y):
        """``(row_i, row_k) <- (s row_i + t row_k, x row_i + y row_k)`` with ``s y - t x = 1``."""
        A, U = self.A, self.U
        A[i], A[k] = ([s * a + t * b for a, b in zip(A[i], A[k])],
                      [x * a + y * b for a, b in zip(A[i], A[k])])
        U[i], U[k] = ([s * a + t * b for a, b in zip(U[i], U[k])],
                      [x * a + y * b for a, b in zip(U[i], U[k])])
        if self.Ui is not None:
            # inverse of [[s, t], [x, y]] is [[y, -t], [-x, s]], applied on the right
            for row in self.Ui:
                a, b = row[i], row[k]
                row[i], row[k] = a * y - b * x, -a * t + b * s

    def combine_cols(self, j, k, s, t, x, y):
        """``(col_j, col_k) <- (s col_j + t col_k, x col_j + y col_k)`` with ``s y - t x = 1``."""
        for mat in (self.A, self.V):
            for row in mat:
                a, b = row[j], row[k]
                row[j], row[k] = s * a + t * b, x * a + y * b
        if self.Vi is not None:
            Vi = self.Vi
            Vi[j], Vi[k] = ([y * a - x * b for a, b in zip(Vi[j], Vi[k])],
                            [-t * a + s * b for a, b in zip(Vi[j], Vi[k])])

    def run(self) -> list[int]:
        A, m, n = self.A, self.m, self.n
        diag = []
        for t in range(min(m, n)):
            pivot = self._smallest(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                for i in range(t + 1, m):
                    b = A[i][t]
                    if not b:
                        continue
                    p = A[t][t]
                    if b % p:
                        g, s, u = _xgcd(p, b)
                        self.combine_rows(t, i, s, u, -(b // g), p // g)
                    else:
                        self.add_row(i, t, -(b // p), start=t)
                dirty = False
                for j in range(t + 1, n):
                    b = A[t][j]
                    if not b:
                        continue
                    p = A[t][t]
                    if b % p:
                        g, s, u = _xgcd(p, b)
                        self.combine_cols(t, j, s, u, -(b // g), p // g)
                        dirty = True
                    else:
                        self.add_col(j, t, -(b // p), start=t)
                if dirty and any(A[i][t] for i in range(t + 1, m)):
                    continue
                # divisibility: fold in a row holding an entry not divisible by the pivot
                p = A[t][t]
                bad = next((i for i in range(t + 1, m)
                            if any(A[i][c] % p for c in range(t + 1, n))), None)
                if bad is None:
                    break
                self.add_row(t, bad, 1, start=t)
            if A[t][t] < 0:
                self.negate_row(t)
            diag.append(A[t][t])
        diag += [0] * (min(m, n) - len(diag))
        return diag

    def _smallest(self, t):
        best = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return i, j
        return None if best is None else best[1:]


def smith_normal_form(a: Sequence[Sequence[int]], inverses: bool = False) -> SmithDecomposition:
    """Smith normal form of an integer matrix given as nested sequences."""
    e = _Eliminator(a, inverses)
    diag = e.run()
    freeze = lambda mat: None if mat is None else tuple(tuple(r) for r in mat)  # noqa: E731
    return SmithDecomposition((e.m, e.n), tuple(diag), freeze(e.U), freeze(e.V),
                              freeze(e.Ui), freeze(e.Vi))
