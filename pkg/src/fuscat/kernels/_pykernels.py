"""Pure numpy implementations of the hot loops.

Same contracts as the compiled ``_ckernels`` module.
"""
from __future__ import annotations

from math import gcd

import numpy as np


def cocycle_defect(table, values, modulus):
    """First ``(g1, g2, g3, g4)`` where the 3-coboundary of ``values`` is nonzero mod ``modulus``, else None."""
    t = np.asarray(table, dtype=np.int64)
    a = np.asarray(values, dtype=np.int64)
    n = t.shape[0]
    i1 = np.arange(n)[:, None, None, None]
    i2 = np.arange(n)[None, :, None, None]
    i3 = np.arange(n)[None, None, :, None]
    i4 = np.arange(n)[None, None, None, :]
    d = (a[i2, i3, i4]
         - a[t[i1, i2], i3, i4]
         + a[i1, t[i2, i3], i4]
         - a[i1, i2, t[i3, i4]]
         + a[i1, i2, i3]) % modulus
    bad = np.argwhere(d)
    if bad.size == 0:
        return None
    return tuple(int(x) for x in bad[0])


def coboundary2(table, beta, modulus):
    """Dense 3-cochain ``d beta`` mod ``modulus``."""
    t = np.asarray(table, dtype=np.int64)
    b = np.asarray(beta, dtype=np.int64)
    n = t.shape[0]
    i1 = np.arange(n)[:, None, None]
    i2 = np.arange(n)[None, :, None]
    i3 = np.arange(n)[None, None, :]
    return (b[i2, i3] - b[t[i1, i2], i3] + b[i1, t[i2, i3]] - b[i1, i2]) % modulus


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def unit_normalizer(p, modulus):
    """A unit ``u`` mod ``modulus`` with ``u p = gcd(p, modulus)`` mod ``modulus``."""
    g = gcd(p, modulus)
    m = modulus // g
    if m == 1:
        return 1
    u = pow(p // g, -1, m)
    while gcd(u, modulus) != 1:
        u += m
    return u % modulus


def smith_diagonal_mod(a, modulus):
    """Diagonalise an integer matrix over Z/modulus by invertible row and column operations.

    Returns the nonzero diagonal entries, each normalised to a divisor of
    ``modulus``. The size of the column space mod ``modulus`` is the product
    of ``modulus // d`` over the returned entries. The input is not modified.
    """
    M = int(modulus)
    A = np.array(a, dtype=np.int64) % M
    rows, cols = A.shape
    diag = []
    r = 0
    while r < min(rows, cols):
        sub = A[r:, r:]
        nz = sub != 0
        if not nz.any():
            break
        g_all = np.where(nz, np.gcd(sub, M), M + 1)
        pi, pj = np.unravel_index(np.argmin(g_all), g_all.shape)
        pi += r
        pj += r
        if pi != r:
            A[[r, pi]] = A[[pi, r]]
        if pj != r:
            A[:, [r, pj]] = A[:, [pj, r]]
        while True:
            p = int(A[r, r])
            u = unit_normalizer(p, M)
            if u != 1:
                A[r] = (A[r] * u) % M
            g = int(A[r, r])
            # clear column r below the pivot
            for i in np.nonzero(A[r + 1:, r] % g)[0] + r + 1:
                b = int(A[i, r])
                if b % g == 0:
                    continue
                g2, s, t = _xgcd(g, b)
                row_r = (s * A[r] + t * A[i]) % M
                row_i = ((-(b // g2)) * A[r] + (g // g2) * A[i]) % M
                A[r], A[i] = row_r, row_i
                g = int(A[r, r])
            below = np.nonzero(A[r + 1:, r])[0] + r + 1
            if below.size:
                q = A[below, r] // g
                A[below] = (A[below] - np.outer(q, A[r])) % M
            # clear row r right of the pivot
            dirty = False
            for j in np.nonzero(A[r, r + 1:] % g)[0] + r + 1:
                b = int(A[r, j])
                if b % g == 0:
                    continue
                g2, s, t = _xgcd(g, b)
                col_r = (s * A[:, r] + t * A[:, j]) % M
                col_j = ((-(b // g2)) * A[:, r] + (g // g2) * A[:, j]) % M
                A[:, r], A[:, j] = col_r, col_j
                g = int(A[r, r])
                dirty = True
            right = np.nonzero(A[r, r + 1:])[0] + r + 1
            if right.size:
                q = A[r, right] // g
                A[:, right] = (A[:, right] - np.outer(A[:, r], q)) % M
            if dirty and A[r + 1:, r].any():
                continue
            break
        diag.append(gcd(int(A[r, r]), M))
        r += 1
    return diag


def solve_mod(a, rhs, modulus):
    """A solution ``x`` of ``a x = rhs`` over Z/modulus, or None when there is none.

    Row operations are applied to ``rhs`` as they are applied to ``a``;
    column operations are accumulated in ``V`` so that ``x = V y`` where
    ``y`` solves the diagonal system.
    """
    M = int(modulus)
    A = np.array(a, dtype=np.int64) % M
    c = np.array(rhs, dtype=np.int64) % M
    rows, cols = A.shape
    V = np.eye(cols, dtype=np.int64)
    pivots = []
    r = 0
    while r < min(rows, cols):
        sub = A[r:, r:]
        nz = sub != 0
        if not nz.any():
            break
        g_all = np.where(nz, np.gcd(sub, M), M + 1)
        pi, pj = np.unravel_index(np.argmin(g_all), g_all.shape)
        pi += r
        pj += r
        if pi != r:
            A[[r, pi]] = A[[pi, r]]
            c[[r, pi]] = c[[pi, r]]
        if pj != r:
            A[:, [r, pj]] = A[:, [pj, r]]
            V[:, [r, pj]] = V[:, [pj, r]]
        while True:
            u = unit_normalizer(int(A[r, r]), M)
            if u != 1:
                A[r] = (A[r] * u) % M
                c[r] = (c[r] * u) % M
            g = int(A[r, r])
            for i in np.nonzero(A[r + 1:, r] % g)[0] + r + 1:
                b = int(A[i, r])
                if b % g == 0:
                    continue
                g2, s, t = _xgcd(g, b)
                x, y = A[r].copy(), A[i].copy()
                A[r] = (s * x + t * y) % M
                A[i] = ((-(b // g2)) * x + (g // g2) * y) % M
                cx, cy = int(c[r]), int(c[i])
                c[r] = (s * cx + t * cy) % M
                c[i] = ((-(b // g2)) * cx + (g // g2) * cy) % M
                g = int(A[r, r])
            below = np.nonzero(A[r + 1:, r])[0] + r + 1
            if below.size:
                q = A[below, r] // g
                A[below] = (A[below] - np.outer(q, A[r])) % M
                c[below] = (c[below] - q * c[r]) % M
            dirty = False
            for j in np.nonzero(A[r, r + 1:] % g)[0] + r + 1:
                b = int(A[r, j])
                if b % g == 0:
                    continue
                g2, s, t = _xgcd(g, b)
                for mat in (A, V):
                    x, y = mat[:, r].copy(), mat[:, j].copy()
                    mat[:, r] = (s * x + t * y) % M
                    mat[:, j] = ((-(b // g2)) * x + (g // g2) * y) % M
                g = int(A[r, r])
                dirty = True
            right = np.nonzero(A[r, r + 1:])[0] + r + 1
            if right.size:
                q = A[r, right] // g
                A[:, right] = (A[:, right] - np.outer(A[:, r], q)) % M
                V[:, right] = (V[:, right] - np.outer(V[:, r], q)) % M
            if dirty and A[r + 1:, r].any():
                continue
            break
        pivots.append(int(A[r, r]))
        r += 1
    if c[r:].any():
        return None
    y = np.zeros(cols, dtype=np.int64)
    for i, p in enumerate(pivots):
        g = gcd(p, M)
        if int(c[i]) % g:
            return None
        m = M // g
        y[i] = 0 if m == 1 else (int(c[i]) // g) * pow(p // g, -1, m) % m
    return (V @ y) % M
