# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: cocycle checks and modular Smith elimination.

Contracts match ``_pykernels``.
"""
import numpy as np

ctypedef long long i64


cdef inline i64 pmod(i64 a, i64 m) nogil:
    a = a % m
    return a + m if a < 0 else a


cdef inline i64 cgcd(i64 a, i64 b) nogil:
    cdef i64 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline void xgcd(i64 a, i64 b, i64* g, i64* s, i64* t) nogil:
    cdef i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1, q, tmp
    while b:
        q = a // b
        tmp = a - q * b
        a = b
        b = tmp
        tmp = x0 - q * x1
        x0 = x1
        x1 = tmp
        tmp = y0 - q * y1
        y0 = y1
        y1 = tmp
    g[0] = a
    s[0] = x0
    t[0] = y0


cdef i64 unit_normalizer(i64 p, i64 modulus):
    cdef i64 g = cgcd(p, modulus)
    cdef i64 m = modulus // g
    cdef i64 u, gg, s, t
    if m == 1:
        return 1
    xgcd(pmod(p // g, m), m, &gg, &s, &t)
    u = pmod(s, m)
    while cgcd(u, modulus) != 1:
        u += m
    return u % modulus


def cocycle_defect(table, values, i64 modulus):
    cdef const i64[:, ::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[:, :, ::1] a = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t g1, g2, g3, g4
    cdef i64 d
    for g1 in range(n):
        for g2 in range(n):
            for g3 in range(n):
                for g4 in range(n):
                    d = (a[g2, g3, g4] - a[t[g1, g2], g3, g4] + a[g1, t[g2, g3], g4]
                         - a[g1, g2, t[g3, g4]] + a[g1, g2, g3])
                    if d % modulus != 0:
                        return (g1, g2, g3, g4)
    return None


def coboundary2(table, beta, i64 modulus):
    cdef const i64[:, ::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[:, ::1] b = np.ascontiguousarray(beta, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    out = np.empty((n, n, n), dtype=np.int64)
    cdef i64[:, :, ::1] o = out
    cdef Py_ssize_t g1, g2, g3
    for g1 in range(n):
        for g2 in range(n):
            for g3 in range(n):
                o[g1, g2, g3] = pmod(b[g2, g3] - b[t[g1, g2], g3] + b[g1, t[g2, g3]] - b[g1, g2], modulus)
    return out


def smith_diagonal_mod(a, i64 modulus):
    arr = np.array(a, dtype=np.int64) % modulus
    cdef i64[:, ::1] A = arr
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, i, j, pi, pj, k
    cdef i64 M = modulus, best, gv, p, u, g, b, g2, s, t, q, x, y
    cdef bint dirty, found
    diag = []
    while r < min(rows, cols):
        best = M + 1
        pi = -1
        pj = -1
        for i in range(r, rows):
            for j in range(r, cols):
                if A[i, j] != 0:
                    gv = cgcd(A[i, j], M)
                    if gv < best:
                        best = gv
                        pi = i
                        pj = j
            if best == 1:
                break
        if pi < 0:
            break
        if pi != r:
            for k in range(cols):
                x = A[r, k]
                A[r, k] = A[pi, k]
                A[pi, k] = x
        if pj != r:
            for k in range(rows):
                x = A[k, r]
                A[k, r] = A[k, pj]
                A[k, pj] = x
        while True:
            p = A[r, r]
            u = unit_normalizer(p, M)
            if u != 1:
                for k in range(cols):
                    A[r, k] = (A[r, k] * u) % M
            g = A[r, r]
            for i in range(r + 1, rows):
                b = A[i, r]
                if b == 0:
                    continue
                if b % g != 0:
                    xgcd(g, b, &g2, &s, &t)
                    for k in range(cols):
                        x = A[r, k]
                        y = A[i, k]
                        A[r, k] = pmod(s * x + t * y, M)
                        A[i, k] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    g = A[r, r]
                else:
                    q = b // g
                    for k in range(r, cols):
                        A[i, k] = pmod(A[i, k] - q * A[r, k], M)
            dirty = False
            for j in range(r + 1, cols):
                b = A[r, j]
                if b == 0:
                    continue
                if b % g != 0:
                    xgcd(g, b, &g2, &s, &t)
                    for k in range(rows):
                        x = A[k, r]
                        y = A[k, j]
                        A[k, r] = pmod(s * x + t * y, M)
                        A[k, j] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    g = A[r, r]
                    dirty = True
                else:
                    q = b // g
                    for k in range(rows):
                        A[k, j] = pmod(A[k, j] - q * A[k, r], M)
            if dirty:
                found = False
                for i in range(r + 1, rows):
                    if A[i, r] != 0:
                        found = True
                        break
                if found:
                    continue
            break
        diag.append(int(cgcd(A[r, r], M)))
        r += 1
    return diag


def solve_mod(a, rhs, i64 modulus):
    arr = np.array(a, dtype=np.int64) % modulus
    carr = np.array(rhs, dtype=np.int64) % modulus
    cdef i64[:, ::1] A = arr
    cdef i64[::1] c = carr
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    varr = np.eye(cols, dtype=np.int64)
    cdef i64[:, ::1] V = varr
    cdef Py_ssize_t r = 0, i, j, pi, pj, k
    cdef i64 M = modulus, best, gv, p, u, g, b, g2, s, t, q, x, y, m
    cdef bint dirty, found
    pivots = []
    while r < min(rows, cols):
        best = M + 1
        pi = -1
        pj = -1
        for i in range(r, rows):
            for j in range(r, cols):
                if A[i, j] != 0:
                    gv = cgcd(A[i, j], M)
                    if gv < best:
                        best = gv
                        pi = i
                        pj = j
            if best == 1:
                break
        if pi < 0:
            break
        if pi != r:
            for k in range(cols):
                x = A[r, k]
                A[r, k] = A[pi, k]
                A[pi, k] = x
            x = c[r]
            c[r] = c[pi]
            c[pi] = x
        if pj != r:
            for k in range(rows):
                x = A[k, r]
                A[k, r] = A[k, pj]
                A[k, pj] = x
            for k in range(cols):
                x = V[k, r]
                V[k, r] = V[k, pj]
                V[k, pj] = x
        while True:
            p = A[r, r]
            u = unit_normalizer(p, M)
            if u != 1:
                for k in range(cols):
                    A[r, k] = (A[r, k] * u) % M
                c[r] = (c[r] * u) % M
            g = A[r, r]
            for i in range(r + 1, rows):
                b = A[i, r]
                if b == 0:
                    continue
                if b % g != 0:
                    xgcd(g, b, &g2, &s, &t)
                    for k in range(cols):
                        x = A[r, k]
                        y = A[i, k]
                        A[r, k] = pmod(s * x + t * y, M)
                        A[i, k] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    x = c[r]
                    y = c[i]
                    c[r] = pmod(s * x + t * y, M)
                    c[i] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    g = A[r, r]
                else:
                    q = b // g
                    for k in range(r, cols):
                        A[i, k] = pmod(A[i, k] - q * A[r, k], M)
                    c[i] = pmod(c[i] - q * c[r], M)
            dirty = False
            for j in range(r + 1, cols):
                b = A[r, j]
                if b == 0:
                    continue
                if b % g != 0:
                    xgcd(g, b, &g2, &s, &t)
                    for k in range(rows):
                        x = A[k, r]
                        y = A[k, j]
                        A[k, r] = pmod(s * x + t * y, M)
                        A[k, j] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    for k in range(cols):
                        x = V[k, r]
                        y = V[k, j]
                        V[k, r] = pmod(s * x + t * y, M)
                        V[k, j] = pmod(-(b // g2) * x + (g // g2) * y, M)
                    g = A[r, r]
                    dirty = True
                else:
                    q = b // g
                    for k in range(rows):
                        A[k, j] = pmod(A[k, j] - q * A[k, r], M)
                    for k in range(cols):
                        V[k, j] = pmod(V[k, j] - q * V[k, r], M)
            if dirty:
                found = False
                for i in range(r + 1, rows):
                    if A[i, r] != 0:
                        found = True
                        break
                if found:
                    continue
            break
        pivots.append(A[r, r])
        r += 1
    for i in range(r, rows):
        if c[i] != 0:
            return None
    yv = np.zeros(cols, dtype=np.int64)
    for i, pp in enumerate(pivots):
        g = cgcd(pp, M)
        if c[i] % g != 0:
            return None
        m = M // g
        if m > 1:
            yv[i] = ((c[i] // g) * unit_inverse(pp // g, m)) % m
    return (varr @ yv) % M


cdef i64 unit_inverse(i64 a, i64 m):
    cdef i64 g, s, t
    xgcd(pmod(a, m), m, &g, &s, &t)
    return pmod(s, m)
