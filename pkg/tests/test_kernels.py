import itertools
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuscat import kernels
from fuscat.cohomology import d2_matrix, d3_matrix
from fuscat.groups import cyclic_group, symmetric_group
from fuscat.smith import smith_normal_form

from oracles import coboundary_naive, is_cocycle_naive

BACKENDS = kernels.available_backends()


def column_space(a, m):
    """Every ``a x`` mod ``m``, by enumerating all ``x``."""
    a = np.asarray(a, dtype=np.int64)
    return {tuple((a @ np.array(x)) % m) for x in itertools.product(range(m), repeat=a.shape[1])}


def matrices_mod(max_side=3):
    return st.tuples(st.integers(1, max_side), st.integers(1, max_side), st.integers(2, 12)).flatmap(
        lambda s: st.tuples(
            st.lists(st.lists(st.integers(0, 40), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]),
            st.just(s[2])))


def test_backend_selection():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(case=matrices_mod())
def test_diagonal_counts_column_space(name, case):
    a, m = case
    diag = kernels.get_backend(name).smith_diagonal_mod(np.array(a), m)
    assert all(m % d == 0 for d in diag)
    assert prod(m // d for d in diag) == len(column_space(a, m))


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(case=matrices_mod(), data=st.data())
def test_solve_mod_against_enumeration(name, case, data):
    a, m = case
    a = np.array(a, dtype=np.int64)
    rhs = np.array(data.draw(st.lists(st.integers(0, m - 1), min_size=a.shape[0], max_size=a.shape[0])))
    x = kernels.get_backend(name).solve_mod(a, rhs, m)
    reachable = tuple(rhs % m) in column_space(a, m)
    if x is None:
        assert not reachable
    else:
        assert np.array_equal((a @ np.asarray(x)) % m, rhs % m)


@pytest.mark.parametrize("name", BACKENDS)
def test_solve_mod_inputs_untouched(name):
    a = np.array([[2, 4], [6, 8]], dtype=np.int64)
    rhs = np.array([2, 6], dtype=np.int64)
    kernels.get_backend(name).solve_mod(a, rhs, 12)
    kernels.get_backend(name).smith_diagonal_mod(a, 12)
    assert a.tolist() == [[2, 4], [6, 8]] and rhs.tolist() == [2, 6]


def test_diagonal_agrees_with_integer_form():
    a = d3_matrix(cyclic_group(3))
    factors = smith_normal_form(a.tolist()).invariant_factors
    for m in (2, 3, 6, 9):
        expected = prod(m // gcd(f, m) for f in factors)
        for name in BACKENDS:
            diag = kernels.get_backend(name).smith_diagonal_mod(a, m)
            assert prod(m // d for d in diag) == expected


@pytest.mark.parametrize("name", BACKENDS)
def test_coboundary_kernel_matches_naive(name):
    g = symmetric_group(3)
    rng = np.random.default_rng(0)
    beta = rng.integers(0, 7, size=(6, 6))
    beta[0, :] = 0
    beta[:, 0] = 0
    out = kernels.get_backend(name).coboundary2(g.table, beta, 7)
    assert np.array_equal(out, np.array(coboundary_naive(g.table.tolist(), beta.tolist(), 7)))


@pytest.mark.parametrize("name", BACKENDS)
def test_cocycle_defect_matches_naive(name):
    g = cyclic_group(3)
    rng = np.random.default_rng(2)
    for _ in range(20):
        a = rng.integers(0, 3, size=(3, 3, 3))
        a[0, :, :] = a[:, 0, :] = a[:, :, 0] = 0
        defect = kernels.get_backend(name).cocycle_defect(g.table, a, 3)
        assert (defect is None) == is_cocycle_naive(g.table.tolist(), a.tolist(), 3)


def test_backends_agree_on_bar_complex():
    if len(BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    py, c = kernels.get_backend("python"), kernels.get_backend("compiled")
    g = symmetric_group(3)
    d2 = d2_matrix(g)
    rhs = np.zeros(d2.shape[0], dtype=np.int64)
    rhs[::7] = 6
    for m in (6, 36):
        assert py.smith_diagonal_mod(d2, m) == c.smith_diagonal_mod(d2, m)
        x, y = py.solve_mod(d2, rhs, m), c.solve_mod(d2, rhs, m)
        assert (x is None) == (y is None)
