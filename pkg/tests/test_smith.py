import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuscat.smith import matmul, smith_normal_form

from oracles import invariant_factors


def small_matrices(max_side=4, bound=12):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def test_textbook_example():
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    snf = smith_normal_form(a)
    assert snf.diagonal == (2, 6, 12)
    assert snf.verify(a)


def test_zero_and_empty_rows():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.diagonal == (0, 0) and snf.rank == 0
    snf = smith_normal_form([[0, 3]])
    assert snf.diagonal == (3,)


def test_identity_is_fixed():
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    snf = smith_normal_form(eye, inverses=True)
    assert snf.diagonal == (1, 1, 1, 1)
    assert snf.verify(eye)


@settings(max_examples=200, deadline=None)
@given(a=small_matrices())
def test_decomposition_reconstructs(a):
    snf = smith_normal_form(a, inverses=True)
    assert snf.verify(a)
    assert matmul(matmul(snf.u, a), snf.v) == snf.diagonal_matrix()


@settings(max_examples=120, deadline=None)
@given(a=small_matrices(max_side=3, bound=9))
def test_factors_match_determinantal_divisors(a):
    assert list(smith_normal_form(a).invariant_factors) == invariant_factors(a)


def test_large_entries_stay_exact():
    rng = np.random.default_rng(5)
    a = rng.integers(-10**6, 10**6, size=(6, 7)).tolist()
    snf = smith_normal_form(a, inverses=True)
    assert snf.verify(a)
    assert snf.rank == 6


def test_coboundary_shaped_matrix():
    # sparse +-1 matrices like the bar-complex differentials
    rng = np.random.default_rng(1)
    a = rng.choice([-1, 0, 0, 0, 1], size=(30, 20)).tolist()
    snf = smith_normal_form(a, inverses=True)
    assert snf.verify(a)


def test_apply_u_and_v():
    a = [[4, 6], [2, 8]]
    snf = smith_normal_form(a)
    x = [3, -1]
    # U A V (V^-1 x) = D V^-1 x, checked via U (A x)
    ax = [sum(r * c for r, c in zip(row, x)) for row in a]
    assert snf.apply_u(ax) == [sum(r * c for r, c in zip(row, ax)) for row in snf.u]
    assert snf.apply_v([1, 0]) == [row[0] for row in snf.v]
