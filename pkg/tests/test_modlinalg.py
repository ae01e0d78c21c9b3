import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from tatekit.modlinalg import (LinAlgError, NoRootError, Solver, Subspace, image_basis, inverse, inv, is_prime,
                               kernel_basis, mat_pow, mm, primitive_root_of_unity, rank, rref, solve)

P = 5


def mats(max_rows=7, max_cols=7, p=P):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


def test_rref_examples():
    r, piv = rref([[2, 4], [1, 2]], 5)
    assert r.tolist() == [[1, 2], [0, 0]] and piv == [0]
    r, piv = rref(np.eye(3, dtype=np.int64), 7)
    assert np.array_equal(r, np.eye(3)) and piv == [0, 1, 2]
    r, piv = rref(np.zeros((2, 3), dtype=np.int64), 5)
    assert not r.any() and piv == []


def test_kernel_examples():
    k = kernel_basis([[1, 2]], 5)
    assert k.dim == 1
    v = k.basis[0]
    # proportional to (3, 1)
    assert (v[0] * 1 - v[1] * 3) % 5 == 0
    assert kernel_basis([[1, 2], [3, 4]], 5).dim == 0
    assert kernel_basis(np.zeros((2, 2), dtype=np.int64), 5).dim == 2


def test_solve_examples():
    m = [[1, 0], [0, 0]]
    assert solve(m, [1, 0], 5).tolist() == [1, 0]
    assert solve(m, [0, 1], 5) is None
    b = np.array([3, 6, 2])
    assert solve(np.eye(3, dtype=np.int64), b, 7).tolist() == b.tolist()
    with pytest.raises(LinAlgError):
        solve(m, [1, 2, 3], 5)


def test_solve_tall_path():
    rng = np.random.default_rng(3)
    m = rng.integers(0, 7, size=(400, 5))
    x = rng.integers(0, 7, size=5)
    b = mm(m, x.reshape(-1, 1), 7)[:, 0]
    y = solve(m, b, 7)
    assert np.array_equal(mm(m, y.reshape(-1, 1), 7)[:, 0], b)
    b[0] = (b[0] + 1) % 7
    assert solve(m, b, 7) is None


def test_subspace_examples():
    e = np.eye(3, dtype=np.int64)
    a, b = Subspace.span(e[:1], 5), Subspace.span(e[1:2], 5)
    assert a.sum(b).dim == 2 and a.intersection(b).dim == 0
    assert a.sum(a) == a and a.intersection(a) == a
    q = a.quotient_projection()
    assert q.shape == (2, 3) and rank(q, 5) == 2 and not mm(q, e[0].reshape(-1, 1), 5).any()
    with pytest.raises(LinAlgError):
        a.sum(Subspace.zero(4, 5))


def test_roots_of_unity():
    assert primitive_root_of_unity(5, 2) == 4
    assert primitive_root_of_unity(7, 3) == 2
    with pytest.raises(NoRootError):
        primitive_root_of_unity(5, 3)


def test_scalar_helpers():
    assert is_prime(7) and not is_prime(9) and not is_prime(1)
    assert all(a * inv(a, 11) % 11 == 1 for a in range(1, 11))
    m = np.array([[1, 1], [0, 1]])
    assert mat_pow(m, 25, 25).tolist() == [[1, 0], [0, 1]]
    with pytest.raises(LinAlgError):
        inverse([[1, 2], [2, 4]], 5)


@settings(max_examples=200, deadline=None)
@given(mats())
def test_rank_nullity(m):
    assert rank(m, P) + kernel_basis(m, P).dim == m.shape[1]


@settings(max_examples=200, deadline=None)
@given(mats())
def test_rref_idempotent(m):
    r, piv = rref(m, P)
    r2, piv2 = rref(r, P)
    assert np.array_equal(r, r2) and piv == piv2
    assert all(a < b for a, b in zip(piv, piv[1:]))
    assert Subspace.span(m, P) == Subspace.span(r, P)


@settings(max_examples=200, deadline=None)
@given(mats(), st.data())
def test_solve_consistent(m, data):
    x = data.draw(arrays(np.int64, m.shape[1], elements=st.integers(0, P - 1)))
    b = mm(m, x.reshape(-1, 1), P)[:, 0]
    y = solve(m, b, P)
    assert y is not None and np.array_equal(mm(m, y.reshape(-1, 1), P)[:, 0], b)
    z = Solver(m, P).solve_exact(b)
    assert np.array_equal(mm(m, z.reshape(-1, 1), P)[:, 0], b)


@settings(max_examples=200, deadline=None)
@given(mats())
def test_kernel_and_image(m):
    k = kernel_basis(m, P)
    if k.dim:
        assert not mm(m, k.basis.T, P).any()
    assert image_basis(m, P).dim == rank(m, P)


def test_sum_intersection_formula_random_pairs():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        a = Subspace.span(rng.integers(0, P, size=(int(rng.integers(0, n + 1)), n)), P, n)
        b = Subspace.span(rng.integers(0, P, size=(int(rng.integers(0, n + 1)), n)), P, n)
        s, i = a.sum(b), a.intersection(b)
        assert a.dim + b.dim == s.dim + i.dim
        assert s.contains_space(a) and a.contains_space(i) and b.contains_space(i)


@settings(max_examples=100, deadline=None)
@given(mats(5, 5))
def test_quotient_projection_kernel(m):
    s = Subspace.span(m, P)
    q = s.quotient_projection()
    assert q.shape[0] == s.ambient_dim - s.dim
    assert rank(q, P) == q.shape[0]
    assert kernel_basis(q, P) == s if q.shape[0] else s.dim == s.ambient_dim
