import warnings

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings

from dirres.errors import GraphError, IllConditionedWarning, NumericalError, SingularMatrixError
from dirres.linalg import (
    inverse,
    lu_solve,
    penrose_residuals,
    pseudoinverse_laplacian,
    rank_one_downdate,
    submatrix_removing,
    trace,
)
from dirres.resistance import laplacian

from .conftest import directed_cycle, strong_digraphs

# L^+ of I - P for the directed 3-cycle, frozen from numpy.linalg.pinv
C3_LDAG = np.array([
    [1 / 3, 0.0, -1 / 3],
    [-1 / 3, 1 / 3, 0.0],
    [0.0, -1 / 3, 1 / 3],
])


def test_lu_identity(rng):
    B = rng.normal(size=(4, 3))
    np.testing.assert_array_equal(lu_solve(np.eye(4), B), B)


def test_lu_diagonal():
    np.testing.assert_allclose(lu_solve([[2.0, 0.0], [0.0, 4.0]], np.eye(2)), np.diag([0.5, 0.25]))


def test_lu_residual(rng):
    A = rng.normal(size=(8, 8)) + 8 * np.eye(8)
    B = rng.normal(size=(8, 2))
    X = lu_solve(A, B)
    assert np.abs(A @ X - B).max() <= 1e-9


def test_lu_vector_rhs(rng):
    A = rng.normal(size=(5, 5)) + 5 * np.eye(5)
    b = rng.normal(size=5)
    np.testing.assert_allclose(lu_solve(A, b), np.linalg.solve(A, b), atol=1e-12)


def test_lu_needs_pivoting():
    # zero in the (0, 0) slot: fails without row exchanges
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(lu_solve(A, [2.0, 3.0]), [3.0, 2.0])


def test_lu_singular():
    with pytest.raises(SingularMatrixError):
        lu_solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])
    with pytest.raises(SingularMatrixError):
        lu_solve(np.zeros((3, 3)), np.ones(3))


def test_lu_ill_conditioned_warns():
    # Hilbert(10): condition ~1.6e13, smallest relative pivot ~2.6e-12
    with pytest.warns(IllConditionedWarning):
        lu_solve(sla.hilbert(10), np.ones(10))


def test_lu_rejects_bad_input():
    with pytest.raises(ValueError):
        lu_solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(ValueError):
        lu_solve(np.eye(2), np.ones(3))
    with pytest.raises(NumericalError):
        lu_solve([[np.nan]], [1.0])


def test_trace_examples(rng):
    assert trace(np.eye(5)) == 5
    assert trace([[1, 9], [9, 2]]) == 3
    A, B = rng.normal(size=(6, 6)), rng.normal(size=(6, 6))
    assert abs(trace(A @ B) - trace(B @ A)) <= 1e-9


def test_submatrix_removing():
    A = np.arange(16.0).reshape(4, 4)
    sub, kept = submatrix_removing(A[:3, :3], [2])
    np.testing.assert_array_equal(sub, A[:2, :2])
    sub, kept = submatrix_removing(A, [])
    np.testing.assert_array_equal(sub, A)
    sub, kept = submatrix_removing(A, [0, 2])
    np.testing.assert_array_equal(sub, A[np.ix_([1, 3], [1, 3])])
    assert list(kept) == [1, 3]
    with pytest.raises(ValueError):
        submatrix_removing(A, range(4))


def test_downdate_c3():
    Ainv = np.array([[1.0, 1.0], [0.0, 1.0]])
    np.testing.assert_allclose(rank_one_downdate(Ainv, 1), [[1.0]])


def test_downdate_vs_direct(rng):
    for _ in range(20):
        m = int(rng.integers(2, 15))
        A = rng.normal(size=(m, m)) + m * np.eye(m)
        v = int(rng.integers(m))
        got = rank_one_downdate(np.linalg.inv(A), v)
        keep = [i for i in range(m) if i != v]
        want = np.linalg.inv(A[np.ix_(keep, keep)])
        assert np.abs(got - want).max() <= 1e-8


def test_downdate_guards():
    with pytest.raises(ValueError):
        rank_one_downdate(np.array([[2.0]]), 0)
    with pytest.raises(NumericalError):
        rank_one_downdate(np.array([[0.0, 1.0], [1.0, 0.0]]), 0)


def test_pinv_two_vertex():
    np.testing.assert_allclose(pseudoinverse_laplacian([[1.0, -1.0], [-1.0, 1.0]]),
                               [[0.25, -0.25], [-0.25, 0.25]], atol=1e-15)


def test_pinv_c3_frozen():
    L = laplacian(directed_cycle(3))
    np.testing.assert_allclose(L, np.eye(3) - np.roll(np.eye(3), 1, axis=1), atol=1e-15)
    Ldag = pseudoinverse_laplacian(L)
    np.testing.assert_allclose(Ldag, C3_LDAG, atol=1e-14)
    assert abs(np.trace(Ldag) - 1.0) <= 1e-14
    assert max(penrose_residuals(L, Ldag).values()) <= 1e-14


def test_pinv_rejects_non_laplacian():
    with pytest.raises(GraphError):
        pseudoinverse_laplacian(np.eye(3))


@settings(max_examples=50, deadline=None)
@given(strong_digraphs(max_n=20))
def test_pinv_matches_numpy_and_is_involutive(g):
    L = laplacian(g)
    Ldag = pseudoinverse_laplacian(L)
    scale = max(1.0, np.abs(Ldag).max())
    assert np.abs(Ldag - np.linalg.pinv(L)).max() <= 1e-8 * scale
    centering = np.eye(g.n) - 1.0 / g.n
    assert np.abs(L @ Ldag - centering).max() <= 1e-8
    assert np.abs(Ldag @ L - centering).max() <= 1e-8
    back = np.linalg.pinv(Ldag, rcond=1e-10)
    assert np.abs(back - L).max() <= 1e-8 * max(1.0, np.abs(L).max())


def test_inverse_matches_numpy(rng):
    A = rng.normal(size=(7, 7)) + 7 * np.eye(7)
    with warnings.catch_warnings():
        warnings.simplefilter("error", IllConditionedWarning)
        np.testing.assert_allclose(inverse(A), np.linalg.inv(A), atol=1e-12)
