"""Dense linear algebra on float64 numpy arrays.

LU factorisation is delegated to LAPACK (``getrf``, partial pivoting) via
scipy; everything built on top of it (the shifted pseudoinverse of a
digraph Laplacian, vertex-removal submatrices, the rank-one downdate used
by the greedy selector) lives here.
"""
import warnings

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .config import DEFAULT
from .errors import GraphError, IllConditionedWarning, NumericalError, SingularMatrixError


def _as_square(A, name="A"):
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    return A


def _factor(A, tol):
    """LU factors of ``A`` after the pivot and conditioning checks."""
    if not np.all(np.isfinite(A)):
        raise NumericalError("non-finite entries in matrix")
    absA = np.abs(A)
    scale = absA.max()
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    worst = int(np.argmin(pivots))
    if pivots[worst] < tol.pivot * scale:
        raise SingularMatrixError(
            f"pivot {pivots[worst]:.3e} at step {worst} below "
            f"{tol.pivot:g} * max|A| = {tol.pivot * scale:.3e}"
        )
    rcond, info = lapack.dgecon(lu, absA.sum(axis=0).max(), norm="1")
    if info == 0 and (rcond == 0.0 or 1.0 / rcond > tol.condition_warning):
        warnings.warn(
            f"estimated 1-norm condition number {1.0 / max(rcond, 1e-300):.2e} "
            f"exceeds {tol.condition_warning:g}",
            IllConditionedWarning,
            stacklevel=3,
        )
    return lu, piv


def lu_solve(A, B, tol=DEFAULT):
    """Solve ``A X = B`` by LU with partial pivoting.

    Parameters
    ----------
    A : (n, n) array_like
    B : (n,) or (n, k) array_like
    tol : Tolerances
        ``tol.pivot`` is the singularity threshold relative to ``max|A|``;
        ``tol.condition_warning`` triggers an :class:`IllConditionedWarning`.

    Raises
    ------
    SingularMatrixError
        If a pivot falls below ``tol.pivot * max|A|``.
    """
    A = _as_square(A)
    B = np.asarray(B, dtype=np.float64)
    if B.shape[0] != A.shape[0]:
        raise ValueError(f"shape mismatch: A is {A.shape}, B is {B.shape}")
    if not np.all(np.isfinite(B)):
        raise NumericalError("non-finite entries in right-hand side")
    if A.shape[0] == 0:
        return B.copy()
    X = sla.lu_solve(_factor(A, tol), B, check_finite=False)
    if not np.all(np.isfinite(X)):
        raise NumericalError("LU solve produced non-finite entries")
    return X


def inverse(A, tol=DEFAULT):
    """``A^{-1}`` from the same checked LU factors (LAPACK ``getri``)."""
    A = _as_square(A)
    if A.shape[0] == 0:
        return A.copy()
    lu, piv = _factor(A, tol)
    lwork, _ = lapack.dgetri_lwork(A.shape[0])
    inv, info = lapack.dgetri(lu, piv, lwork=int(lwork), overwrite_lu=True)
    if info != 0 or not np.all(np.isfinite(inv)):
        raise NumericalError(f"inversion failed (info={info})")
    return inv


def trace(A):
    A = _as_square(A)
    return float(np.trace(A))


def submatrix_removing(A, X):
    """Return ``A`` with the rows and columns indexed by ``X`` deleted.

    Returns
    -------
    sub : ndarray
        The ``(n - |X|)``-square submatrix, surviving order preserved.
    kept : ndarray of int
        ``kept[r]`` is the original index of row/column ``r`` of ``sub``.
    """
    A = _as_square(A)
    n = A.shape[0]
    removed = np.zeros(n, dtype=bool)
    for x in X:
        if not 0 <= x < n:
            raise IndexError(f"index {x} out of range for size {n}")
        removed[x] = True
    if removed.all():
        raise ValueError("cannot remove every index")
    kept = np.flatnonzero(~removed)
    return A[np.ix_(kept, kept)].copy(), kept


def rank_one_downdate(Ainv, v, tol=DEFAULT):
    """Inverse of ``A`` with row/column ``v`` deleted, from ``A^{-1}``.

    Uses the Schur complement identity
    ``(A_{\\v})^{-1} = (A^{-1} - A^{-1} e_v e_v^T A^{-1} / A^{-1}_{vv})_{\\v}``
    in O(m^2).
    """
    Ainv = _as_square(Ainv, "Ainv")
    m = Ainv.shape[0]
    if not 0 <= v < m:
        raise IndexError(f"index {v} out of range for size {m}")
    if m == 1:
        raise ValueError("downdating a 1x1 inverse leaves an empty matrix")
    pivot = Ainv[v, v]
    if abs(pivot) <= tol.breakdown:
        raise NumericalError(f"zero pivot {pivot:.3e} in rank-one downdate")
    col = np.delete(Ainv[:, v], v) / pivot
    row = np.delete(Ainv[v, :], v)
    out = np.delete(np.delete(Ainv, v, axis=0), v, axis=1)
    out -= col[:, None] * row[None, :]
    return out


def laplacian_zero_sum_error(L):
    """Largest absolute row or column sum of ``L``."""
    L = _as_square(L, "L")
    return max(np.abs(L.sum(axis=1)).max(), np.abs(L.sum(axis=0)).max())


def pseudoinverse_laplacian(L, tol=DEFAULT):
    """Moore-Penrose pseudoinverse of a matrix with zero row and column sums.

    For such a matrix with a one-dimensional null space spanned by the ones
    vector on both sides, ``L - J/n`` is invertible and

        L^+ = (L - J/n)^{-1} + J/n,     J = 1 1^T.

    Raises
    ------
    GraphError
        If a row or column sum exceeds ``tol.zero_sum * max(1, max|L|)``.
    SingularMatrixError
        If the shifted matrix is singular (null space larger than 1).
    """
    L = _as_square(L, "L")
    n = L.shape[0]
    scale = max(1.0, float(np.abs(L).max()))
    err = laplacian_zero_sum_error(L)
    if err > tol.zero_sum * scale:
        raise GraphError(f"row/column sums not zero (max |sum| = {err:.3e})")
    J = np.full((n, n), 1.0 / n)
    return inverse(L - J, tol=tol) + J


def penrose_residuals(A, M):
    """Max-norm residuals of the four Penrose conditions plus commutation.

    Keys: ``AMA``, ``MAM``, ``AM_sym``, ``MA_sym``, ``commute``.
    """
    A = np.asarray(A, dtype=np.float64)
    M = np.asarray(M, dtype=np.float64)
    AM = A @ M
    MA = M @ A
    return {
        "AMA": float(np.abs(AM @ A - A).max()),
        "MAM": float(np.abs(MA @ M - M).max()),
        "AM_sym": float(np.abs(AM - AM.T).max()),
        "MA_sym": float(np.abs(MA - MA.T).max()),
        "commute": float(np.abs(AM - MA).max()),
    }
