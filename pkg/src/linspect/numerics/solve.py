"""Gaussian elimination with partial pivoting for real or complex systems."""
import numpy as np

from ..errors import DimensionError, SingularMatrixError
from ._checks import EPS, as_matrix


def solve(a, b):
    """Solve ``a @ x = b``; the result dtype follows the inputs.

    ``b`` may be a vector or a matrix with ``a.shape[0]`` rows. A pivot whose
    magnitude is at most ``n * eps * max|a|`` raises SingularMatrixError
    carrying the column index.
    """
    a = as_matrix(a, square=True, name="a")
    b_arr = np.asarray(b)
    vector = b_arr.ndim == 1
    b2 = as_matrix(b_arr.reshape(-1, 1) if vector else b_arr, name="b")
    n = a.shape[0]
    if b2.shape[0] != n:
        raise DimensionError(f"b has {b2.shape[0]} rows, a is {n}x{n}")

    dtype = np.result_type(a.dtype, b2.dtype)
    lu = a.astype(dtype, copy=True)
    rhs = b2.astype(dtype, copy=True)
    tol = n * EPS * np.max(np.abs(lu))

    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if not abs(lu[p, k]) > tol:
            raise SingularMatrixError(
                f"pivot {abs(lu[p, k]):.3e} below tolerance {tol:.3e} "
                f"in column {k}", column=k)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            rhs[[k, p]] = rhs[[p, k]]
        if k < n - 1:
            f = lu[k + 1:, k] / lu[k, k]
            lu[k + 1:, k:] -= np.outer(f, lu[k, k:])
            rhs[k + 1:] -= np.outer(f, rhs[k])

    x = np.empty_like(rhs)
    for k in range(n - 1, -1, -1):
        x[k] = (rhs[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x[:, 0] if vector else x


def complex_solve(a, b):
    """`solve` carried out in complex arithmetic."""
    return solve(np.asarray(a, dtype=np.complex128),
                 np.asarray(b, dtype=np.complex128))
