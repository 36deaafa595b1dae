"""Singular values via Golub-Kahan bidiagonalization and implicit-shift
QR on the bidiagonal (real or complex input)."""
import numpy as np

from ..errors import ConvergenceError
from ._checks import EPS, as_matrix


def _reflector(x):
    """(w, beta) with (I - beta w w^H) x = alpha e1, valid for complex x."""
    w = np.array(x, copy=True)
    nrm = np.linalg.norm(w)
    if nrm == 0.0 or nrm == abs(w[0]) and np.all(w[1:] == 0):
        return w, 0.0
    x0 = w[0]
    phase = x0 / abs(x0) if x0 != 0 else 1.0
    w[0] = x0 + phase * nrm
    beta = 2.0 / np.real(np.vdot(w, w))
    return w, beta


def bidiagonalize(a):
    """Return |diagonal| and |superdiagonal| of a bidiagonal matrix with the
    same singular values as ``a`` (rows >= cols required)."""
    b = np.array(a, copy=True)
    m, n = b.shape
    for j in range(n):
        w, beta = _reflector(b[j:, j])
        if beta:
            b[j:, j:] -= beta * np.outer(w, w.conj() @ b[j:, j:])
        if j < n - 2:
            w, beta = _reflector(b[j, j + 1:].conj())
            if beta:
                b[j:, j + 1:] -= beta * np.outer(b[j:, j + 1:] @ w, w.conj())
    # unitary diagonal scalings make every entry real and nonnegative
    return np.abs(np.diag(b)[:n]), np.abs(np.diag(b, 1)[:n - 1])


def _rot(y, z):
    r = np.hypot(y, z)
    if r == 0.0:
        return 1.0, 0.0, 0.0
    return y / r, z / r, r


def _gk_step(d, e, lo, hi):
    # Wilkinson shift from the trailing 2x2 of B^T B
    dm, dn, fn = d[hi - 1], d[hi], e[hi - 1]
    fm = e[hi - 2] if hi - 1 > lo else 0.0
    t11, t12, t22 = dm * dm + fm * fm, dm * fn, dn * dn + fn * fn
    delta = 0.5 * (t11 - t22)
    den = delta + np.copysign(np.hypot(delta, t12), delta)
    mu = t22 - t12 * t12 / den if den != 0.0 else t22

    y = d[lo] * d[lo] - mu
    z = d[lo] * e[lo]
    for k in range(lo, hi):
        c, s, r = _rot(y, z)
        if k > lo:
            e[k - 1] = r
        dk, ek = d[k], e[k]
        d[k] = c * dk + s * ek
        e[k] = -s * dk + c * ek
        bulge = s * d[k + 1]
        d[k + 1] = c * d[k + 1]

        c, s, r = _rot(d[k], bulge)
        d[k] = r
        ek, dk1 = e[k], d[k + 1]
        e[k] = c * ek + s * dk1
        d[k + 1] = -s * ek + c * dk1
        if k < hi - 1:
            y = e[k]
            z = s * e[k + 1]
            e[k + 1] = c * e[k + 1]


def _chase_zero_diagonal(d, e, k, hi):
    """d[k] == 0: rotate the coupling out so the block splits at k."""
    if k < hi:
        x, e[k] = e[k], 0.0
        for j in range(k + 1, hi + 1):
            c, s, r = _rot(d[j], x)
            d[j] = r
            if j < hi:
                x = -s * e[j]
                e[j] = c * e[j]
    else:
        x, e[hi - 1] = e[hi - 1], 0.0
        for j in range(hi - 1, -1, -1):
            c, s, r = _rot(d[j], x)
            d[j] = r
            if j > 0 and e[j - 1] != 0.0:
                x = -s * e[j - 1]
                e[j - 1] = c * e[j - 1]
            else:
                break


def bidiagonal_singular_values(d, e):
    d = np.array(d, dtype=np.float64)
    e = np.array(e, dtype=np.float64)
    n = d.size
    scale = max(np.max(np.abs(d)), np.max(np.abs(e), initial=0.0))
    if scale == 0.0:
        return np.zeros(n)
    d /= scale
    e /= scale
    budget = 60 * n + 100
    steps = 0
    while True:
        small = np.abs(e) <= EPS * (np.abs(d[:-1]) + np.abs(d[1:]))
        e[small] = 0.0
        hi = n - 1
        while hi > 0 and e[hi - 1] == 0.0:
            hi -= 1
        if hi == 0:
            break
        lo = hi - 1
        while lo > 0 and e[lo - 1] != 0.0:
            lo -= 1
        tiny = np.nonzero(np.abs(d[lo:hi + 1]) <= EPS)[0]
        if tiny.size:
            k = lo + int(tiny[0])
            d[k] = 0.0
            _chase_zero_diagonal(d, e, k, hi)
            continue
        if steps >= budget:
            raise ConvergenceError(
                f"bidiagonal QR did not converge in {budget} steps", index=hi)
        steps += 1
        _gk_step(d, e, lo, hi)
    return np.abs(d) * scale


def singular_values(m):
    """Singular values of a real or complex matrix, sorted descending.

    Returns ``min(rows, cols)`` values. Their squares are the eigenvalues of
    the Gram matrix ``m^H m`` (or ``m m^H``).
    """
    a = as_matrix(m)
    if a.shape[0] < a.shape[1]:
        a = a.conj().T
    d, e = bidiagonalize(a)
    s = bidiagonal_singular_values(d, e)
    return np.sort(s)[::-1]
