"""Eigenvalues of a dense real matrix.

Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
form, then Francis double-shift QR with deflation. Only eigenvalues are
produced; no Schur vectors are accumulated.
"""
import numpy as np

from ..errors import ConvergenceError
from ._checks import EPS, as_matrix

SWEEPS_PER_ROW = 30


def balance(a):
    """Similarity-scale rows/columns by powers of two so that their
    off-diagonal 1-norms are comparable. Eigenvalues are unchanged."""
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    for _ in range(100):
        done = True
        for i in range(n):
            c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
            r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            f = 1.0
            g = r / 2.0
            while c < g:
                f *= 2.0
                c *= 4.0
            g = r * 2.0
            while c > g:
                f /= 2.0
                c /= 4.0
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
        if done:
            break
    return a


def _householder(x):
    """Return (v, beta) with v[0] = 1 such that (I - beta v v^T) x = mu e1."""
    v = np.array(x, dtype=np.float64)
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return v, 0.0
    v /= scale
    sigma = v[1:] @ v[1:]
    if sigma == 0.0:
        return v, 0.0
    x0 = v[0]
    mu = np.sqrt(x0 * x0 + sigma)
    v0 = x0 - mu if x0 <= 0.0 else -sigma / (x0 + mu)
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0)
    v[0] = v0
    v /= v0
    return v, beta


def hessenberg(a):
    """Upper Hessenberg matrix orthogonally similar to ``a``."""
    h = np.array(a, dtype=np.float64)
    n = h.shape[0]
    for k in range(n - 2):
        v, beta = _householder(h[k + 1:, k])
        if beta == 0.0:
            continue
        h[k + 1:, k:] -= beta * np.outer(v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= beta * np.outer(h[:, k + 1:] @ v, v)
        h[k + 2:, k] = 0.0
    return h


def _eig2(b):
    """Eigenvalues of a real 2x2 block, conjugate pair if complex."""
    a, bb, c, d = b[0, 0], b[0, 1], b[1, 0], b[1, 1]
    p = 0.5 * (a - d)
    disc = p * p + bb * c
    if disc >= 0.0:
        z = p + np.copysign(np.sqrt(disc), p)
        if z == 0.0:
            return complex(d), complex(d)
        return complex(d + z), complex(d - bb * c / z)
    im = np.sqrt(-disc)
    return complex(d + p, im), complex(d + p, -im)


def _francis_step(h, exceptional):
    """One implicit double-shift QR sweep on the unreduced block ``h``."""
    p = h.shape[0]
    if exceptional:
        w = abs(h[p - 1, p - 2]) + abs(h[p - 2, p - 3])
        s, t = 1.5 * w, w * w
    else:
        s = h[p - 2, p - 2] + h[p - 1, p - 1]
        t = h[p - 2, p - 2] * h[p - 1, p - 1] - h[p - 2, p - 1] * h[p - 1, p - 2]
    x = h[0, 0] * h[0, 0] + h[0, 1] * h[1, 0] - s * h[0, 0] + t
    y = h[1, 0] * (h[0, 0] + h[1, 1] - s)
    z = h[1, 0] * h[2, 1]
    for k in range(p - 2):
        v, beta = _householder([x, y, z])
        if beta != 0.0:
            q = max(0, k - 1)
            h[k:k + 3, q:] -= beta * np.outer(v, v @ h[k:k + 3, q:])
            r = min(k + 4, p)
            h[:r, k:k + 3] -= beta * np.outer(h[:r, k:k + 3] @ v, v)
        x = h[k + 1, k]
        y = h[k + 2, k]
        if k < p - 3:
            z = h[k + 3, k]
    v, beta = _householder([x, y])
    if beta != 0.0:
        h[p - 2:, p - 3:] -= beta * np.outer(v, v @ h[p - 2:, p - 3:])
        h[:, p - 2:] -= beta * np.outer(h[:, p - 2:] @ v, v)


def _hessenberg_qr(h):
    n = h.shape[0]
    out = np.empty(n, dtype=np.complex128)
    norm = np.sum(np.abs(h)) or 1.0
    budget = SWEEPS_PER_ROW * n
    hi, its, total = n - 1, 0, 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = norm
            if abs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            its = 0
        elif lo == hi - 1:
            out[hi - 1], out[hi] = _eig2(h[hi - 1:hi + 1, hi - 1:hi + 1])
            hi -= 2
            its = 0
        else:
            if total >= budget:
                raise ConvergenceError(
                    f"QR iteration budget ({budget} sweeps) exhausted "
                    f"while isolating eigenvalue index {hi}", index=hi)
            its += 1
            total += 1
            _francis_step(h[lo:hi + 1, lo:hi + 1], exceptional=its % 10 == 0)
    return out


def eigenvalues(m):
    """All eigenvalues of a real square matrix, repeated by algebraic
    multiplicity. Complex eigenvalues come in exact conjugate pairs;
    the order is unspecified."""
    a = as_matrix(m, square=True, complex_ok=False)
    if a.shape[0] == 1:
        return a[0].astype(np.complex128)
    return _hessenberg_qr(hessenberg(balance(a)))
