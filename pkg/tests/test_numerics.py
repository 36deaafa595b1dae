import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from linspect.errors import (ConvergenceError, DimensionError, MatrixOverflowError,
                             ParameterError, SingularMatrixError)
from linspect.numerics import (EPS, complex_solve, eigenvalues, expm,
                               singular_values, solve)
from linspect.numerics.eig import balance, hessenberg


def same_multiset(got, want, tol):
    got, want = list(np.asarray(got, complex)), list(np.asarray(want, complex))
    assert len(got) == len(want)
    scale = max(1.0, max(abs(w) for w in want))
    for w in want:
        k = int(np.argmin([abs(g - w) for g in got]))
        assert abs(got[k] - w) <= tol * scale, (got, want)
        got.pop(k)


seeds = st.integers(0, 2**32 - 1)


# -- eigenvalues ---------------------------------------------------------------

def test_eig_diagonal():
    same_multiset(eigenvalues(np.diag([2.0, 3.0])), [2, 3], 1e-14)


def test_eig_rotation():
    same_multiset(eigenvalues([[0.0, 1.0], [-1.0, 0.0]]), [1j, -1j], 1e-14)


def test_eig_companion():
    # lambda^2 - 3 lambda + 2
    same_multiset(eigenvalues([[3.0, -2.0], [1.0, 0.0]]), [1, 2], 1e-13)


def test_eig_residual_oracle(rng):
    a = rng.standard_normal((4, 4)) + 4 * np.eye(4)
    for lam in eigenvalues(a):
        # smallest singular value of a - lam I vanishes at an eigenvalue
        s = np.linalg.svd(a - lam * np.eye(4), compute_uv=False)
        assert s[-1] / s[0] <= 1e-12


def test_eig_scalar_and_zero():
    assert eigenvalues([[7.5]]) == pytest.approx([7.5])
    same_multiset(eigenvalues(np.zeros((3, 3))), [0, 0, 0], 0)


def test_eig_rejects_nonsquare():
    with pytest.raises(DimensionError):
        eigenvalues(np.ones((2, 3)))


def test_eig_rejects_nonfinite():
    with pytest.raises(ParameterError):
        eigenvalues([[1.0, np.nan], [0.0, 1.0]])


def test_eig_budget_exhaustion_names_index(monkeypatch):
    import linspect.numerics.eig as eig
    monkeypatch.setattr(eig, "SWEEPS_PER_ROW", 0)
    with pytest.raises(ConvergenceError) as info:
        eigenvalues(np.random.default_rng(0).standard_normal((5, 5)))
    assert info.value.index is not None


def test_eig_defective_and_graded():
    jordan = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 1.0], [0.0, 0.0, 2.0]])
    same_multiset(eigenvalues(jordan), [2, 2, 2], 1e-5)
    graded = np.diag([1e-6, 1.0, 1e6]) + np.triu(np.ones((3, 3)), 1)
    same_multiset(eigenvalues(graded), [1e-6, 1.0, 1e6], 1e-12)


def test_balance_preserves_spectrum(rng):
    a = rng.standard_normal((6, 6)) * np.logspace(-4, 4, 6)[:, None]
    b = balance(a)
    same_multiset(np.linalg.eigvals(b), np.linalg.eigvals(a), 1e-10)


def test_hessenberg_structure(rng):
    a = rng.standard_normal((6, 6))
    h = hessenberg(a)
    assert np.all(np.tril(h, -2) == 0)
    same_multiset(np.linalg.eigvals(h), np.linalg.eigvals(a), 1e-11)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 9))
def test_eig_matches_lapack(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    same_multiset(eigenvalues(a), np.linalg.eigvals(a), 1e-9)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8))
def test_eig_conjugate_pairs(seed, n):
    vals = eigenvalues(np.random.default_rng(seed).standard_normal((n, n)))
    for v in vals:
        if v.imag != 0:
            assert min(abs(w - np.conj(v)) for w in vals) <= 1e-9 * max(1, abs(v))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_eig_trace_and_determinant(seed):
    a = np.random.default_rng(seed).standard_normal((5, 5))
    a *= 10 / max(abs(np.linalg.eigvals(a)))
    vals = eigenvalues(a)
    tr, det = np.trace(a), np.linalg.det(a)
    assert abs(np.sum(vals) - tr) <= 1e-8 * max(1, abs(tr))
    assert abs(np.prod(vals) - det) <= 1e-8 * max(1, abs(det))


# -- singular values -----------------------------------------------------------

def test_svd_examples():
    assert np.allclose(singular_values(np.eye(3)), [1, 1, 1], atol=1e-15)
    assert np.allclose(singular_values([[3.0, 0.0], [0.0, 0.0]]), [3, 0], atol=1e-15)
    assert np.allclose(singular_values([[1.0, 1.0], [0.0, 0.0]]), [np.sqrt(2), 0],
                       atol=1e-15)


def test_svd_empty():
    with pytest.raises(DimensionError):
        singular_values(np.zeros((0, 3)))


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(1, 7), st.integers(1, 7), st.booleans())
def test_svd_matches_lapack(seed, r, c, cplx):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((r, c))
    if cplx:
        m = m + 1j * rng.standard_normal((r, c))
    s = singular_values(m)
    assert s.shape == (min(r, c),)
    assert np.all(s >= 0) and np.all(np.diff(s) <= 0)
    assert np.allclose(s, np.linalg.svd(m, compute_uv=False), rtol=0,
                       atol=1e-12 * max(1, s[0]))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6))
def test_svd_orthogonal_invariance(seed, n):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    u, _ = np.linalg.qr(rng.standard_normal((n, n)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)))
    s0, s1 = singular_values(m), singular_values(u @ m @ v)
    assert np.allclose(s0, s1, rtol=1e-10, atol=1e-12 * s0[0])


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 6))
def test_svd_gram_eigenvalues(seed, n):
    m = np.random.default_rng(seed).standard_normal((n + 1, n))
    s = singular_values(m)
    assert np.allclose(np.sort(s**2), np.sort(np.linalg.eigvalsh(m.T @ m)),
                       atol=1e-10 * s[0] ** 2)


def test_svd_rank_deficient(rng):
    m = rng.standard_normal((5, 2)) @ rng.standard_normal((2, 4))
    s = singular_values(m)
    assert np.all(s[2:] <= 1e-13 * s[0])


# -- expm ----------------------------------------------------------------------

def test_expm_examples():
    assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))
    assert np.allclose(expm([[0.0, 1.0], [0.0, 0.0]]), [[1, 1], [0, 1]], atol=1e-15)
    assert expm([[-1.0]])[0, 0] == pytest.approx(0.36787944117144233, rel=1e-15)


def test_expm_derivative_at_zero(rng):
    a = rng.standard_normal((4, 4))
    t = 1e-6
    assert np.allclose((expm(t * a) - expm(-t * a)) / (2 * t), a, atol=1e-8)


def test_expm_errors():
    with pytest.raises(DimensionError):
        expm(np.ones((2, 3)))
    with pytest.raises(MatrixOverflowError):
        expm(np.array([[800.0]]) * np.ones((2, 2)))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8), st.floats(1e-3, 50))
def test_expm_matches_scipy(seed, n, scale):
    a = np.random.default_rng(seed).standard_normal((n, n))
    a *= scale / np.linalg.norm(a, 1)
    want = scipy.linalg.expm(a)
    assert np.allclose(expm(a), want, rtol=1e-11, atol=1e-11 * np.abs(want).max())


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6))
def test_expm_inverse(seed, n):
    a = np.random.default_rng(seed).standard_normal((n, n))
    a *= 2 / np.linalg.norm(a, 2)
    assert np.allclose(expm(a) @ expm(-a), np.eye(n), atol=1e-9)


# -- solves --------------------------------------------------------------------

def test_solve_examples():
    b = np.array([1.0 + 2j, 3.0])
    assert np.array_equal(complex_solve(np.eye(2), b), b)
    assert np.allclose(complex_solve(np.diag([2, 1j]), [2, 1j]), [1, 1])


def test_solve_matrix_rhs(rng):
    a = rng.standard_normal((4, 4)) + 4 * np.eye(4)
    b = rng.standard_normal((4, 3))
    assert np.allclose(a @ solve(a, b), b, atol=1e-12)


def test_solve_singular_names_column():
    a = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]])
    with pytest.raises(SingularMatrixError) as info:
        complex_solve(a, np.ones(3))
    assert info.value.column is not None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve(np.eye(3), np.ones(2))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8), st.floats(0, 6))
def test_complex_solve_residual(seed, n, log_cond):
    rng = np.random.default_rng(seed)
    u, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    a = u @ np.diag(np.logspace(0, -log_cond, n)) @ v
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = complex_solve(a, b)
    assert np.linalg.norm(a @ x - b) <= 1e-10 * np.linalg.norm(a, 2) * np.linalg.norm(x)


def test_eps_is_double():
    assert EPS == 2.0**-52
