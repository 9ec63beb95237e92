import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import minimize_scalar

from conez.errors import NonFinite, NotMember, NotPSD, NotSkew
from conez.linalg_core import psd_check
from conez.z_operators import (
    g_value,
    golden_section_max,
    sample_z_lorentz,
    z_assemble,
    z_decompose,
    z_definitional_test,
    z_oracle_lorentz,
    z_oracle_orthant,
)
from numba import njit


def J(n):
    return np.diag(np.where(np.arange(n) == 0, 1.0, -1.0))


def reference_g_max(A):
    """Independent route: LAPACK eigenvalues, coarse grid, then bounded Brent."""
    n = A.shape[0]
    S = J(n) @ A + A.T @ J(n)
    g = lambda gam: np.linalg.eigvalsh(gam * J(n) - S)[0]  # noqa: E731
    R = 2 * np.linalg.norm(S) + 1
    grid = np.linspace(-R, R, 801)
    k = int(np.argmax([g(t) for t in grid]))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(lambda t: -g(t), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return -res.fun


def test_identity_is_member_with_gamma_two():
    for n in (2, 3, 5):
        cert = z_oracle_lorentz(np.eye(n))
        assert cert.member
        assert cert.gamma_star == pytest.approx(2.0, abs=1e-9)
        assert abs(cert.lambda_min_at_star) < 1e-9


def test_identity_g_profile_is_minus_abs():
    for gam in (-3.0, 0.0, 1.5, 2.0, 7.25):
        assert g_value(np.eye(3), gam) == pytest.approx(-abs(gam - 2), abs=1e-14)


def test_nilpotent_is_not_member():
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    # det(gamma J - S) = -gamma^2 - 1 < 0, so the best g is -1 at gamma = 0
    cert = z_oracle_lorentz(A)
    assert not cert.member
    assert cert.decomposition is None
    assert cert.lambda_min_at_star == pytest.approx(-1.0, abs=1e-9)
    assert reference_g_max(A) == pytest.approx(-1.0, abs=1e-9)


def test_minus_j_is_member():
    cert = z_oracle_lorentz(-J(2))
    assert cert.member
    assert cert.gamma_star == pytest.approx(0.0, abs=1e-9)
    assert cert.lambda_min_at_star == pytest.approx(2.0, abs=1e-9)


def test_one_by_one_always_member():
    for a in (-5.0, 0.0, 3.0):
        cert = z_oracle_lorentz([[a]])
        assert cert.member
        t = cert.decomposition
        assert t.gamma_param - (t.P + t.Q)[0, 0] == a


def test_nonfinite_rejected():
    with pytest.raises(NonFinite):
        z_oracle_lorentz([[np.inf, 0.0], [0.0, 1.0]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_oracle_matches_independent_gamma_search(n, rng):
    compared = 0
    while compared < 150:
        A = rng.standard_normal((n, n))
        if rng.random() < 0.5:
            A = A - J(n) * rng.uniform(0, 3)  # bias toward members
        ref = reference_g_max(A)
        cert = z_oracle_lorentz(A)
        assert cert.lambda_min_at_star == pytest.approx(ref, abs=1e-7)
        if abs(ref) > 1e-6:
            assert cert.member == (ref > 0)
            compared += 1


@njit
def _neg_quadratic(x, c):
    return -(x - c) ** 2


@given(st.floats(-50, 50))
def test_golden_section_on_concave_quadratic(c):
    x, fx = golden_section_max(_neg_quadratic, -100.0, 100.0, 1e-9, (c,))
    assert abs(x - c) <= 1e-8
    assert fx <= 0


def test_assemble_examples():
    n = 2
    np.testing.assert_array_equal(z_assemble(1.0, np.zeros((n, n)), np.zeros((n, n))), np.eye(n))
    np.testing.assert_array_equal(z_assemble(0.0, np.eye(n), np.zeros((n, n))), np.diag([-1.0, 1.0]))
    Q = np.array([[0.0, 1.0], [-1.0, 0.0]])
    np.testing.assert_array_equal(z_assemble(0.0, np.zeros((n, n)), Q), [[0.0, -1.0], [-1.0, 0.0]])


def test_assemble_rejects_bad_factors():
    with pytest.raises(NotPSD):
        z_assemble(0.0, -np.eye(2), np.zeros((2, 2)))
    with pytest.raises(NotSkew):
        z_assemble(0.0, np.eye(2), np.ones((2, 2)))


def test_decompose_identity_and_minus_j():
    t = z_decompose(np.eye(3))
    assert t.gamma_param == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(t.P, 0, atol=1e-9)
    np.testing.assert_array_equal(t.Q, 0)
    t = z_decompose(-J(2))
    assert t.gamma_param == pytest.approx(0.0, abs=1e-9)
    np.testing.assert_allclose(t.P, np.eye(2), atol=1e-9)
    np.testing.assert_array_equal(t.Q, 0)


def test_decompose_rejects_non_member():
    with pytest.raises(NotMember):
        z_decompose([[0.0, 1.0], [0.0, 0.0]])


def _residual(A, t):
    n = A.shape[0]
    return np.linalg.norm(A - (t.gamma_param * np.eye(n) - J(n) @ (t.P + t.Q))) / max(1, np.linalg.norm(A))


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_generator_members_decompose(n, seed):
    A = sample_z_lorentz(n, np.random.default_rng(seed))
    cert = z_oracle_lorentz(A)
    assert cert.member
    t = cert.decomposition
    assert _residual(A, t) <= 1e-10
    assert psd_check(t.P)
    assert np.max(np.abs(t.Q + t.Q.T)) <= 1e-12


def test_generator_is_deterministic():
    a = sample_z_lorentz(5, np.random.default_rng(3))
    b = sample_z_lorentz(5, np.random.default_rng(3))
    assert a.tobytes() == b.tobytes()


def test_n2_samples_satisfy_closed_form(rng):
    for _ in range(500):
        (a, b), (c, d) = sample_z_lorentz(2, rng)
        assert a - d <= -abs(b - c) + 1e-9 * max(1, abs(a) + abs(b) + abs(c) + abs(d))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_closure_properties(n, rng):
    for _ in range(40):
        A = sample_z_lorentz(n, rng)
        B = sample_z_lorentz(n, rng)
        assert z_oracle_lorentz(A.T).member
        for c in (-3.0, 1.0, 10.0):
            assert z_oracle_lorentz(A + c * np.eye(n)).member
        assert z_oracle_lorentz(A + B).member
        assert z_oracle_lorentz(rng.uniform(0.01, 100) * A).member


@pytest.mark.parametrize("n", [2, 3, 6])
def test_g_concavity_probe(n, rng):
    for _ in range(200):
        A = rng.standard_normal((n, n))
        g1, g2 = np.sort(rng.uniform(-10, 10, 2))
        t = rng.uniform()
        mid = g_value(A, t * g1 + (1 - t) * g2)
        assert mid >= t * g_value(A, g1) + (1 - t) * g_value(A, g2) - 1e-10


@pytest.mark.parametrize(
    "A, expected",
    [
        ([[1.0, -2.0], [0.0, 3.0]], True),
        ([[0.0, 1.0], [0.0, 0.0]], False),
        (np.diag([4.0, -1.0, 2.0]), True),
    ],
)
def test_orthant_oracle(A, expected):
    assert z_oracle_orthant(A) is expected


@given(arrays(np.float64, 3, elements=st.floats(-1e3, 1e3)))
def test_orthant_diagonal_always_member(d):
    assert z_oracle_orthant(np.diag(d))


def test_definitional_identity(rng):
    assert z_definitional_test(np.eye(4), "lorentz", 2000, rng) <= 1e-9


def test_definitional_finds_nilpotent_violation(rng):
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    x, y = np.array([1.0, 1.0]), np.array([1.0, -1.0])
    assert y @ (A @ x) == 1.0
    assert z_definitional_test(A, "lorentz", 500, rng) > 0


def test_definitional_orthant_zmatrix(rng):
    assert z_definitional_test([[1.0, -2.0], [0.0, 3.0]], "orthant", 2000, rng) <= 1e-9


def test_definitional_rejects_bad_args(rng):
    with pytest.raises(ValueError):
        z_definitional_test(np.eye(2), "lorentz", 0, rng)
    with pytest.raises(ValueError):
        z_definitional_test(np.eye(2), "simplex", 5, rng)
