"""The cone Z(L) of Lorentz-cone Z-operators, plus the orthant Z-matrix case.

A matrix A is in Z(L) iff ``gamma J - (JA + A^T J)`` is PSD for some real
gamma. The oracle maximises the concave function

    g(gamma) = lambda_min(gamma J - S),    S = JA + A^T J,

by golden-section search and accepts A when the maximum is nonnegative (up
to tolerance). Members are then written as ``gamma I - J(P + Q)`` with P PSD
and Q skew. The spectral gamma and the parametrisation gamma differ by a
factor of two; certificates carry both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DimensionMismatch, NoConvergence, NotMember, NotPSD, NotSkew
from .linalg_core import (
    DEFAULT_TOL,
    Tolerances,
    as_matrix,
    as_vector,
    lambda_extreme,
    psd_check,
    scale,
)
from .lorentz_cone import reflection_diagonal, sample_complementary_pair

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# Stopping width for the gamma search, relative to max(1, ||S||_F).
GAMMA_XTOL = 1e-12


@dataclass(frozen=True)
class Lemma1Triple:
    gamma_param: float
    P: np.ndarray
    Q: np.ndarray


@dataclass(frozen=True)
class ZCertificate:
    member: bool
    gamma_star: float
    lambda_min_at_star: float
    decomposition: Lemma1Triple | None = None

    @property
    def gamma_param(self) -> float:
        return self.gamma_star / 2


@njit(cache=True)
def golden_section_max(f, lo, hi, xtol, args):
    """Maximise a unimodal ``f(x, *args)`` on ``[lo, hi]``.

    Stops once the bracket is no wider than ``xtol``; returns the best probed
    point and its value.
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c, *args)
    fd = f(d, *args)
    while b - a > xtol:
        if fc >= fd:
            b = d
            d, fd = c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c, *args)
        else:
            a = c
            c, fc = d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d, *args)
    if fc >= fd:
        return c, fc
    return d, fd


@njit(cache=True)
def shifted_lambda_min(gamma, S, jdiag):
    M = -S.copy()
    for i in range(S.shape[0]):
        M[i, i] += gamma * jdiag[i]
    return lambda_extreme(M, False)


def _jsym(A: np.ndarray, jdiag: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    JA = jdiag[:, None] * A
    # JA + (JA)^T is exactly symmetric in floating point
    return JA, JA + JA.T


def maximize_g(S: np.ndarray, xtol: float = GAMMA_XTOL) -> tuple[float, float]:
    """Golden-section maximiser of ``lambda_min(gamma J - S)`` for n >= 2.

    g(gamma) <= ||S||_2 - |gamma| and g(0) >= -||S||_2, so the maximiser lies
    in ``|gamma| <= 2 ||S||_2 <= 2 ||S||_F``.
    """
    S = np.ascontiguousarray(S, dtype=np.float64)
    jdiag = reflection_diagonal(S.shape[0])
    norm = float(np.linalg.norm(S))
    half_width = 2 * norm + 1
    gamma, g = golden_section_max(
        shifted_lambda_min, -half_width, half_width, xtol * max(1.0, norm), (S, jdiag)
    )
    if math.isnan(g):
        raise NoConvergence("eigenvalue evaluation failed inside the gamma search")
    return float(gamma), float(g)


def g_value(A, gamma: float) -> float:
    """``lambda_min(gamma J - (JA + A^T J))`` for a single gamma."""
    A = as_matrix(A)
    jdiag = reflection_diagonal(A.shape[0])
    _, S = _jsym(A, jdiag)
    return float(shifted_lambda_min(float(gamma), S, jdiag))


def _decompose_at(A: np.ndarray, gamma_star: float) -> Lemma1Triple:
    jdiag = reflection_diagonal(A.shape[0])
    JA, S = _jsym(A, jdiag)
    P = (gamma_star * np.diag(jdiag) - S) / 2
    # Q = gamma_param J - JA - P reduces to ((JA)^T - JA)/2; this form is exactly skew.
    Q = (JA.T - JA) / 2
    return Lemma1Triple(gamma_star / 2, P, Q)


def z_oracle_lorentz(A, tol: Tolerances = DEFAULT_TOL, xtol: float = GAMMA_XTOL) -> ZCertificate:
    A = as_matrix(A)
    n = A.shape[0]
    if n == 1:
        # g(gamma) = gamma - 2a is unbounded; every 1x1 matrix is a member
        gamma_star = 2 * float(A[0, 0])
        return ZCertificate(True, gamma_star, 0.0, _decompose_at(A, gamma_star))
    _, S = _jsym(A, reflection_diagonal(n))
    gamma_star, g = maximize_g(S, xtol)
    member = g >= -tol.eps_psd * scale(S)
    decomposition = _decompose_at(A, gamma_star) if member else None
    return ZCertificate(bool(member), gamma_star, g, decomposition)


def z_assemble(gamma: float, P, Q, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """``gamma I - J(P + Q)`` after checking P is PSD and Q is skew."""
    P = as_matrix(P, "P")
    Q = as_matrix(Q, "Q")
    if P.shape != Q.shape:
        raise DimensionMismatch(f"P is {P.shape}, Q is {Q.shape}")
    verdict = psd_check(P, tol)
    if not verdict:
        raise NotPSD(f"P has lambda_min {verdict.lambda_min:.3e}")
    if np.max(np.abs(Q + Q.T)) > tol.eps_sym * scale(Q):
        raise NotSkew("Q is not skew-symmetric")
    n = P.shape[0]
    return gamma * np.eye(n) - reflection_diagonal(n)[:, None] * (P + Q)


def z_decompose(A, tol: Tolerances = DEFAULT_TOL) -> Lemma1Triple:
    cert = z_oracle_lorentz(A, tol)
    if not cert.member:
        raise NotMember(f"matrix is not in Z(L) (max g = {cert.lambda_min_at_star:.3e})")
    return cert.decomposition


def sample_z_lorentz(n: int, rng: np.random.Generator) -> np.ndarray:
    gamma = rng.uniform(-10.0, 10.0)
    G = rng.standard_normal((n, n))
    P = G @ G.T
    P = (P + P.T) / 2
    H = rng.standard_normal((n, n))
    Q = (H - H.T) / 2
    return z_assemble(gamma, P, Q)


def z_oracle_orthant(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Z-matrix test: every off-diagonal entry nonpositive (to tolerance)."""
    A = as_matrix(A)
    off = A[~np.eye(A.shape[0], dtype=bool)]
    return bool(np.all(off <= tol.eps_zero * scale(A)))


def sample_z_orthant(n: int, rng: np.random.Generator) -> np.ndarray:
    A = -np.abs(rng.standard_normal((n, n)))
    # a sprinkling of exact zeros keeps the boundary in play
    A[rng.random((n, n)) < 0.2] = 0.0
    np.fill_diagonal(A, rng.standard_normal(n) * 3)
    return A


def sample_orthant_pair(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """x, y >= 0 with disjoint supports: a complementary pair for R^n_+."""
    support = rng.random(n) < 0.5
    x = np.where(support, np.abs(rng.standard_normal(n)), 0.0)
    y = np.where(~support, np.abs(rng.standard_normal(n)), 0.0)
    return x, y


def normalized_violation(A: np.ndarray, x, y) -> float:
    x = as_vector(x)
    y = as_vector(y)
    denom = max(1.0, float(np.linalg.norm(A) * np.linalg.norm(x) * np.linalg.norm(y)))
    return float(y @ (A @ x)) / denom


def z_definitional_test(A, cone: str, trials: int, rng: np.random.Generator) -> float:
    """Largest ``<Ax, y> / max(1, |A||x||y|)`` over sampled complementary pairs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    A = as_matrix(A)
    n = A.shape[0]
    if cone == "lorentz":
        def draw():
            pair = sample_complementary_pair(n, rng)
            return pair.x, pair.y
    elif cone == "orthant":
        def draw():
            return sample_orthant_pair(n, rng)
    else:
        raise ValueError(f"unknown cone {cone!r}")
    worst = -math.inf
    for _ in range(trials):
        x, y = draw()
        worst = max(worst, normalized_violation(A, x, y))
    return worst
