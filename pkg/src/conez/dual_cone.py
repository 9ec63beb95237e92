"""The dual cone Z(L)* and the complementarity/dyad bridge.

B belongs to Z(L)* exactly when ``tr B = 0`` and ``JB`` is negative
semidefinite. Negative semidefinite includes symmetry here: an asymmetric JB
is rejected even if its quadratic form is nonpositive.

The dyad ``-y x^T`` of a complementary pair lies in Z(L)*. The converse is
only meaningful for x, y taken in L itself: the pair ``(-x, -y)`` produces the
same dyad, so :func:`dyad_factor` fixes the sign with ``x_1 >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotMember, NotRankOne
from .linalg_core import DEFAULT_TOL, Tolerances, as_matrix, as_vector, lambda_max, scale, sym_defect, sym_eigen
from .lorentz_cone import reflection_diagonal, sample_complementary_pair


@dataclass(frozen=True)
class DualCertificate:
    member: bool
    trace_residual: float
    sym_defect: float
    lambda_max_JB: float


def dual_oracle_lorentz(B, tol: Tolerances = DEFAULT_TOL) -> DualCertificate:
    B = as_matrix(B)
    M = reflection_diagonal(B.shape[0])[:, None] * B
    tr = float(np.trace(B))
    defect = sym_defect(M)
    lam = lambda_max(M)
    s = scale(B)
    member = abs(tr) <= tol.eps_zero * s and defect <= tol.eps_sym * s and lam <= tol.eps_psd * s
    return DualCertificate(bool(member), tr, defect, lam)


def dyad_from_pair(x, y) -> np.ndarray:
    """``-y x^T``."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionMismatch(f"x has {x.size} entries, y has {y.size}")
    return -np.outer(y, x)


def _balanced_psd(n: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((n, n))
    P0 = G @ G.T
    P0 = (P0 + P0.T) / 2
    c = P0[0, 0] - np.trace(P0[1:, 1:])
    if c > 0:
        P0[1, 1] += c
    elif c < 0:
        P0[0, 0] -= c
    return P0


def sample_dual_lorentz(
    n: int, rng: np.random.Generator, kind: str = "psd_balanced", k: int | None = None
) -> np.ndarray:
    """Draw a member of Z(L)*.

    ``psd_balanced`` returns ``-J P0`` for a PSD ``P0`` whose J-trace has been
    zeroed by adding mass to ``e1 e1^T`` or ``e2 e2^T``; these are typically
    full rank. ``dyad_sum`` returns ``-sum y_i x_i^T`` over ``k`` (default
    uniform on 1..3) sampled complementary pairs.
    """
    if kind == "psd_balanced":
        if n < 2:
            return np.zeros((n, n))
        P0 = _balanced_psd(n, rng)
        return -reflection_diagonal(n)[:, None] * P0
    if kind == "dyad_sum":
        if k is None:
            k = int(rng.integers(1, 4))
        B = np.zeros((n, n))
        for _ in range(k):
            pair = sample_complementary_pair(n, rng)
            B += dyad_from_pair(pair.x, pair.y)
        return B
    raise ValueError(f"unknown kind {kind!r}")


def dyad_factor(B, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Recover a complementary pair (x, y) in L x L with ``-y x^T = B``.

    Requires B in Z(L)* with ``-JB`` of rank at most one.
    """
    B = as_matrix(B)
    cert = dual_oracle_lorentz(B, tol)
    if not cert.member:
        raise NotMember("matrix is not in Z(L)*")
    n = B.shape[0]
    jdiag = reflection_diagonal(n)
    P0 = -jdiag[:, None] * B
    P0 = (P0 + P0.T) / 2
    spec = sym_eigen(P0, tol)
    eps = tol.eps_psd * scale(B)
    if n > 1 and spec.eigenvalues[-2] > eps:
        raise NotRankOne(f"-JB has second eigenvalue {spec.eigenvalues[-2]:.3e}")
    lam = float(spec.eigenvalues[-1])
    if lam <= eps:
        return np.zeros(n), np.zeros(n)
    v = spec.eigenvectors[:, -1].copy()
    if v[0] < 0:
        v = -v
    return v, lam * jdiag * v


def dual_oracle_orthant(B, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Nonpositive entries and zero diagonal, both to tolerance."""
    B = as_matrix(B)
    eps = tol.eps_zero * scale(B)
    return bool(np.all(B <= eps) and np.all(np.abs(np.diag(B)) <= eps))


def sample_dual_orthant(n: int, rng: np.random.Generator) -> np.ndarray:
    B = -np.abs(rng.standard_normal((n, n)))
    B[rng.random((n, n)) < 0.2] = 0.0
    np.fill_diagonal(B, 0.0)
    return B
