"""Dense small-matrix numerics.

Everything here works on plain ``numpy.ndarray`` values of dtype float64.
The symmetric eigensolver is a cyclic Jacobi method compiled with numba; the
same kernel backs every definiteness verdict in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DimensionMismatch, NoConvergence, NonFinite, NotSymmetric

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-14


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances; each is scaled by ``max(1, ||input||_F)`` at use."""

    eps_psd: float = 1e-9
    eps_sym: float = 1e-9
    eps_zero: float = 1e-9

    def __post_init__(self):
        for name in ("eps_psd", "eps_sym", "eps_zero"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @classmethod
    def uniform(cls, eps: float) -> "Tolerances":
        return cls(eps_psd=eps, eps_sym=eps, eps_zero=eps)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # column i pairs with eigenvalues[i]
    sweeps: int = 0


@dataclass(frozen=True)
class PsdVerdict:
    psd: bool
    lambda_min: float

    def __bool__(self):
        return self.psd


def scale(M) -> float:
    """``max(1, ||M||_F)``, the factor every relative tolerance is multiplied by."""
    return max(1.0, float(np.linalg.norm(M)))


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate ``M`` as a finite square float64 matrix and return a fresh copy."""
    arr = np.array(M, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def as_vector(x, name: str = "vector") -> np.ndarray:
    arr = np.array(x, dtype=np.float64, copy=True).reshape(-1)
    if arr.size < 1:
        raise DimensionMismatch(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"{name} has non-finite entries")
    return arr


def sym_defect(M: np.ndarray) -> float:
    return float(np.max(np.abs(M - M.T))) if M.size else 0.0


@njit(cache=True)
def _off_mass(a):
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                total += a[i, j] * a[i, j]
    return math.sqrt(total)


@njit(cache=True)
def jacobi_kernel(a, v, want_vectors, off_tol, max_sweeps):
    """In-place cyclic Jacobi on symmetric ``a``; rotations accumulate into ``v``.

    Returns the number of sweeps performed, or -1 if ``max_sweeps`` ran out.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        if _off_mass(a) <= off_tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        nkp = c * akp - s * akq
                        nkq = s * akp + c * akq
                        a[k, p] = nkp
                        a[p, k] = nkp
                        a[k, q] = nkq
                        a[q, k] = nkq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
    return -1


@njit(cache=True)
def lambda_extreme(s, largest):
    """Smallest (or largest) eigenvalue of the symmetric matrix ``s``.

    Works on a copy. Returns NaN when Jacobi fails to converge.
    """
    a = s.copy()
    norm = math.sqrt(np.sum(a * a))
    dummy = np.empty((1, 1))
    status = jacobi_kernel(a, dummy, False, OFF_DIAGONAL_RTOL * max(1.0, norm), MAX_SWEEPS)
    if status < 0:
        return np.nan
    d = np.diag(a)
    return d.max() if largest else d.min()


def _check_symmetric(S: np.ndarray, tol: Tolerances) -> None:
    if sym_defect(S) > tol.eps_sym * scale(S):
        raise NotSymmetric(f"matrix is not symmetric (defect {sym_defect(S):.3e})")


def sym_eigen(S, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    The solver works on ``(S + S^T)/2``. Eigenvalues come back ascending with
    orthonormal eigenvectors as columns.
    """
    S = as_matrix(S)
    _check_symmetric(S, tol)
    n = S.shape[0]
    a = 0.5 * (S + S.T)
    v = np.eye(n)
    sweeps = jacobi_kernel(a, v, True, OFF_DIAGONAL_RTOL * scale(S), MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order].copy(), sweeps)


def _extreme_eigenvalue(S: np.ndarray, largest: bool) -> float:
    lam = float(lambda_extreme(np.ascontiguousarray(0.5 * (S + S.T)), largest))
    if math.isnan(lam):
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return lam


def lambda_min(S) -> float:
    """Smallest eigenvalue of the symmetric part of ``S`` (no symmetry check)."""
    return _extreme_eigenvalue(np.asarray(S, dtype=np.float64), largest=False)


def lambda_max(S) -> float:
    """Largest eigenvalue of the symmetric part of ``S`` (no symmetry check)."""
    return _extreme_eigenvalue(np.asarray(S, dtype=np.float64), largest=True)


def psd_check(S, tol: Tolerances = DEFAULT_TOL) -> PsdVerdict:
    """PSD iff ``lambda_min(S) >= -eps_psd * max(1, ||S||_F)``.

    Inputs whose smallest eigenvalue sits inside the dead band are reported
    PSD; the attained eigenvalue is returned so callers can see that.
    For negative semidefiniteness call ``psd_check(-S)``.
    """
    S = as_matrix(S)
    _check_symmetric(S, tol)
    lam = lambda_min(S)
    return PsdVerdict(lam >= -tol.eps_psd * scale(S), lam)


def sym_skew_split(M) -> tuple[np.ndarray, np.ndarray]:
    M = as_matrix(M)
    return (M + M.T) / 2, (M - M.T) / 2


def trace_inner(A, B) -> float:
    """Trace inner product ``tr(A^T B) = sum_ij A_ij B_ij``."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    return float(np.dot(A.ravel(), B.ravel()))
