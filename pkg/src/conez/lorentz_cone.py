"""Lorentz-cone primitives: membership, projection, J, and sampling of C(L).

L is self-dual, so a complementary pair (x, y) has both x and y in L.
For n = 1 the cone is the half-line R_+ (the tail norm is 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DegenerateDraw, DimensionMismatch
from .linalg_core import DEFAULT_TOL, Tolerances, as_vector


class ConeClass(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


class PairClass(enum.Enum):
    BOTH_ZERO = "BothZero"
    LEFT_ZERO = "LeftZero"
    RIGHT_ZERO = "RightZero"
    BOUNDARY_PAIR = "BoundaryPair"


DEFAULT_MIX: Mapping[PairClass, float] = {
    PairClass.BOUNDARY_PAIR: 0.7,
    PairClass.LEFT_ZERO: 0.1,
    PairClass.RIGHT_ZERO: 0.1,
    PairClass.BOTH_ZERO: 0.1,
}

MAX_DRAWS = 100


@dataclass(frozen=True)
class ConePoint:
    x: np.ndarray
    classification: ConeClass


@dataclass(frozen=True)
class CompPair:
    x: np.ndarray
    y: np.ndarray
    cls: PairClass


@dataclass(frozen=True)
class CompCheck:
    in_c: bool
    reason: str | None = None

    def __bool__(self):
        return self.in_c


def reflection_matrix(n: int) -> np.ndarray:
    """J = diag(1, -1, ..., -1)."""
    if n < 1:
        raise DimensionMismatch(f"n must be >= 1, got {n}")
    return np.diag(reflection_diagonal(n))


def reflection_diagonal(n: int) -> np.ndarray:
    d = -np.ones(n)
    d[0] = 1.0
    return d


def _tail_norm(x: np.ndarray) -> float:
    return float(np.linalg.norm(x[1:])) if x.size > 1 else 0.0


def lorentz_member(x, tol: Tolerances = DEFAULT_TOL) -> ConeClass:
    x = as_vector(x)
    d = x[0] - _tail_norm(x)
    eps = tol.eps_zero * max(1.0, float(np.linalg.norm(x)))
    if d > eps:
        return ConeClass.INTERIOR
    if d < -eps:
        return ConeClass.OUTSIDE
    return ConeClass.BOUNDARY


def cone_point(x, tol: Tolerances = DEFAULT_TOL) -> ConePoint:
    x = as_vector(x)
    return ConePoint(x, lorentz_member(x, tol))


def lorentz_project(z) -> np.ndarray:
    """Euclidean projection onto L."""
    z = as_vector(z)
    r = _tail_norm(z)
    if z[0] >= r:
        return z
    if z[0] <= -r:
        return np.zeros_like(z)
    out = np.empty_like(z)
    half = (z[0] + r) / 2
    out[0] = half
    out[1:] = half * z[1:] / r
    return out


def _boundary_pair(n: int, rng: np.random.Generator) -> CompPair:
    for _ in range(MAX_DRAWS):
        u = rng.standard_normal(n - 1)
        r = float(np.linalg.norm(u))
        if r > 0:
            break
    else:
        raise DegenerateDraw(f"tail draw was zero {MAX_DRAWS} times")
    s = 10.0 ** rng.uniform(-2.0, 2.0)
    x = np.concatenate(([r], u))
    y = s * np.concatenate(([r], -u))
    return CompPair(x, y, PairClass.BOUNDARY_PAIR)


def sample_complementary_pair(
    n: int,
    rng: np.random.Generator,
    mix: Mapping[PairClass, float] | None = None,
) -> CompPair:
    """Draw (x, y) in C(L) from a mixture of degeneracy classes.

    Boundary pairs are ``x = (|u|, u)`` and ``y = s (|u|, -u)`` with ``u``
    Gaussian and ``s`` log-uniform on [1e-2, 1e2]. For n = 1 a boundary draw
    falls back to one of the one-sided zero classes.
    """
    if n < 1:
        raise DimensionMismatch(f"n must be >= 1, got {n}")
    mix = DEFAULT_MIX if mix is None else mix
    classes = list(mix)
    weights = np.array([mix[c] for c in classes], dtype=float)
    cls = classes[rng.choice(len(classes), p=weights / weights.sum())]
    if cls is PairClass.BOUNDARY_PAIR:
        if n >= 2:
            return _boundary_pair(n, rng)
        cls = PairClass.LEFT_ZERO if rng.random() < 0.5 else PairClass.RIGHT_ZERO

    zero = np.zeros(n)
    if cls is PairClass.BOTH_ZERO:
        return CompPair(zero, zero.copy(), cls)
    v = lorentz_project(rng.standard_normal(n))
    if cls is PairClass.LEFT_ZERO:
        return CompPair(zero, v, cls)
    return CompPair(v, zero, cls)


def complementarity_check(x, y, tol: Tolerances = DEFAULT_TOL) -> CompCheck:
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionMismatch(f"x has {x.size} entries, y has {y.size}")
    if lorentz_member(x, tol) is ConeClass.OUTSIDE:
        return CompCheck(False, "x outside L")
    if lorentz_member(y, tol) is ConeClass.OUTSIDE:
        return CompCheck(False, "y outside L")
    ip = float(x @ y)
    bound = tol.eps_zero * max(1.0, float(np.linalg.norm(x) * np.linalg.norm(y)))
    if abs(ip) > bound:
        return CompCheck(False, f"inner product {ip!r} is not zero")
    return CompCheck(True)


def sample_interior_pair(n: int, rng: np.random.Generator, min_cosine: float = 0.1):
    """x, y in L with ``<x,y> >= min_cosine |x||y|`` (non-complementary by construction)."""
    for _ in range(MAX_DRAWS):
        x = lorentz_project(rng.standard_normal(n))
        y = lorentz_project(rng.standard_normal(n))
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        if nx > 0 and ny > 0 and x @ y >= min_cosine * nx * ny:
            return x, y
    # fall back to the axis, which pairs with itself at cosine 1
    e = np.zeros(n)
    e[0] = 1.0
    return e, e * math.exp(rng.uniform(-2, 2))
