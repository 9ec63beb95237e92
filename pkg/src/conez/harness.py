"""Property suites cross-checking oracles, generators and decompositions.

Each suite is a deterministic function of ``(n, trials, seed)``: trial ``i``
draws all of its randomness from ``default_rng([seed, i])``, so results do not
depend on evaluation order. Suites return :class:`Report` values, which
serialise to one JSON line each.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .dual_cone import (
    dual_oracle_lorentz,
    dual_oracle_orthant,
    dyad_factor,
    dyad_from_pair,
    sample_dual_lorentz,
    sample_dual_orthant,
)
from .errors import WrongDimension
from .linalg_core import DEFAULT_TOL, Tolerances, as_matrix, psd_check, scale, trace_inner
from .lorentz_cone import complementarity_check, sample_complementary_pair, sample_interior_pair
from .z_operators import (
    normalized_violation,
    sample_orthant_pair,
    sample_z_lorentz,
    sample_z_orthant,
    z_decompose,
    z_oracle_lorentz,
    z_oracle_orthant,
)

log = logging.getLogger(__name__)

PAIRING_RTOL = 1e-9
VIOLATION_TOL = 1e-9
RECONSTRUCTION_RTOL = 1e-10
DEAD_BAND = 1e-6
MAX_FAILURE_SAMPLES = 5

SUITES = ("duality", "definitional", "orlitzky", "n2", "orthant")

# extreme-ray complementary pairs of the n = 2 Lorentz cone
N2_RAY_PAIRS = (
    (np.array([1.0, 1.0]), np.array([1.0, -1.0])),
    (np.array([1.0, -1.0]), np.array([1.0, 1.0])),
)


@dataclass
class Report:
    suite: str
    n: int
    trials: int
    failures: int = 0
    worst_violation: float = 0.0
    seed: int = 0
    status: str = "Pass"
    failure_samples: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), allow_nan=False)


class _Tally:
    """Collects failures for one suite run."""

    def __init__(self, suite, n, trials, seed, worst=-math.inf):
        self.report = Report(suite, n, trials, seed=seed)
        self.worst = worst

    def fail(self, trial, check, value, **inputs):
        self.report.failures += 1
        if len(self.report.failure_samples) < MAX_FAILURE_SAMPLES:
            sample = {"trial": trial, "check": check, "value": float(value)}
            sample.update({k: np.asarray(v).tolist() for k, v in inputs.items()})
            self.report.failure_samples.append(sample)

    def done(self) -> Report:
        r = self.report
        r.worst_violation = float(self.worst) if math.isfinite(self.worst) else 0.0
        r.status = "Pass" if r.failures == 0 else "Fail"
        return r


def _check_trials(trials: int) -> None:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def n2_z_oracle_closedform(A) -> bool:
    """Exact n = 2 membership in Z(L): ``a - d <= -|b - c|``."""
    A = as_matrix(A)
    if A.shape != (2, 2):
        raise WrongDimension(f"expected 2x2, got {A.shape}")
    (a, b), (c, d) = A
    return bool(a - d <= -abs(b - c))


def n2_dual_oracle_closedform(B, tol: Tolerances = DEFAULT_TOL) -> bool:
    """n = 2 membership in Z(L)*: ``p + s = 0``, ``q + r = 0``, ``p <= -|q|``."""
    B = as_matrix(B)
    if B.shape != (2, 2):
        raise WrongDimension(f"expected 2x2, got {B.shape}")
    (p, q), (r, s) = B
    eps = tol.eps_zero * scale(B)
    return bool(abs(p + s) <= eps and abs(q + r) <= eps and p <= -abs(q))


def suite_duality(n: int, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> Report:
    """Pair Z(L) samples with Z(L)* samples; every pairing must be nonnegative.

    Each accepted B is also checked against the pieces of the sum-cone dual
    identity: ``-B^T J`` is symmetric, pairs nonnegatively with a random PSD
    matrix and is orthogonal to a random skew matrix. ``worst_violation`` is
    the smallest normalised pairing ``<A,B> / (|A||B|)`` seen.
    """
    _check_trials(trials)
    t = _Tally("duality", n, trials, seed, worst=math.inf)
    jdiag = np.where(np.arange(n) == 0, 1.0, -1.0)
    for i in range(trials):
        rng = trial_rng(seed, i)
        A = sample_z_lorentz(n, rng)
        B = sample_dual_lorentz(n, rng, "psd_balanced" if i % 2 == 0 else "dyad_sum")
        na, nb = np.linalg.norm(A), np.linalg.norm(B)
        ip = trace_inner(A, B)
        if na > 0 and nb > 0:
            t.worst = min(t.worst, ip / (na * nb))
        if ip < -PAIRING_RTOL * na * nb:
            t.fail(i, "pairing", ip, A=A, B=B)
        if not dual_oracle_lorentz(B, tol).member:
            t.fail(i, "dual generator", 0.0, B=B)
            continue
        W = -(B.T * jdiag[None, :])  # -B^T J
        if np.max(np.abs(W - W.T)) > tol.eps_sym * scale(W):
            t.fail(i, "-B^T J symmetric", np.max(np.abs(W - W.T)), B=B)
        G = rng.standard_normal((n, n))
        P = G @ G.T
        H = rng.standard_normal((n, n))
        Q = (H - H.T) / 2
        if trace_inner(P, W) < -PAIRING_RTOL * np.linalg.norm(P) * max(1.0, nb):
            t.fail(i, "psd pairing", trace_inner(P, W), B=B, P=P)
        if abs(trace_inner(Q, W)) > PAIRING_RTOL * np.linalg.norm(Q) * max(1.0, nb):
            t.fail(i, "skew orthogonality", trace_inner(Q, W), B=B, Q=Q)
    if not math.isfinite(t.worst):
        t.worst = 0.0
    return t.done()


def suite_definitional(n: int, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> Report:
    """Check ``<Ax, y> <= 0`` on complementary pairs for certified members.

    Every trial checks one Lorentz and one orthant member against one sampled
    pair. At n = 2 a random matrix the oracle rejects (outside the dead band)
    must be refuted by one of the two extreme-ray pairs; at larger n the
    refutation search is only logged.
    """
    _check_trials(trials)
    t = _Tally("definitional", n, trials, seed)
    refuted = attempted = 0
    for i in range(trials):
        rng = trial_rng(seed, i)
        A = sample_z_lorentz(n, rng)
        if not z_oracle_lorentz(A, tol).member:
            t.fail(i, "generator accepted", 0.0, A=A)
        pair = sample_complementary_pair(n, rng)
        v = normalized_violation(A, pair.x, pair.y)
        t.worst = max(t.worst, v)
        if v > VIOLATION_TOL:
            t.fail(i, "lorentz definition", v, A=A, x=pair.x, y=pair.y)

        Z = sample_z_orthant(n, rng)
        x, y = sample_orthant_pair(n, rng)
        v = normalized_violation(Z, x, y)
        t.worst = max(t.worst, v)
        if v > VIOLATION_TOL:
            t.fail(i, "orthant definition", v, A=Z, x=x, y=y)

        R = rng.standard_normal((n, n))
        if z_oracle_lorentz(R, tol).member:
            continue
        if n == 2:
            (a, b), (c, d) = R
            if abs((a - d) + abs(b - c)) < DEAD_BAND:
                continue
            attempted += 1
            best = max(normalized_violation(R, x, y) for x, y in N2_RAY_PAIRS)
            if best > 0:
                refuted += 1
            else:
                t.fail(i, "n2 refutation", best, A=R)
        elif n > 2:
            attempted += 1
            pair = sample_complementary_pair(n, rng)
            if normalized_violation(R, pair.x, pair.y) > 0:
                refuted += 1
    log.info("definitional n=%d: refuted %d of %d rejected matrices", n, refuted, attempted)
    return t.done()


def suite_orlitzky(n: int, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> Report:
    """Complementary pairs versus dyads ``-y x^T`` in Z(L)*.

    Forward: sampled pairs give accepted dyads. Reverse: rank-one members
    factor back into a valid pair reproducing B. Negative: non-complementary
    x, y in L give rejected dyads. ``worst_violation`` is the largest relative
    reconstruction error of the reverse step.
    """
    _check_trials(trials)
    t = _Tally("orlitzky", n, trials, seed)
    for i in range(trials):
        rng = trial_rng(seed, i)
        pair = sample_complementary_pair(n, rng)
        if not complementarity_check(pair.x, pair.y, tol):
            t.fail(i, "sampled pair", 0.0, x=pair.x, y=pair.y)
        D = dyad_from_pair(pair.x, pair.y)
        if not dual_oracle_lorentz(D, tol).member:
            t.fail(i, "forward", 0.0, x=pair.x, y=pair.y)

        B = sample_dual_lorentz(n, rng, "dyad_sum", k=1)
        x, y = dyad_factor(B, tol)
        err = float(np.linalg.norm(B - dyad_from_pair(x, y))) / scale(B)
        t.worst = max(t.worst, err)
        if err > RECONSTRUCTION_RTOL:
            t.fail(i, "reverse reconstruction", err, B=B)
        check = complementarity_check(x, y, tol)
        if not check:
            t.fail(i, f"reverse pair: {check.reason}", 0.0, B=B)

        xn, yn = sample_interior_pair(n, rng)
        if dual_oracle_lorentz(dyad_from_pair(xn, yn), tol).member:
            t.fail(i, "negative control", float(xn @ yn), x=xn, y=yn)
    return t.done()


def suite_n2_closedform(trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> tuple[Report, Report]:
    """Spectral oracles against the exact n = 2 closed forms.

    Returns one report for Z(L) and one for Z(L)*. Dual candidates alternate
    between raw Gaussian matrices and Gaussian points of the subspace
    ``{tr B = 0, JB symmetric}`` so the inequality ``p <= -|q|`` is exercised.
    Matrices within the dead band of the boundary are skipped;
    ``worst_violation`` is the largest boundary margin among disagreements.
    """
    _check_trials(trials)
    tz = _Tally("n2_z", 2, trials, seed, worst=0.0)
    td = _Tally("n2_dual", 2, trials, seed, worst=0.0)
    for i in range(trials):
        rng = trial_rng(seed, i)
        A = rng.standard_normal((2, 2))
        (a, b), (c, d) = A
        margin = (a - d) + abs(b - c)
        if abs(margin) >= DEAD_BAND and z_oracle_lorentz(A, tol).member != n2_z_oracle_closedform(A):
            tz.worst = max(tz.worst, abs(margin))
            tz.fail(i, "z disagreement", margin, A=A)

        B = rng.standard_normal((2, 2))
        if i % 2:
            p, q = B[0]
            B = np.array([[p, q], [-q, -p]])
        (p, q), _ = B
        margin = p + abs(q)
        if abs(margin) >= DEAD_BAND and dual_oracle_lorentz(B, tol).member != n2_dual_oracle_closedform(B, tol):
            td.worst = max(td.worst, abs(margin))
            td.fail(i, "dual disagreement", margin, B=B)
    return tz.done(), td.done()


def suite_orthant(n: int, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> Report:
    """Z-matrices and their dual (nonpositive, zero diagonal) against each other.

    Checks pairing, the definition on disjoint-support pairs, the orthant
    dyad bridge, and that a random non-Z-matrix is refuted by the coordinate
    pair picking out a positive off-diagonal entry.
    """
    _check_trials(trials)
    t = _Tally("orthant", n, trials, seed)
    for i in range(trials):
        rng = trial_rng(seed, i)
        A = sample_z_orthant(n, rng)
        B = sample_dual_orthant(n, rng)
        if not z_oracle_orthant(A, tol):
            t.fail(i, "z generator", 0.0, A=A)
        if not dual_oracle_orthant(B, tol):
            t.fail(i, "dual generator", 0.0, B=B)
        na, nb = np.linalg.norm(A), np.linalg.norm(B)
        ip = trace_inner(A, B)
        if na > 0 and nb > 0:
            t.worst = max(t.worst, -ip / (na * nb))
        if ip < -PAIRING_RTOL * max(1.0, na * nb):
            t.fail(i, "pairing", ip, A=A, B=B)

        x, y = sample_orthant_pair(n, rng)
        v = normalized_violation(A, x, y)
        t.worst = max(t.worst, v)
        if v > VIOLATION_TOL:
            t.fail(i, "definition", v, A=A, x=x, y=y)
        if not dual_oracle_orthant(dyad_from_pair(x, y), tol):
            t.fail(i, "dyad", 0.0, x=x, y=y)

        R = rng.standard_normal((n, n))
        if n > 1 and not z_oracle_orthant(R, tol):
            off = np.where(np.eye(n, dtype=bool), -np.inf, R)
            row, col = np.unravel_index(np.argmax(off), off.shape)
            e_col, e_row = np.eye(n)[col], np.eye(n)[row]
            if normalized_violation(R, e_col, e_row) <= 0:
                t.fail(i, "refutation", 0.0, A=R)
    return t.done()


def run_suite(name: str, n: int, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> list[Report]:
    if name == "duality":
        return [suite_duality(n, trials, seed, tol)]
    if name == "definitional":
        return [suite_definitional(n, trials, seed, tol)]
    if name == "orlitzky":
        return [suite_orlitzky(n, trials, seed, tol)]
    if name == "n2":
        return list(suite_n2_closedform(trials, seed, tol))
    if name == "orthant":
        return [suite_orthant(n, trials, seed, tol)]
    if name == "all":
        reports = []
        for suite in SUITES:
            reports.extend(run_suite(suite, n, trials, seed, tol))
        return reports
    raise ValueError(f"unknown suite {name!r}")


def lemma1_residual(A, triple) -> float:
    """Relative Frobenius residual of ``A - (gamma I - J(P + Q))``."""
    A = as_matrix(A)
    n = A.shape[0]
    jdiag = np.where(np.arange(n) == 0, 1.0, -1.0)
    rebuilt = triple.gamma_param * np.eye(n) - jdiag[:, None] * (triple.P + triple.Q)
    return float(np.linalg.norm(A - rebuilt)) / scale(A)


def certify_decomposition(A, tol: Tolerances = DEFAULT_TOL) -> tuple[float, bool, float]:
    """(residual, P passes psd_check, max |Q + Q^T|) for an accepted A."""
    triple = z_decompose(A, tol)
    return (
        lemma1_residual(A, triple),
        bool(psd_check(triple.P, tol)),
        float(np.max(np.abs(triple.Q + triple.Q.T))),
    )
