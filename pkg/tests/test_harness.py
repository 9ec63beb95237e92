import json
import itertools

import numpy as np
import pytest

from conez.errors import NotMember, WrongDimension
from conez.harness import (
    N2_RAY_PAIRS,
    Report,
    certify_decomposition,
    n2_dual_oracle_closedform,
    n2_z_oracle_closedform,
    run_suite,
    suite_definitional,
    suite_duality,
    suite_n2_closedform,
    suite_orlitzky,
    suite_orthant,
)
from conez.dual_cone import dual_oracle_lorentz, dyad_factor, dyad_from_pair
from conez.lorentz_cone import complementarity_check
from conez.z_operators import z_oracle_lorentz

REPORT_KEYS = ["suite", "n", "trials", "failures", "worst_violation", "seed", "status", "failure_samples"]


def brute_force_n2(A):
    """Z-property at n = 2 checked on the extreme-ray pairs of L."""
    return all(y @ (np.asarray(A) @ x) <= 0 for x, y in N2_RAY_PAIRS)


@pytest.mark.parametrize(
    "A, expected",
    [([[-1.0, 0.0], [0.0, 1.0]], True), ([[0.0, 1.0], [0.0, 0.0]], False), (np.eye(2), True)],
)
def test_n2_z_closedform_examples(A, expected):
    assert n2_z_oracle_closedform(A) is expected
    assert brute_force_n2(A) is expected


def test_n2_z_closedform_matches_brute_force(rng):
    for _ in range(2000):
        A = rng.standard_normal((2, 2))
        assert n2_z_oracle_closedform(A) == brute_force_n2(A)


def test_n2_z_closedform_on_integer_grid():
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        A = np.array([[a, b], [c, d]], dtype=float)
        assert n2_z_oracle_closedform(A) == brute_force_n2(A)


@pytest.mark.parametrize(
    "B, expected",
    [([[-1.0, -1.0], [1.0, 1.0]], True), ([[-1.0, 0.0], [0.0, 1.0]], True), ([[1.0, 0.0], [0.0, -1.0]], False)],
)
def test_n2_dual_closedform_examples(B, expected):
    assert n2_dual_oracle_closedform(B) is expected


def test_closedforms_require_2x2():
    with pytest.raises(WrongDimension):
        n2_z_oracle_closedform(np.eye(3))
    with pytest.raises(WrongDimension):
        n2_dual_oracle_closedform(np.eye(3))


def test_n2_refutation_of_nilpotent():
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    values = [y @ (A @ x) for x, y in N2_RAY_PAIRS]
    assert values[0] == 1.0


def test_orlitzky_examples():
    x, y = np.array([5.0, 3.0, 4.0]), np.array([5.0, -3.0, -4.0])
    assert complementarity_check(x, y)
    assert dual_oracle_lorentz(dyad_from_pair(x, y)).member
    B = np.array([[-1.0, -1.0], [1.0, 1.0]])
    xr, yr = dyad_factor(B)
    assert complementarity_check(xr, yr)
    assert not dual_oracle_lorentz(dyad_from_pair([1.0, 0.0], [1.0, 0.0])).member


@pytest.mark.parametrize(
    "suite",
    [
        lambda s: suite_duality(3, 200, s),
        lambda s: suite_definitional(3, 200, s),
        lambda s: suite_orlitzky(3, 200, s),
        lambda s: suite_orthant(3, 200, s),
        lambda s: suite_n2_closedform(200, s)[0],
        lambda s: suite_n2_closedform(200, s)[1],
    ],
)
def test_suites_pass_and_are_deterministic(suite):
    a, b = suite(7), suite(7)
    assert a.status == "Pass" and a.failures == 0
    assert a.to_json() == b.to_json()


def test_report_json_shape():
    line = suite_duality(2, 50, 1).to_json()
    assert "\n" not in line
    assert list(json.loads(line)) == REPORT_KEYS


def test_report_status_tracks_failures():
    r = Report("x", 2, 1, failures=1, status="Fail")
    assert json.loads(r.to_json())["status"] == "Fail"


def test_zero_trials_rejected():
    with pytest.raises(ValueError):
        suite_duality(3, 0, 1)
    with pytest.raises(ValueError):
        run_suite("orthant", 3, 0, 1)


def test_all_emits_six_reports():
    reports = run_suite("all", 2, 30, 5)
    assert [r.suite for r in reports] == ["duality", "definitional", "orlitzky", "n2_z", "n2_dual", "orthant"]


def test_failing_oracle_is_reported(monkeypatch):
    import conez.harness as h

    monkeypatch.setattr(h, "z_oracle_lorentz", lambda A, tol=None: type("C", (), {"member": False})())
    r = h.suite_definitional(2, 20, 3)
    assert r.status == "Fail" and r.failures >= 20
    assert len(r.failure_samples) == 5


def test_certify_decomposition():
    res, psd, skew = certify_decomposition(np.diag([3.0, 4.0, 4.0]))
    assert res <= 1e-10 and psd and skew == 0.0
    with pytest.raises(NotMember):
        certify_decomposition(np.diag([4.0, 3.0, 4.0]))


def test_suite_dimension_one():
    for r in run_suite("all", 1, 50, 2):
        assert r.status == "Pass"
