"""Experiment drivers: scans, theorem verifiers, cancellation search."""

import numpy as np
import pytest

from gbit_lab.reporting import canonical_json
from gbit_lab.groups import Quaternion, embed_5, haar_unit_quaternion, left_isoclinic, plane_rotation, u2_phase
from gbit_lab.models import build_model
from gbit_lab.lab import (
    cancellation_residual,
    closed_form_cancellation,
    replay_witness,
    scan_violation,
    verify_theorem1,
    verify_theorem2,
)


# ---------------------------------------------------------------------------
# Violation scans
# ---------------------------------------------------------------------------

def test_scan_complex_d3_consistent():
    report = scan_violation(build_model("complex-d3"), samples=400, seed=42)
    assert report.verdict == "consistent"
    assert report.max_discrepancy < 1e-12
    assert report.witness is None


def test_scan_quaternion_d5_consistent():
    report = scan_violation(build_model("quaternion-d5"), samples=400, seed=42)
    assert report.verdict == "consistent"
    assert report.max_discrepancy < 1e-12


def test_scan_fullstab_d4_violates():
    report = scan_violation(build_model("fullstab-d4"), samples=400, seed=42)
    assert report.verdict == "violating"
    assert report.max_discrepancy > 0.05
    assert report.witness is not None


def test_scan_witness_replays_to_same_discrepancy():
    spec = build_model("fullstab-d4")
    report = scan_violation(spec, samples=200, seed=7)
    replayed = replay_witness(spec, report.witness)
    assert abs(replayed - report.max_discrepancy) <= 1e-12


def test_scan_reports_are_byte_deterministic():
    spec = build_model("fullstab-d5")
    a = scan_violation(spec, samples=150, seed=9)
    b = scan_violation(spec, samples=150, seed=9)
    assert canonical_json(a.to_json_obj()) == canonical_json(b.to_json_obj())


def test_scan_is_worker_count_independent():
    spec = build_model("fullstab-d4")
    serial = scan_violation(spec, samples=150, seed=11, workers=1)
    parallel = scan_violation(spec, samples=150, seed=11, workers=4)
    assert canonical_json(serial.to_json_obj()) == canonical_json(parallel.to_json_obj())


def test_scan_discrepancy_array_matches_max():
    report = scan_violation(build_model("fullstab-d4"), samples=100, seed=3)
    assert report.discrepancies.size == 100
    assert report.max_discrepancy == float(np.max(report.discrepancies))


def test_scan_rejects_zero_samples():
    with pytest.raises(ValueError, match="sample"):
        scan_violation(build_model("complex-d3"), samples=0, seed=1)


def test_scan_json_schema():
    report = scan_violation(build_model("fullstab-d4"), samples=50, seed=1)
    obj = report.to_json_obj()
    assert set(obj) == {
        "case",
        "dim",
        "verdict",
        "max_discrepancy",
        "tolerance",
        "samples",
        "seed",
        "witness",
        "discrepancies",
    }
    assert set(obj["witness"]) == {"arm_a", "arm_b", "p_ab", "p_ba"}
    assert obj["verdict"] == "violating"


# ---------------------------------------------------------------------------
# Theorem 1 sweep
# ---------------------------------------------------------------------------

def test_theorem1_boundary_small_sweep():
    report = verify_theorem1(5, samples=200, seed=42)
    verdicts = {row.dim: row.scan.verdict for row in report.rows}
    assert verdicts == {
        1: "consistent",
        2: "consistent",
        3: "consistent",
        4: "violating",
        5: "violating",
    }
    trivial = {row.dim: row.phase_group_trivial for row in report.rows}
    assert trivial[1] is True and trivial[2] is True and trivial[3] is None
    assert report.overall


def test_theorem1_rejects_small_dmax():
    with pytest.raises(ValueError, match="d_max"):
        verify_theorem1(2)


# ---------------------------------------------------------------------------
# Theorem 2 cases
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("case_id", ("real-d2", "complex-d3", "u2-d4", "quaternion-d5"))
def test_theorem2_cases_pass(case_id):
    report = verify_theorem2(case_id, scan_samples=200, pairs=500, intersection_samples=500, seed=1)
    assert report.overall, report.to_json_obj()


def test_theorem2_unknown_case_rejected():
    with pytest.raises(ValueError, match="unknown"):
        verify_theorem2("octonion-d9")


def test_theorem2_quaternion_check_values():
    report = verify_theorem2("quaternion-d5", pairs=300, intersection_samples=300, seed=2)
    values = {check.name: check.measured for check in report.checks}
    assert values["left-arm algebra dimension"] == 3
    assert values["right-arm algebra dimension"] == 3
    assert values["joint Lie closure dimension"] == 6
    assert values["left samples classified outside the left family"] == 0


# ---------------------------------------------------------------------------
# Cancellation
# ---------------------------------------------------------------------------

def brute_force_quaternion_residual(q: Quaternion, resolution: int = 24) -> float:
    """Grid-search oracle: min over right multiplications of |R(p) L(q) - I|_F."""
    left = left_isoclinic(q).matrix
    best = np.inf
    psis = np.linspace(0.0, np.pi, resolution)
    thetas = np.linspace(0.0, np.pi, resolution)
    phis = np.linspace(0.0, 2 * np.pi, 2 * resolution, endpoint=False)
    for psi in psis:
        for theta in thetas:
            for phi in phis:
                p = Quaternion(
                    np.cos(psi),
                    np.sin(psi) * np.sin(theta) * np.cos(phi),
                    np.sin(psi) * np.sin(theta) * np.sin(phi),
                    np.sin(psi) * np.cos(theta),
                )
                x = np.array([[p.w, -p.x, -p.y, -p.z],
                              [p.x, p.w, p.z, -p.y],
                              [p.y, -p.z, p.w, p.x],
                              [p.z, p.y, -p.x, p.w]])
                best = min(best, float(np.linalg.norm(x @ left - np.eye(4), ord="fro")))
    return best


def test_grid_search_oracle_confirms_closed_form():
    for q in (Quaternion(0, 1, 0, 0), Quaternion(np.sqrt(0.5), np.sqrt(0.5), 0, 0), Quaternion(-1, 0, 0, 0)):
        oracle = brute_force_quaternion_residual(q)
        closed = float(np.sqrt(8.0 - 8.0 * abs(q.w)))
        assert abs(oracle - closed) < 0.05  # limited by grid resolution


def test_cancellation_complex_d3_inverse_phase():
    spec = build_model("complex-d3")
    phi = 0.7
    result = cancellation_residual(plane_rotation(3, 1, 2, phi), spec, trials=32, seed=0)
    assert result.residual < 1e-9
    expected = plane_rotation(3, 1, 2, -phi).matrix
    assert np.max(np.abs(result.best_arm_b.matrix - expected)) < 1e-6
    assert closed_form_cancellation(spec, plane_rotation(3, 1, 2, phi)) == 0.0


def test_cancellation_u2_d4_inverse_phase():
    spec = build_model("u2-d4")
    result = cancellation_residual(u2_phase(1.1), spec, trials=32, seed=0)
    assert result.residual < 1e-9
    assert np.max(np.abs(result.best_arm_b.matrix - u2_phase(-1.1).matrix)) < 1e-6


def test_cancellation_quaternion_minus_one_cancels():
    spec = build_model("quaternion-d5")
    arm = embed_5(left_isoclinic(Quaternion(-1, 0, 0, 0)))
    result = cancellation_residual(arm, spec, trials=32, seed=0)
    assert result.residual < 1e-9
    # The minimizer is right multiplication by -1.
    np.testing.assert_allclose(result.best_arm_b.matrix[1:, 1:], -np.eye(4), atol=1e-6)


def test_cancellation_quaternion_i_residual_two_sqrt_two():
    spec = build_model("quaternion-d5")
    arm = embed_5(left_isoclinic(Quaternion(0, 1, 0, 0)))
    result = cancellation_residual(arm, spec, trials=32, seed=0)
    assert abs(result.residual - 2.0 * np.sqrt(2.0)) < 1e-6


def test_cancellation_matches_closed_form_over_random_quaternions():
    spec = build_model("quaternion-d5")
    rng = np.random.default_rng(55)
    for _ in range(10):
        q = haar_unit_quaternion(rng)
        arm = embed_5(left_isoclinic(q))
        result = cancellation_residual(arm, spec, trials=32, seed=1)
        closed = closed_form_cancellation(spec, arm)
        assert abs(result.residual - closed) < 1e-6


def test_cancellation_dichotomy_threshold():
    # Residuals exceed 1 whenever |Re q| < 0.7.
    spec = build_model("quaternion-d5")
    rng = np.random.default_rng(56)
    checked = 0
    while checked < 10:
        q = haar_unit_quaternion(rng)
        if abs(q.w) >= 0.7:
            continue
        arm = embed_5(left_isoclinic(q))
        assert cancellation_residual(arm, spec, trials=32, seed=2).residual > 1.0
        checked += 1


def test_cancellation_real_d2_enumerates_finite_group():
    spec = build_model("real-d2")
    from gbit_lab.states import OrthogonalTransform

    flip = OrthogonalTransform(np.diag([1.0, -1.0]))
    result = cancellation_residual(flip, spec, trials=4, seed=0)
    assert result.residual < 1e-12
    np.testing.assert_array_equal(result.best_arm_b.matrix, flip.matrix)


def test_cancellation_rejects_non_members():
    spec = build_model("quaternion-d5")
    outsider = embed_5(plane_rotation(4, 0, 1, 0.4))  # generic stabilizer element
    with pytest.raises(ValueError, match="member"):
        cancellation_residual(outsider, spec, trials=8, seed=0)


def test_cancellation_rejects_zero_trials():
    spec = build_model("complex-d3")
    with pytest.raises(ValueError, match="trial"):
        cancellation_residual(plane_rotation(3, 1, 2, 0.1), spec, trials=0, seed=0)
