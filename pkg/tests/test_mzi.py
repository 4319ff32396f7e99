"""Interferometer runs: fringes, order dependence, the quantum cross-check."""

import numpy as np
import pytest

from gbit_lab.states import OrthogonalTransform, outcome_probability, quantum_mzi_oracle
from gbit_lab.groups import (
    Quaternion,
    commutator_defect,
    embed_5,
    left_isoclinic,
    plane_rotation,
    stabilizer_residual,
    u2_phase,
)
from gbit_lab.models import build_model, draw_sample
from gbit_lab.mzi import (
    ORDER_A_THEN_B,
    ORDER_B_THEN_A,
    build_mzi,
    fringe_scan,
    order_discrepancy,
    run_order,
)
from gbit_lab.reporting import RunManifest


def identity(dim):
    return OrthogonalTransform.identity(dim)


# ---------------------------------------------------------------------------
# Configuration and validation
# ---------------------------------------------------------------------------

def test_identity_arms_click_detector_one():
    for case in ("complex-d3", "u2-d4", "quaternion-d5", "fullstab-d4", "real-d2", "classical-d1"):
        spec = build_model(case)
        config = build_mzi(spec, identity(spec.dim), identity(spec.dim))
        for order in (ORDER_A_THEN_B, ORDER_B_THEN_A):
            stats = run_order(config, order)
            assert abs(stats.p_detector1 - 1.0) <= 1e-12


def test_arm_moving_the_detector_axis_is_rejected():
    spec = build_model("complex-d3")
    mover = plane_rotation(3, 0, 1, np.pi / 2)
    with pytest.raises(ValueError, match="residual"):
        build_mzi(spec, mover, identity(3))


def test_recombiner_must_invert_beamsplitter():
    from gbit_lab.mzi import MziConfig
    from gbit_lab.states import Effect, basis_state

    spec = build_model("complex-d3")
    splitter = plane_rotation(3, 0, 1, np.pi / 2)
    with pytest.raises(ValueError, match="inverse"):
        MziConfig(
            spec=spec,
            beamsplitter=splitter,
            recombiner=splitter,  # not the inverse
            arm_a=identity(3),
            arm_b=identity(3),
            input_state=basis_state(3),
            detector=Effect.along_axis(3),
        )


def test_branch_probability_is_conserved_by_arms():
    # Which-path probability right after the beamsplitter stays 1/2 under any arm.
    spec = build_model("quaternion-d5")
    config = build_mzi(spec, draw_sample(spec, "armA", 0, 1).element, identity(5))
    from gbit_lab.states import apply_transform

    after_split = apply_transform(config.beamsplitter, config.input_state)
    p_before = outcome_probability(config.detector, after_split).p_detector1
    after_arm = apply_transform(config.arm_a, after_split)
    p_after = outcome_probability(config.detector, after_arm).p_detector1
    assert abs(p_before - 0.5) <= 1e-12
    assert abs(p_before - p_after) <= 1e-12


def test_run_order_rejects_unknown_order():
    spec = build_model("complex-d3")
    config = build_mzi(spec, identity(3), identity(3))
    with pytest.raises(ValueError, match="order"):
        run_order(config, "B_then_C")


# ---------------------------------------------------------------------------
# d=3: the quantum cross-check
# ---------------------------------------------------------------------------

def qubit_config(phi_a, phi_b):
    spec = build_model("complex-d3")
    # Arm A turns the phase circle by +phi_a, arm B by -phi_b, matching the
    # quantum convention of conjugate phases on the two path states.
    return build_mzi(spec, plane_rotation(3, 1, 2, phi_a), plane_rotation(3, 1, 2, -phi_b))


def test_d3_fringe_matches_quantum_oracle_on_grid():
    for phi in np.linspace(0.0, 2 * np.pi, 64, endpoint=False):
        ball = run_order(qubit_config(phi, 0.0), ORDER_A_THEN_B)
        quantum = quantum_mzi_oracle(phi, 0.0)
        assert abs(ball.p_detector1 - quantum.p_detector1) <= 1e-12
        assert abs(ball.p_detector2 - quantum.p_detector2) <= 1e-12


def test_d3_matches_quantum_oracle_on_random_phase_pairs():
    rng = np.random.default_rng(41)
    for _ in range(100):
        phi_a, phi_b = rng.uniform(0.0, 2 * np.pi, 2)
        config = qubit_config(phi_a, phi_b)
        for order in (ORDER_A_THEN_B, ORDER_B_THEN_A):
            ball = run_order(config, order)
            quantum = quantum_mzi_oracle(phi_a, phi_b)
            assert abs(ball.p_detector1 - quantum.p_detector1) <= 1e-12


def test_d3_order_discrepancy_vanishes():
    rng = np.random.default_rng(42)
    for _ in range(100):
        phi_a, phi_b = rng.uniform(0.0, 2 * np.pi, 2)
        assert order_discrepancy(qubit_config(phi_a, phi_b)) <= 1e-12


# ---------------------------------------------------------------------------
# The canonical d=4 witness
# ---------------------------------------------------------------------------

def dense_oracle_d4_witness():
    """Independent dense-matrix computation of the canonical witness pair."""

    def rot(i, j, theta):
        m = np.eye(4)
        c, s = np.cos(theta), np.sin(theta)
        m[i - 1, i - 1] = c
        m[j - 1, j - 1] = c
        m[i - 1, j - 1] = -s
        m[j - 1, i - 1] = s
        return m

    splitter = rot(1, 2, np.pi / 2)
    arm_a = rot(2, 3, np.pi / 2)
    arm_b = rot(3, 4, np.pi / 2) @ rot(2, 3, np.pi / 2)
    e1 = np.array([1.0, 0.0, 0.0, 0.0])
    p = {}
    for name, (first, second) in {"ab": (arm_a, arm_b), "ba": (arm_b, arm_a)}.items():
        out = splitter.T @ second @ first @ splitter @ e1
        p[name] = (1.0 + out[0]) / 2.0
    return p["ab"], p["ba"]


def test_canonical_d4_witness_matches_dense_oracle():
    oracle_ab, oracle_ba = dense_oracle_d4_witness()
    assert abs(oracle_ab - 0.0) <= 1e-12
    assert abs(oracle_ba - 0.5) <= 1e-12

    spec = build_model("fullstab-d4")
    arm_a = plane_rotation(4, 1, 2, np.pi / 2)
    arm_b = plane_rotation(4, 2, 3, np.pi / 2) @ plane_rotation(4, 1, 2, np.pi / 2)
    config = build_mzi(spec, arm_a, arm_b)
    p_ab = run_order(config, ORDER_A_THEN_B).p_detector1
    p_ba = run_order(config, ORDER_B_THEN_A).p_detector1
    assert abs(p_ab - oracle_ab) <= 1e-12
    assert abs(p_ba - oracle_ba) <= 1e-12
    assert abs(order_discrepancy(config) - 0.5) <= 1e-12


def test_commuting_arms_imply_order_invariance():
    rng = np.random.default_rng(43)
    spec = build_model("quaternion-d5")
    for k in range(100):
        arm_a = draw_sample(spec, "armA", 7, k).element
        arm_b = draw_sample(spec, "armB", 7, k).element
        if commutator_defect(arm_a, arm_b) < 1e-12:
            assert order_discrepancy(build_mzi(spec, arm_a, arm_b)) < 1e-12


# ---------------------------------------------------------------------------
# Fringe scans
# ---------------------------------------------------------------------------

def cosine_fringe(n_points):
    return [(1.0 + np.cos(2.0 * np.pi * k / n_points)) / 2.0 for k in range(n_points)]


def test_fringe_complex_d3_is_cosine():
    table = fringe_scan(build_model("complex-d3"), 64)
    expected = cosine_fringe(64)
    assert len(table.rows) == 64
    for row, target in zip(table.rows, expected):
        assert abs(row[1] - target) <= 1e-12


def test_fringe_u2_d4_equals_complex_d3():
    a = fringe_scan(build_model("u2-d4"), 64)
    b = fringe_scan(build_model("complex-d3"), 64)
    for row_a, row_b in zip(a.rows, b.rows):
        assert abs(row_a[1] - row_b[1]) <= 1e-12


def test_fringe_quaternion_d5_is_cosine():
    table = fringe_scan(build_model("quaternion-d5"), 32)
    for row, target in zip(table.rows, cosine_fringe(32)):
        assert abs(row[1] - target) <= 1e-12


def test_fringe_requires_a_phase_family():
    with pytest.raises(ValueError, match="phase family"):
        fringe_scan(build_model("classical-d1"), 8)
    with pytest.raises(ValueError, match="phase family"):
        fringe_scan(build_model("real-d2"), 8)


def test_fringe_requires_two_points():
    with pytest.raises(ValueError, match="at least 2"):
        fringe_scan(build_model("complex-d3"), 1)


def test_fringe_aborts_with_grid_index_on_bad_family():
    spec = build_model("complex-d3")

    def bad_family(theta):
        if theta > 3.0:
            return plane_rotation(3, 0, 1, theta)  # moves the detector axis
        return plane_rotation(3, 1, 2, theta)

    with pytest.raises(ValueError, match="index 31"):
        fringe_scan(spec, 64, phase_family=bad_family)


def test_fringe_csv_format():
    table = fringe_scan(build_model("complex-d3"), 4)
    manifest = RunManifest(command="fringe", parameters={"model": "complex-d3"}, seed=0, version="x")
    text = table.to_csv(manifest)
    lines = text.split("\n")
    assert lines[0].startswith("# manifest: ")
    assert lines[1] == "theta,p1,p2"
    assert len(lines) == 2 + 4 + 1 and lines[-1] == ""
    assert "\r" not in text


def test_quaternion_phase_family_respects_stabilizer():
    family = build_model("quaternion-d5").fringe_family
    for theta in np.linspace(0, 2 * np.pi, 16):
        member = family(theta)
        assert stabilizer_residual(member, build_model("quaternion-d5").detector_axis) == 0.0
        block = member.matrix[1:, 1:]
        expected = left_isoclinic(Quaternion(np.cos(theta), np.sin(theta), 0.0, 0.0)).matrix
        np.testing.assert_array_equal(block, expected)
        assert embed_5(left_isoclinic(Quaternion(np.cos(theta), np.sin(theta), 0, 0))).dim == 5


def test_u2_phase_family_fringe_uses_family_members():
    spec = build_model("u2-d4")
    member = spec.fringe_family(0.3)
    np.testing.assert_array_equal(member.matrix, u2_phase(0.3).matrix)
