"""Ball states, the probability rule, and the d=3 quantum bridge."""

import numpy as np
import pytest

from gbit_lab.states import (
    BlochState,
    ClickStatistics,
    DensityMatrix,
    Effect,
    OrthogonalTransform,
    apply_transform,
    basis_state,
    bloch_vector,
    maximally_mixed,
    mix,
    outcome_probability,
    pure_state,
    quantum_mzi_oracle,
    qubit_bridge,
)
from gbit_lab.groups import haar_orthogonal, plane_rotation


def random_ball_state(rng, dim):
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    return BlochState(direction * rng.uniform(0.0, 1.0))


# ---------------------------------------------------------------------------
# Outcome probabilities
# ---------------------------------------------------------------------------

def test_outcome_probability_aligned():
    stats = outcome_probability(Effect([1, 0, 0]), pure_state([1, 0, 0]))
    assert stats.p_detector1 == 1.0 and stats.p_detector2 == 0.0


def test_outcome_probability_orthogonal():
    stats = outcome_probability(Effect([1, 0, 0]), pure_state([0, 1, 0]))
    assert stats.p_detector1 == 0.5 and stats.p_detector2 == 0.5


def test_outcome_probability_antipodal():
    stats = outcome_probability(Effect([0, 0, 1]), pure_state([0, 0, -1]))
    assert stats.p_detector1 == 0.0 and stats.p_detector2 == 1.0


def test_outcome_probability_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        outcome_probability(Effect([1, 0]), pure_state([1, 0, 0]))


def test_probability_bounds_and_normalization():
    rng = np.random.default_rng(11)
    for _ in range(300):
        dim = int(rng.integers(1, 9))
        direction = rng.standard_normal(dim)
        effect = Effect(direction / np.linalg.norm(direction))
        state = random_ball_state(rng, dim)
        stats = outcome_probability(effect, state)
        assert -1e-12 <= stats.p_detector1 <= 1 + 1e-12
        assert abs(stats.p_detector1 + stats.p_detector2 - 1.0) <= 1e-12


def test_transform_covariance():
    rng = np.random.default_rng(12)
    for trial in range(100):
        dim = int(rng.integers(2, 7))
        transform = haar_orthogonal(dim, rng.integers(0, 2**32))
        direction = rng.standard_normal(dim)
        effect = Effect(direction / np.linalg.norm(direction))
        state = random_ball_state(rng, dim)
        moved_effect = Effect(transform.matrix @ effect.axis)
        moved_state = apply_transform(transform, state)
        before = outcome_probability(effect, state).p_detector1
        after = outcome_probability(moved_effect, moved_state).p_detector1
        assert abs(before - after) <= 1e-12


# ---------------------------------------------------------------------------
# Transforms and mixing
# ---------------------------------------------------------------------------

def test_apply_identity_fixes_state():
    rng = np.random.default_rng(13)
    state = random_ball_state(rng, 4)
    out = apply_transform(OrthogonalTransform.identity(4), state)
    np.testing.assert_array_equal(out.coords, state.coords)


def test_bit_flip_on_the_classical_segment():
    out = apply_transform(OrthogonalTransform([[-1.0]]), pure_state([1.0]))
    assert out.coords[0] == -1.0


def test_quarter_turn_moves_pole_to_equator():
    out = apply_transform(plane_rotation(3, 0, 1, np.pi / 2), pure_state([1, 0, 0]))
    np.testing.assert_allclose(out.coords, [0, 1, 0], atol=1e-15)


def test_transform_preserves_norm():
    rng = np.random.default_rng(14)
    for _ in range(50):
        state = random_ball_state(rng, 5)
        transform = haar_orthogonal(5, rng.integers(0, 2**32))
        assert abs(apply_transform(transform, state).norm - state.norm) <= 1e-12


def test_mix_endpoints_and_midpoint():
    a, b = pure_state([1, 0]), pure_state([-1, 0])
    np.testing.assert_array_equal(mix(a, b, 1.0).coords, a.coords)
    np.testing.assert_allclose(mix(a, b, 0.5).coords, [0, 0], atol=1e-15)
    c = random_ball_state(np.random.default_rng(0), 2)
    np.testing.assert_allclose(mix(c, c, 0.3).coords, c.coords, atol=1e-15)


def test_mix_rejects_bad_weight():
    a = pure_state([1, 0])
    with pytest.raises(ValueError, match="weight"):
        mix(a, a, 1.5)


def test_apply_transform_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        apply_transform(OrthogonalTransform.identity(2), pure_state([1, 0, 0]))


def test_affinity_of_the_probability_rule():
    rng = np.random.default_rng(15)
    for _ in range(100):
        dim = int(rng.integers(1, 7))
        direction = rng.standard_normal(dim)
        effect = Effect(direction / np.linalg.norm(direction))
        s1, s2 = random_ball_state(rng, dim), random_ball_state(rng, dim)
        lam = rng.uniform()
        mixed = outcome_probability(effect, mix(s1, s2, lam)).p_detector1
        split = lam * outcome_probability(effect, s1).p_detector1 + (1 - lam) * outcome_probability(
            effect, s2
        ).p_detector1
        assert abs(mixed - split) <= 1e-12


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_state_outside_ball_rejected():
    with pytest.raises(ValueError, match="unit ball"):
        BlochState([1.0, 1.0])


def test_state_purity_classification():
    assert pure_state([0, 1]).is_pure
    assert not BlochState([0.0, 0.5]).is_pure
    assert maximally_mixed(3).norm == 0.0


def test_renormalization_is_explicit():
    nearly = BlochState([1.0 - 1e-13, 0.0])
    assert abs(nearly.renormalized().norm - 1.0) <= 1e-15
    with pytest.raises(ValueError):
        maximally_mixed(2).renormalized()


def test_effect_requires_unit_axis():
    with pytest.raises(ValueError, match="unit"):
        Effect([1.0, 1.0])
    np.testing.assert_allclose(Effect.unit([3.0, 4.0]).axis, [0.6, 0.8])


def test_orthogonal_transform_validation_and_det_sign():
    with pytest.raises(ValueError, match="orthogonal"):
        OrthogonalTransform([[1.0, 0.1], [0.0, 1.0]])
    assert OrthogonalTransform(np.diag([1.0, -1.0])).det_sign == -1
    assert plane_rotation(3, 0, 1, 0.7).det_sign == 1


def test_click_statistics_validation():
    with pytest.raises(ValueError, match="sum"):
        ClickStatistics(0.5, 0.6)
    with pytest.raises(ValueError, match="range"):
        ClickStatistics(1.4, -0.4)


# ---------------------------------------------------------------------------
# The d=3 quantum bridge
# ---------------------------------------------------------------------------

def test_bridge_maximally_mixed():
    rho = qubit_bridge(maximally_mixed(3))
    np.testing.assert_allclose(rho.entries, np.eye(2) / 2.0, atol=1e-15)


def test_bridge_pauli_z_eigenstate():
    rho = qubit_bridge(pure_state([0, 0, 1]))
    np.testing.assert_allclose(rho.entries, np.diag([1.0, 0.0]), atol=1e-15)


def test_bridge_pauli_x_eigenstate():
    rho = qubit_bridge(pure_state([1, 0, 0]))
    np.testing.assert_allclose(rho.entries, np.full((2, 2), 0.5), atol=1e-15)


def test_bridge_requires_dimension_3():
    with pytest.raises(ValueError, match="dimension 3"):
        qubit_bridge(pure_state([1, 0]))


def test_bridge_roundtrip():
    rng = np.random.default_rng(16)
    for _ in range(50):
        state = random_ball_state(rng, 3)
        recovered = bloch_vector(qubit_bridge(state))
        np.testing.assert_allclose(recovered.coords, state.coords, atol=1e-12)


def test_bridge_fidelity_against_projector_trace():
    # tr(P rho) with P the projector of Bloch vector e must equal (1 + e.w)/2.
    rng = np.random.default_rng(17)
    for _ in range(50):
        state = random_ball_state(rng, 3)
        direction = rng.standard_normal(3)
        effect = Effect(direction / np.linalg.norm(direction))
        projector = qubit_bridge(pure_state(effect.axis)).entries
        rho = qubit_bridge(state).entries
        quantum = float(np.trace(projector @ rho).real)
        ball = outcome_probability(effect, state).p_detector1
        assert abs(quantum - ball) <= 1e-12


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        DensityMatrix(np.array([[0.5, 0.5j], [0.5j, 0.5]]))
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValueError, match="positive"):
        DensityMatrix(np.diag([1.5, -0.5]))


# ---------------------------------------------------------------------------
# The 2x2 unitary interferometer oracle
# ---------------------------------------------------------------------------

def test_quantum_mzi_identity_arms():
    stats = quantum_mzi_oracle(0.0, 0.0)
    assert abs(stats.p_detector1 - 1.0) <= 1e-15


def test_quantum_mzi_pi_phase():
    stats = quantum_mzi_oracle(np.pi, 0.0)
    assert abs(stats.p_detector1) <= 1e-15 and abs(stats.p_detector2 - 1.0) <= 1e-15


def test_quantum_mzi_quarter_phase():
    stats = quantum_mzi_oracle(np.pi / 2, 0.0)
    assert abs(stats.p_detector1 - 0.5) <= 1e-15


def test_quantum_mzi_matches_cosine_law():
    rng = np.random.default_rng(18)
    for _ in range(200):
        phi_a, phi_b = rng.uniform(0, 2 * np.pi, 2)
        stats = quantum_mzi_oracle(phi_a, phi_b)
        assert abs(stats.p_detector1 - (1 + np.cos(phi_a - phi_b)) / 2) <= 1e-12
