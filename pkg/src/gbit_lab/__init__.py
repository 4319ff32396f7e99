"""Numerical lab for generalized-bit (d-ball) state spaces on two-arm interferometers."""

from .states import (
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
from .groups import (
    Quaternion,
    commutator_defect,
    embed_5,
    haar_orthogonal,
    haar_stabilizer,
    isoclinic_classify,
    left_isoclinic,
    lie_closure_dim,
    plane_rotation,
    right_isoclinic,
    stabilizer_residual,
    u2_embed,
    u2_phase,
)
from .models import ModelSpec, build_model, draw_sample, model_from_json_obj, model_to_json_obj, transport_to
from .mzi import (
    ORDER_A_THEN_B,
    ORDER_B_THEN_A,
    FringeTable,
    MziConfig,
    build_mzi,
    fringe_scan,
    order_discrepancy,
    run_order,
)
from .lab import (
    CancellationResult,
    CaseReport,
    ViolationReport,
    cancellation_residual,
    closed_form_cancellation,
    replay_witness,
    scan_violation,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"
