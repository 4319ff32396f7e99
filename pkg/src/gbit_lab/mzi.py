"""Two-arm Mach-Zehnder model on a d-ball: beamsplitter, ordered arms, detector.

The beamsplitter is a quarter turn in the (1, 2) coordinate plane, carrying
the "definitely upper branch" pole onto the equator; the recombiner is its
inverse. Arm transforms must stabilize the detector axis (a transform that
moves the particle between branches is nonlocal and rejected). Click
statistics are read along the detector axis after recombination, and the only
question this module answers is whether they depend on the order in which the
two arms act.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .reporting import RunManifest, format_float
from .states import (
    BlochState,
    ClickStatistics,
    Effect,
    OrthogonalTransform,
    apply_transform,
    basis_state,
    outcome_probability,
)
from .groups import STABILIZER_TOL, plane_rotation, stabilizer_residual
from .models import ModelSpec

ORDER_A_THEN_B = "A_then_B"
ORDER_B_THEN_A = "B_then_A"

_RECOMBINER_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MziConfig:
    """A fully specified interferometer run: optics, arms, input, detector."""

    spec: ModelSpec
    beamsplitter: OrthogonalTransform
    recombiner: OrthogonalTransform
    arm_a: OrthogonalTransform
    arm_b: OrthogonalTransform
    input_state: BlochState
    detector: Effect

    def __post_init__(self):
        dims = {
            self.beamsplitter.dim,
            self.recombiner.dim,
            self.arm_a.dim,
            self.arm_b.dim,
            self.input_state.dim,
            self.detector.dim,
        }
        if dims != {self.spec.dim}:
            raise ValueError(f"inconsistent dimensions {sorted(dims)} for model {self.spec.case_id}")
        for label, arm in (("A", self.arm_a), ("B", self.arm_b)):
            residual = stabilizer_residual(arm, self.detector)
            if residual >= STABILIZER_TOL:
                raise ValueError(
                    f"arm {label} transform moves the detector axis "
                    f"(stabilizer residual {format_float(residual)})"
                )
        defect = float(np.max(np.abs(self.recombiner.matrix @ self.beamsplitter.matrix - np.eye(self.spec.dim))))
        if defect > _RECOMBINER_TOL:
            raise ValueError(f"recombiner is not the inverse of the beamsplitter (defect {defect!r})")


def default_beamsplitter(dim: int) -> OrthogonalTransform:
    """Quarter turn in the (1, 2) plane; the identity for the d=1 segment,
    where no reversible map can delocalize the state."""
    if dim < 2:
        return OrthogonalTransform.identity(dim)
    return plane_rotation(dim, 0, 1, np.pi / 2)


def build_mzi(
    spec: ModelSpec,
    arm_a: OrthogonalTransform,
    arm_b: OrthogonalTransform,
    beamsplitter: OrthogonalTransform | None = None,
) -> MziConfig:
    """Assemble the default interferometer for a model case.

    Input is the pure "upper branch" state on the detector axis, and the
    detector reads that same axis. Arm membership is enforced through the
    stabilizer residual; the offending residual is reported on rejection.
    """
    splitter = beamsplitter if beamsplitter is not None else default_beamsplitter(spec.dim)
    return MziConfig(
        spec=spec,
        beamsplitter=splitter,
        recombiner=splitter.inverse(),
        arm_a=arm_a,
        arm_b=arm_b,
        input_state=basis_state(spec.dim, 0),
        detector=spec.detector_axis,
    )


def run_order(config: MziConfig, order: str) -> ClickStatistics:
    """Click statistics for one time-ordering of the two arm operations."""
    if order == ORDER_A_THEN_B:
        first, second = config.arm_a, config.arm_b
    elif order == ORDER_B_THEN_A:
        first, second = config.arm_b, config.arm_a
    else:
        raise ValueError(f"unknown order {order!r}")
    state = apply_transform(config.beamsplitter, config.input_state)
    state = apply_transform(first, state)
    state = apply_transform(second, state)
    state = apply_transform(config.recombiner, state)
    return outcome_probability(config.detector, state)


def order_discrepancy(config: MziConfig) -> float:
    """|p1(A then B) - p1(B then A)|; nonzero means observers can disagree."""
    p_ab = run_order(config, ORDER_A_THEN_B).p_detector1
    p_ba = run_order(config, ORDER_B_THEN_A).p_detector1
    return abs(p_ab - p_ba)


@dataclass(frozen=True)
class FringeTable:
    """Detector-1/2 probabilities over a scan of the arm-A phase parameter."""

    parameter: str
    rows: tuple[tuple[float, float, float], ...]

    def to_csv(self, manifest: RunManifest | None = None) -> str:
        lines = []
        if manifest is not None:
            lines.append(manifest.csv_header())
        lines.append(f"{self.parameter},p1,p2")
        for theta, p1, p2 in self.rows:
            lines.append(f"{format_float(theta)},{format_float(p1)},{format_float(p2)}")
        return "\n".join(lines) + "\n"


def fringe_scan(
    spec: ModelSpec,
    n_points: int,
    phase_family: Callable[[float], OrthogonalTransform] | None = None,
) -> FringeTable:
    """Sweep arm A through a one-parameter phase family with arm B idle.

    Angles run over ``n_points`` uniform steps on [0, 2pi). A family member
    that fails the stabilizer check aborts the scan, reporting the grid index.
    """
    if n_points < 2:
        raise ValueError(f"fringe scan needs at least 2 points, got {n_points}")
    family = phase_family if phase_family is not None else spec.fringe_family
    if family is None:
        raise ValueError(f"model {spec.case_id!r} has no continuous phase family to scan")
    identity = OrthogonalTransform.identity(spec.dim)
    rows = []
    for index in range(n_points):
        theta = 2.0 * np.pi * index / n_points
        member = family(theta)
        residual = stabilizer_residual(member, spec.detector_axis)
        if residual >= STABILIZER_TOL:
            raise ValueError(
                f"phase family member at grid index {index} (theta={theta!r}) "
                f"fails the stabilizer check (residual {format_float(residual)})"
            )
        stats = run_order(build_mzi(spec, member, identity), ORDER_A_THEN_B)
        rows.append((float(theta), stats.p_detector1, stats.p_detector2))
    return FringeTable(parameter="theta", rows=tuple(rows))
