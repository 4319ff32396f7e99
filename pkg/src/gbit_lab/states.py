"""Ball states, two-outcome effects, orthogonal transforms, and the d=3 quantum bridge.

A two-level generalized bit lives on the d-dimensional Euclidean unit ball:
states are points of the ball (pure on the surface, mixed inside), a
two-outcome measurement is a unit axis vector, and the first-outcome
probability is (1 + axis . state)/2. Reversible dynamics are orthogonal
matrices acting on the coordinates. For d=3 this is the ordinary qubit Bloch
ball, and the bridge to 2x2 density matrices is provided as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
ORTHO_TOL = 1e-10

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def _readonly_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    arr = np.atleast_1d(arr)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-d real vector")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BlochState:
    """Point of the d-ball describing the which-path state."""

    coords: np.ndarray

    def __post_init__(self):
        coords = _readonly_vector(self.coords)
        norm = float(np.linalg.norm(coords))
        if norm > 1.0 + NORM_TOL:
            raise ValueError(f"state lies outside the unit ball: norm = {norm!r}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return self.coords.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def is_pure(self) -> bool:
        return abs(self.norm - 1.0) <= NORM_TOL

    def renormalized(self) -> BlochState:
        """Explicit rescale onto the sphere. Never applied silently."""
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot renormalize the maximally mixed state")
        return BlochState(self.coords / n)


def pure_state(direction) -> BlochState:
    """Pure state along a unit vector; rejects non-unit input."""
    state = BlochState(direction)
    if not state.is_pure:
        raise ValueError(f"pure state requires unit norm, got {state.norm!r}")
    return state


def basis_state(dim: int, axis: int = 0) -> BlochState:
    """Pure state on the coordinate axis ``axis`` (0-based)."""
    if not 0 <= axis < dim:
        raise ValueError(f"axis {axis} out of range for dimension {dim}")
    coords = np.zeros(dim)
    coords[axis] = 1.0
    return BlochState(coords)


def maximally_mixed(dim: int) -> BlochState:
    return BlochState(np.zeros(dim))


@dataclass(frozen=True, eq=False)
class Effect:
    """Unit axis vector of a two-outcome measurement."""

    axis: np.ndarray

    def __post_init__(self):
        axis = _readonly_vector(self.axis)
        norm = float(np.linalg.norm(axis))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"effect axis must be unit length, got norm = {norm!r}")
        object.__setattr__(self, "axis", axis)

    @property
    def dim(self) -> int:
        return self.axis.size

    @classmethod
    def unit(cls, direction) -> Effect:
        """Build an effect by explicitly normalizing ``direction``."""
        vec = np.asarray(direction, dtype=float)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector into an effect")
        return cls(vec / norm)

    @classmethod
    def along_axis(cls, dim: int, axis: int = 0) -> Effect:
        coords = np.zeros(dim)
        coords[axis] = 1.0
        return cls(coords)


@dataclass(frozen=True, eq=False)
class OrthogonalTransform:
    """A d x d real orthogonal matrix: one reversible transformation."""

    matrix: np.ndarray
    det_sign: int = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("transform must be a square matrix")
        defect = float(np.max(np.abs(m.T @ m - np.eye(m.shape[0]))))
        if defect >= ORTHO_TOL:
            raise ValueError(f"matrix is not orthogonal: defect = {defect!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "det_sign", 1 if np.linalg.det(m) > 0 else -1)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> OrthogonalTransform:
        return cls(np.eye(dim))

    def inverse(self) -> OrthogonalTransform:
        return OrthogonalTransform(self.matrix.T)

    def __matmul__(self, other: OrthogonalTransform) -> OrthogonalTransform:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return OrthogonalTransform(self.matrix @ other.matrix)


@dataclass(frozen=True)
class ClickStatistics:
    """Probabilities of the two detector clicks; always sums to one."""

    p_detector1: float
    p_detector2: float

    def __post_init__(self):
        for p in (self.p_detector1, self.p_detector2):
            if not -NORM_TOL <= p <= 1.0 + NORM_TOL:
                raise ValueError(f"probability out of range: {p!r}")
        total = self.p_detector1 + self.p_detector2
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"click probabilities must sum to 1, got {total!r}")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """2x2 complex density matrix (Hermitian, unit trace, positive)."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex, copy=True)
        if m.shape != (2, 2):
            raise ValueError("density matrix must be 2x2")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m) - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix must have unit trace, got {np.trace(m)!r}")
        if np.min(np.linalg.eigvalsh(m)) < -NORM_TOL:
            raise ValueError("density matrix must be positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


def outcome_probability(effect: Effect, state: BlochState) -> ClickStatistics:
    """Two-outcome probabilities (1 +- axis . state)/2."""
    if effect.dim != state.dim:
        raise ValueError(f"dimension mismatch: effect {effect.dim}, state {state.dim}")
    overlap = float(effect.axis @ state.coords)
    return ClickStatistics((1.0 + overlap) / 2.0, (1.0 - overlap) / 2.0)


def apply_transform(transform: OrthogonalTransform, state: BlochState) -> BlochState:
    if transform.dim != state.dim:
        raise ValueError(f"dimension mismatch: transform {transform.dim}, state {state.dim}")
    return BlochState(transform.matrix @ state.coords)


def mix(state1: BlochState, state2: BlochState, weight: float) -> BlochState:
    """Convex mixture weight*state1 + (1-weight)*state2."""
    if state1.dim != state2.dim:
        raise ValueError(f"dimension mismatch: {state1.dim} vs {state2.dim}")
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {weight!r}")
    return BlochState(weight * state1.coords + (1.0 - weight) * state2.coords)


def qubit_bridge(state: BlochState) -> DensityMatrix:
    """Map a d=3 ball state to its 2x2 density matrix (I + sum w_i sigma_i)/2."""
    if state.dim != 3:
        raise ValueError(f"the quantum bridge requires dimension 3, got {state.dim}")
    rho = np.eye(2, dtype=complex)
    for w, sigma in zip(state.coords, _PAULI):
        rho = rho + w * sigma
    return DensityMatrix(rho / 2.0)


def bloch_vector(rho: DensityMatrix) -> BlochState:
    """Inverse of the qubit bridge: w_i = tr(rho sigma_i)."""
    coords = [float(np.trace(rho.entries @ sigma).real) for sigma in _PAULI]
    return BlochState(coords)


def quantum_mzi_oracle(phi_a: float, phi_b: float) -> ClickStatistics:
    """Click statistics of the standard quantum Mach-Zehnder interferometer.

    Simulated by explicit 2x2 unitary products: a 50/50 Hadamard beamsplitter,
    diagonal phases exp(i*phi_a) on the first path state and exp(i*phi_b) on
    the second, the inverse beamsplitter, and a projective which-path
    measurement. The result is (1 + cos(phi_a - phi_b))/2 on detector 1.
    """
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    phases = np.diag([np.exp(1.0j * phi_a), np.exp(1.0j * phi_b)])
    amplitude = hadamard @ phases @ hadamard @ np.array([1.0, 0.0], dtype=complex)
    p1 = float(np.abs(amplitude[0]) ** 2)
    p2 = float(np.abs(amplitude[1]) ** 2)
    return ClickStatistics(p1, p2)
