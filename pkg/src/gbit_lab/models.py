"""Model cases: global transformation group, arm groups, transport, JSON round-trip.

Each case fixes a ball dimension, a global group acting transitively on the
sphere, and the two arm groups (subgroups of the detector-axis stabilizer)
with explicit generators, a deterministic Haar-style sampler, and, where the
group is a continuous family, a parameterization used by the cancellation
search.

Built-in cases:

* ``classical-d1``   the classical bit, global group {+1, -1}, trivial arms;
* ``real-d2``        the real quantum bit, global group O(2), arms Z2;
* ``complex-d3``     the standard qubit, arms SO(2) acting on the (2, 3) plane;
* ``u2-d4``          the embedded-U(2) ball, arms the one-parameter phase family;
* ``quaternion-d5``  the quaternionic bit, arm A left and arm B right isoclinic;
* ``fullstab-d<N>``  global SO(N) with both arms the full stabilizer SO(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .states import Effect, OrthogonalTransform
from .groups import (
    STABILIZER_TOL,
    Quaternion,
    _haar_matrix,
    _left_matrices,
    _right_matrices,
    embed_5,
    haar_unit_quaternion,
    left_isoclinic,
    plane_rotation,
    right_isoclinic,
    subseed,
    u2_embed,
    u2_phase,
)

# Permutation aligning the natural block order of the U(2) embedding with the
# coordinate order in which the phase family fixes axes 1 and 3.
U2_COORDINATE_ORDER = (1, 0, 3, 2)

KNOWN_CASES = ("classical-d1", "real-d2", "complex-d3", "u2-d4", "quaternion-d5", "fullstab-d<N>")


@dataclass(frozen=True)
class GroupDescriptor:
    """Named group with a representative generator list."""

    name: str
    generators: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class ArmGroup:
    """One arm's transformation group: generators, sampler, parameterization."""

    name: str
    dim: int
    generators: tuple[np.ndarray, ...]
    param_count: int
    sample_fn: Callable[[np.random.Generator], np.ndarray]
    membership_fn: Callable[[np.ndarray], float]
    elements_fn: Callable[[np.ndarray], np.ndarray] | None = None
    finite_elements: tuple[np.ndarray, ...] = ()

    def sample(self, rng: np.random.Generator) -> OrthogonalTransform:
        return OrthogonalTransform(self.sample_fn(rng))

    def membership_residual(self, transform: OrthogonalTransform) -> float:
        return float(self.membership_fn(transform.matrix))

    def elements(self, params: np.ndarray) -> np.ndarray:
        """Batched map from parameter rows (n, param_count) to matrices (n, d, d)."""
        if self.elements_fn is None:
            raise ValueError(f"arm group {self.name!r} has no continuous parameterization")
        params = np.atleast_2d(np.asarray(params, dtype=float))
        if params.shape[1] != self.param_count:
            raise ValueError(f"expected {self.param_count} parameters, got {params.shape[1]}")
        return self.elements_fn(params)

    def element(self, params) -> OrthogonalTransform:
        return OrthogonalTransform(self.elements(np.atleast_1d(np.asarray(params, float))[None, :])[0])


@dataclass(frozen=True, eq=False)
class GroupElementSample:
    """A sampled group element together with its provenance."""

    element: OrthogonalTransform
    source: str  # armA | armB | phase | global
    seed_path: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """One model case: dimension, global group, arm groups, detector axis."""

    case_id: str
    dim: int
    global_group: GroupDescriptor
    arm_a: ArmGroup
    arm_b: ArmGroup
    detector_axis: Effect
    fringe_family: Callable[[float], OrthogonalTransform] | None = None
    coordinate_order: tuple[int, ...] | None = None

    def __post_init__(self):
        eye = np.eye(self.dim)
        for gen in self.global_group.generators:
            defect = float(np.max(np.abs(gen.T @ gen - eye)))
            if defect >= STABILIZER_TOL:
                raise ValueError(f"global generator not orthogonal (defect {defect!r})")
        for arm in (self.arm_a, self.arm_b):
            for gen in arm.generators:
                residual = float(np.linalg.norm(gen @ self.detector_axis.axis - self.detector_axis.axis))
                if residual >= STABILIZER_TOL:
                    raise ValueError(
                        f"{arm.name!r} generator moves the detector axis (residual {residual!r})"
                    )


def _freeze(mats) -> tuple[np.ndarray, ...]:
    out = []
    for m in mats:
        arr = np.array(m, dtype=float, copy=True)
        arr.setflags(write=False)
        out.append(arr)
    return tuple(out)


def _max_abs(delta: np.ndarray) -> float:
    return float(np.max(np.abs(delta)))


def _trivial_arm(dim: int, name: str = "trivial") -> ArmGroup:
    eye = np.eye(dim)
    return ArmGroup(
        name=name,
        dim=dim,
        generators=_freeze([eye]),
        param_count=0,
        sample_fn=lambda rng: eye.copy(),
        membership_fn=lambda m: _max_abs(m - eye),
        finite_elements=_freeze([eye]),
    )


def _z2_arm(dim: int) -> ArmGroup:
    eye = np.eye(dim)
    flip = np.diag([1.0] + [-1.0] * (dim - 1))
    elements = _freeze([eye, flip])

    def sample(rng: np.random.Generator) -> np.ndarray:
        return elements[int(rng.integers(2))].copy()

    return ArmGroup(
        name="Z2 reflection",
        dim=dim,
        generators=_freeze([flip]),
        param_count=0,
        sample_fn=sample,
        membership_fn=lambda m: min(_max_abs(m - e) for e in elements),
        finite_elements=elements,
    )


def _rotation_batch(dim: int, i: int, j: int, thetas: np.ndarray) -> np.ndarray:
    mats = np.broadcast_to(np.eye(dim), (thetas.size, dim, dim)).copy()
    c, s = np.cos(thetas), np.sin(thetas)
    mats[:, i, i] = c
    mats[:, j, j] = c
    mats[:, i, j] = -s
    mats[:, j, i] = s
    return mats


def _planar_arm(dim: int, i: int, j: int, name: str) -> ArmGroup:
    def elements(params: np.ndarray) -> np.ndarray:
        return _rotation_batch(dim, i, j, params[:, 0])

    def membership(m: np.ndarray) -> float:
        theta = np.arctan2(m[j, i], m[i, i])
        return _max_abs(m - _rotation_batch(dim, i, j, np.array([theta]))[0])

    return ArmGroup(
        name=name,
        dim=dim,
        generators=_freeze([plane_rotation(dim, i, j, np.pi / 2).matrix]),
        param_count=1,
        sample_fn=lambda rng: _rotation_batch(dim, i, j, np.array([rng.uniform(0.0, 2.0 * np.pi)]))[0],
        membership_fn=membership,
        elements_fn=elements,
    )


def _u2_phase_batch(thetas: np.ndarray) -> np.ndarray:
    mats = np.broadcast_to(np.eye(4), (thetas.size, 4, 4)).copy()
    c, s = np.cos(thetas), np.sin(thetas)
    mats[:, 1, 1] = c
    mats[:, 3, 3] = c
    mats[:, 1, 3] = s
    mats[:, 3, 1] = -s
    return mats


def _u2_phase_arm() -> ArmGroup:
    def membership(m: np.ndarray) -> float:
        theta = np.arctan2(m[1, 3], m[1, 1])
        return _max_abs(m - _u2_phase_batch(np.array([theta]))[0])

    return ArmGroup(
        name="U(1) phase family",
        dim=4,
        generators=_freeze([u2_phase(np.pi / 2).matrix]),
        param_count=1,
        sample_fn=lambda rng: _u2_phase_batch(np.array([rng.uniform(0.0, 2.0 * np.pi)]))[0],
        membership_fn=membership,
        elements_fn=lambda params: _u2_phase_batch(params[:, 0]),
    )


def _stabilizer_arm(dim: int) -> ArmGroup:
    if dim < 2:
        return _trivial_arm(dim, name="SO(0) stabilizer (trivial)")
    generators = [plane_rotation(dim, i, j, np.pi / 2).matrix for i in range(1, dim) for j in range(i + 1, dim)]
    if not generators:
        generators = [np.eye(dim)]
    axis = np.zeros(dim)
    axis[0] = 1.0

    def sample(rng: np.random.Generator) -> np.ndarray:
        m = np.eye(dim)
        m[1:, 1:] = _haar_matrix(dim - 1, rng)
        return m

    def membership(m: np.ndarray) -> float:
        residual = float(np.linalg.norm(m @ axis - axis))
        block_det = float(np.linalg.det(m[1:, 1:])) if dim > 1 else 1.0
        return max(residual, 0.0 if block_det > 0 else 2.0)

    return ArmGroup(
        name=f"SO({dim - 1}) full stabilizer",
        dim=dim,
        generators=_freeze(generators),
        param_count=0,
        sample_fn=sample,
        membership_fn=membership,
    )


def _spherical_to_quaternion(params: np.ndarray) -> np.ndarray:
    """(psi, theta, phi) in [0,pi]x[0,pi]x[0,2pi) to unit quaternion rows."""
    psi, theta, phi = params[:, 0], params[:, 1], params[:, 2]
    sin_psi = np.sin(psi)
    return np.stack(
        [
            np.cos(psi),
            sin_psi * np.sin(theta) * np.cos(phi),
            sin_psi * np.sin(theta) * np.sin(phi),
            sin_psi * np.cos(theta),
        ],
        axis=1,
    )


def _embed_batch(blocks: np.ndarray) -> np.ndarray:
    out = np.broadcast_to(np.eye(5), (blocks.shape[0], 5, 5)).copy()
    out[:, 1:, 1:] = blocks
    return out


def _isoclinic_arm(side: str) -> ArmGroup:
    builder = _left_matrices if side == "left" else _right_matrices
    units = [Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)]
    make = left_isoclinic if side == "left" else right_isoclinic
    generators = [embed_5(make(q)).matrix for q in units]

    def sample(rng: np.random.Generator) -> np.ndarray:
        q = haar_unit_quaternion(rng)
        return _embed_batch(builder(q.to_array()[None, :]))[0]

    def membership(m: np.ndarray) -> float:
        border = max(
            _max_abs(m[0, 1:]),
            _max_abs(m[1:, 0]),
            abs(m[0, 0] - 1.0),
        )
        block = m[1:, 1:]
        image = block[:, 0]
        return max(border, _max_abs(block - builder(image[None, :])[0]))

    def elements(params: np.ndarray) -> np.ndarray:
        return _embed_batch(builder(_spherical_to_quaternion(params)))

    return ArmGroup(
        name=f"{side}-isoclinic SO(4) on the equator",
        dim=5,
        generators=_freeze(generators),
        param_count=3,
        sample_fn=sample,
        membership_fn=membership,
        elements_fn=elements,
    )


def _u2_global_generators() -> list[np.ndarray]:
    perm = np.eye(4)[list(U2_COORDINATE_ORDER)]
    units = [
        np.diag([1.0j, 1.0]),
        np.diag([1.0, 1.0j]),
        np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0),
    ]
    return [perm @ u2_embed(u).matrix @ perm.T for u in units]


def _plane_generators(dim: int) -> list[np.ndarray]:
    return [plane_rotation(dim, i, j, np.pi / 2).matrix for i in range(dim) for j in range(i + 1, dim)]


def build_model(case_id: str) -> ModelSpec:
    """Construct one of the built-in model cases (see module docstring)."""
    if case_id == "classical-d1":
        return ModelSpec(
            case_id=case_id,
            dim=1,
            global_group=GroupDescriptor("O(1) = Z2", _freeze([np.array([[-1.0]])])),
            arm_a=_trivial_arm(1),
            arm_b=_trivial_arm(1),
            detector_axis=Effect.along_axis(1),
        )
    if case_id == "real-d2":
        reflection = np.diag([1.0, -1.0])
        return ModelSpec(
            case_id=case_id,
            dim=2,
            global_group=GroupDescriptor(
                "O(2)", _freeze([plane_rotation(2, 0, 1, np.pi / 2).matrix, reflection])
            ),
            arm_a=_z2_arm(2),
            arm_b=_z2_arm(2),
            detector_axis=Effect.along_axis(2),
        )
    if case_id == "complex-d3":
        return ModelSpec(
            case_id=case_id,
            dim=3,
            global_group=GroupDescriptor("SO(3)", _freeze(_plane_generators(3))),
            arm_a=_planar_arm(3, 1, 2, "SO(2) phase rotations"),
            arm_b=_planar_arm(3, 1, 2, "SO(2) phase rotations"),
            detector_axis=Effect.along_axis(3),
            fringe_family=lambda theta: plane_rotation(3, 1, 2, theta),
        )
    if case_id == "u2-d4":
        return ModelSpec(
            case_id=case_id,
            dim=4,
            global_group=GroupDescriptor("U(2) embedded in SO(4)", _freeze(_u2_global_generators())),
            arm_a=_u2_phase_arm(),
            arm_b=_u2_phase_arm(),
            detector_axis=Effect.along_axis(4),
            fringe_family=u2_phase,
            coordinate_order=U2_COORDINATE_ORDER,
        )
    if case_id == "quaternion-d5":
        return ModelSpec(
            case_id=case_id,
            dim=5,
            global_group=GroupDescriptor("SO(5)", _freeze(_plane_generators(5))),
            arm_a=_isoclinic_arm("left"),
            arm_b=_isoclinic_arm("right"),
            detector_axis=Effect.along_axis(5),
            fringe_family=lambda theta: embed_5(
                left_isoclinic(Quaternion(float(np.cos(theta)), float(np.sin(theta)), 0.0, 0.0))
            ),
        )
    if case_id.startswith("fullstab-d"):
        try:
            dim = int(case_id.removeprefix("fullstab-d"))
        except ValueError:
            raise ValueError(f"unknown model case {case_id!r}") from None
        if dim < 1:
            raise ValueError(f"fullstab dimension must be positive, got {dim}")
        fringe = (lambda theta, d=dim: plane_rotation(d, 1, 2, theta)) if dim >= 3 else None
        return ModelSpec(
            case_id=case_id,
            dim=dim,
            global_group=GroupDescriptor(f"SO({dim})", _freeze(_plane_generators(dim) or [np.eye(1)])),
            arm_a=_stabilizer_arm(dim),
            arm_b=_stabilizer_arm(dim),
            detector_axis=Effect.along_axis(dim),
            fringe_family=fringe,
        )
    raise ValueError(f"unknown model case {case_id!r}")


def draw_sample(spec: ModelSpec, source: str, seed: int, index: int) -> GroupElementSample:
    """Deterministic group-element draw identified by (seed, index)."""
    offsets = {"armA": 0, "armB": 1, "phase": 2, "global": 3}
    if source not in offsets:
        raise ValueError(f"unknown sample source {source!r}")
    rng = np.random.default_rng(subseed(seed, index, offsets[source]))
    if source == "armA":
        element = spec.arm_a.sample(rng)
    elif source == "armB":
        element = spec.arm_b.sample(rng)
    elif source == "phase":
        element = _stabilizer_arm(spec.dim).sample(rng)
    else:
        element = OrthogonalTransform(_haar_matrix(spec.dim, rng))
    return GroupElementSample(element=element, source=source, seed_path=(seed, index))


def transport_to(spec: ModelSpec, target) -> OrthogonalTransform:
    """Global-group element carrying the reference pure state e1 to ``target``."""
    vec = np.asarray(target, dtype=float)
    if vec.shape != (spec.dim,):
        raise ValueError(f"target must be a vector of dimension {spec.dim}")
    if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
        raise ValueError(f"target must be a unit vector, got norm {np.linalg.norm(vec)!r}")
    if spec.case_id == "classical-d1":
        return OrthogonalTransform(np.array([[vec[0]]]))
    if spec.case_id == "u2-d4":
        return _u2_transport(vec)
    return _givens_transport(vec)


def _givens_transport(target: np.ndarray) -> OrthogonalTransform:
    dim = target.size
    c = target[0]
    rest = target.copy()
    rest[0] = 0.0
    s = float(np.linalg.norm(rest))
    if s < 1e-15:
        if c > 0:
            return OrthogonalTransform.identity(dim)
        m = np.eye(dim)
        m[0, 0] = -1.0
        m[1, 1] = -1.0
        return OrthogonalTransform(m)
    u = rest / s
    e1 = np.zeros(dim)
    e1[0] = 1.0
    m = (
        np.eye(dim)
        + (c - 1.0) * (np.outer(e1, e1) + np.outer(u, u))
        + s * (np.outer(u, e1) - np.outer(e1, u))
    )
    return OrthogonalTransform(m)


def _u2_transport(target: np.ndarray) -> OrthogonalTransform:
    perm = np.eye(4)[list(U2_COORDINATE_ORDER)]
    a = target[1] - 1.0j * target[3]
    b = target[0] - 1.0j * target[2]
    unitary = np.array([[-np.conj(b), a], [np.conj(a), b]])
    return OrthogonalTransform(perm @ u2_embed(unitary).matrix @ perm.T)


def _matrix_rows(m: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in m]


def model_to_json_obj(spec: ModelSpec) -> dict:
    """Serializable form of a model case with row-major generator matrices."""

    def group_obj(name: str, generators, extra: dict | None = None) -> dict:
        obj = {"name": name, "generators": [_matrix_rows(g) for g in generators]}
        if extra:
            obj.update(extra)
        return obj

    return {
        "case": spec.case_id,
        "dim": spec.dim,
        "detector_axis": [float(x) for x in spec.detector_axis.axis],
        "global_group": group_obj(spec.global_group.name, spec.global_group.generators),
        "arm_a": group_obj(spec.arm_a.name, spec.arm_a.generators, {"param_count": spec.arm_a.param_count}),
        "arm_b": group_obj(spec.arm_b.name, spec.arm_b.generators, {"param_count": spec.arm_b.param_count}),
    }


def model_from_json_obj(obj: dict) -> ModelSpec:
    """Reload a persisted model case; generator matrices are restored bit-exactly."""
    spec = build_model(str(obj["case"]))
    stored = {
        "global_group": [np.asarray(g, dtype=float) for g in obj["global_group"]["generators"]],
        "arm_a": [np.asarray(g, dtype=float) for g in obj["arm_a"]["generators"]],
        "arm_b": [np.asarray(g, dtype=float) for g in obj["arm_b"]["generators"]],
    }
    rebuilt = ModelSpec(
        case_id=spec.case_id,
        dim=spec.dim,
        global_group=GroupDescriptor(str(obj["global_group"]["name"]), _freeze(stored["global_group"])),
        arm_a=_with_generators(spec.arm_a, stored["arm_a"]),
        arm_b=_with_generators(spec.arm_b, stored["arm_b"]),
        detector_axis=Effect(np.asarray(obj["detector_axis"], dtype=float)),
        fringe_family=spec.fringe_family,
        coordinate_order=spec.coordinate_order,
    )
    return rebuilt


def _with_generators(arm: ArmGroup, generators: list[np.ndarray]) -> ArmGroup:
    return ArmGroup(
        name=arm.name,
        dim=arm.dim,
        generators=_freeze(generators),
        param_count=arm.param_count,
        sample_fn=arm.sample_fn,
        membership_fn=arm.membership_fn,
        elements_fn=arm.elements_fn,
        finite_elements=arm.finite_elements,
    )
