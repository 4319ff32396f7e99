"""Transformation-group constructions and diagnostics.

Haar samplers for O(d)/SO(d) and for detector-axis stabilizers, the
U(2) -> SO(4) real embedding and its one-parameter phase family, quaternionic
left/right isoclinic rotations of SO(4), an isoclinic classifier, and a
numerical Lie-closure dimension used to certify which phase group a pair of
arm groups generates.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .states import Effect, OrthogonalTransform

STABILIZER_TOL = 1e-10
UNIT_TOL = 1e-12


def subseed(seed: int, *path: int) -> np.random.SeedSequence:
    """Derive an independent child seed from (seed, path) deterministically.

    Samples drawn from ``subseed(s, k)`` depend only on ``(s, k)``, never on
    draw order, so parallel scans stay schedule-independent.
    """
    return np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))


def plane_rotation(dim: int, i: int, j: int, theta: float) -> OrthogonalTransform:
    """Rotation by ``theta`` in the (i, j) coordinate plane, 0-based indices.

    Convention: e_i maps to cos(theta) e_i + sin(theta) e_j.
    """
    if i == j or not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"invalid rotation plane ({i}, {j}) for dimension {dim}")
    m = np.eye(dim)
    c, s = np.cos(theta), np.sin(theta)
    m[i, i] = c
    m[j, j] = c
    m[i, j] = -s
    m[j, i] = s
    return OrthogonalTransform(m)


def _haar_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar SO(dim) sample: QR of Gaussians, sign-fixed columns, det forced to +1."""
    if dim == 1:
        return np.eye(1)
    gauss = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gauss)
    signs = np.sign(np.diag(r))
    signs[signs == 0.0] = 1.0
    q = q * signs
    if np.linalg.det(q) < 0:
        q = q.copy()
        q[:, -1] = -q[:, -1]
    return q


def haar_orthogonal(dim: int, seed) -> OrthogonalTransform:
    """Haar-distributed SO(dim) element, deterministic in (dim, seed)."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    return OrthogonalTransform(_haar_matrix(dim, rng))


def _complete_axis_basis(axis: np.ndarray) -> np.ndarray:
    """Orthonormal basis whose first column spans the axis direction."""
    dim = axis.size
    m = np.eye(dim)
    m[:, 0] = axis
    q, _ = np.linalg.qr(m)
    return q


def _coordinate_axis_index(axis: np.ndarray) -> int | None:
    nonzero = np.nonzero(axis)[0]
    if nonzero.size == 1 and abs(axis[nonzero[0]]) == 1.0:
        return int(nonzero[0])
    return None


def haar_stabilizer(dim: int, axis: Effect, seed) -> OrthogonalTransform:
    """Haar sample of the phase group of ``axis``: identity on the axis, SO(dim-1) on its complement.

    For a coordinate axis the result is exactly block diagonal, so the axis is
    fixed with zero residual. Below dim=2 the stabilizer holds only the
    identity, which is returned with a warning.
    """
    if axis.dim != dim:
        raise ValueError(f"axis dimension {axis.dim} does not match {dim}")
    if dim < 2:
        warnings.warn("no nontrivial stabilizer exists below dimension 2; returning identity")
        return OrthogonalTransform.identity(dim)
    rng = np.random.default_rng(seed)
    block = _haar_matrix(dim - 1, rng)
    k = _coordinate_axis_index(axis.axis)
    if k is not None:
        rest = [i for i in range(dim) if i != k]
        m = np.zeros((dim, dim))
        m[k, k] = 1.0
        m[np.ix_(rest, rest)] = block
        return OrthogonalTransform(m)
    basis = _complete_axis_basis(axis.axis)
    full = np.eye(dim)
    full[1:, 1:] = block
    return OrthogonalTransform(basis @ full @ basis.T)


def stabilizer_residual(transform: OrthogonalTransform, axis: Effect) -> float:
    """How far ``transform`` moves the axis; zero certifies phase-group membership."""
    if transform.dim != axis.dim:
        raise ValueError(f"dimension mismatch: transform {transform.dim}, axis {axis.dim}")
    return float(np.linalg.norm(transform.matrix @ axis.axis - axis.axis))


def commutator_defect(t_a: OrthogonalTransform, t_b: OrthogonalTransform) -> float:
    """Frobenius norm of t_a t_b - t_b t_a."""
    if t_a.dim != t_b.dim:
        raise ValueError(f"dimension mismatch: {t_a.dim} vs {t_b.dim}")
    a, b = t_a.matrix, t_b.matrix
    return float(np.linalg.norm(a @ b - b @ a, ord="fro"))


def u2_embed(unitary) -> OrthogonalTransform:
    """Real 4x4 orthogonal image [[Re U, Im U], [-Im U, Re U]] of a 2x2 unitary.

    The map is a group homomorphism, so the embedded matrices form a copy of
    U(2) inside SO(4).
    """
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError("expected a 2x2 complex matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > UNIT_TOL:
        raise ValueError("matrix is not unitary")
    re, im = u.real, u.imag
    return OrthogonalTransform(np.block([[re, im], [-im, re]]))


def u2_phase(theta: float) -> OrthogonalTransform:
    """The d=4 phase family: fixes coordinates 1 and 3, rotates the (2, 4) plane.

    Composition law: u2_phase(a) @ u2_phase(b) == u2_phase(a + b).
    """
    c, s = np.cos(theta), np.sin(theta)
    m = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, 0.0, s],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    return OrthogonalTransform(m)


@dataclass(frozen=True)
class Quaternion:
    """Element of the quaternions over basis (1, i, j, k), Hamilton convention i*j = k."""

    w: float
    x: float
    y: float
    z: float

    def __mul__(self, other: Quaternion) -> Quaternion:
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(np.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2))

    @property
    def is_unit(self) -> bool:
        return abs(self.norm() - 1.0) <= UNIT_TOL

    def normalized(self) -> Quaternion:
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero quaternion")
        return Quaternion(self.w / n, self.x / n, self.y / n, self.z / n)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @classmethod
    def from_array(cls, values) -> Quaternion:
        w, x, y, z = np.asarray(values, dtype=float)
        return cls(float(w), float(x), float(y), float(z))

    @classmethod
    def parse(cls, text: str) -> Quaternion:
        """Parse '1', '-1', 'i', 'j', 'k' or a comma form 'w,x,y,z'."""
        shorthand = {
            "1": cls(1, 0, 0, 0),
            "-1": cls(-1, 0, 0, 0),
            "i": cls(0, 1, 0, 0),
            "j": cls(0, 0, 1, 0),
            "k": cls(0, 0, 0, 1),
            "-i": cls(0, -1, 0, 0),
            "-j": cls(0, 0, -1, 0),
            "-k": cls(0, 0, 0, -1),
        }
        stripped = text.strip()
        if stripped in shorthand:
            return shorthand[stripped]
        parts = stripped.split(",")
        if len(parts) != 4:
            raise ValueError(f"cannot parse quaternion from {text!r}")
        return cls(*(float(p) for p in parts))


def _require_unit(q: Quaternion) -> None:
    if not q.is_unit:
        raise ValueError(f"expected a unit quaternion, got norm {q.norm()!r}")


def _left_matrices(qs: np.ndarray) -> np.ndarray:
    """Batched matrices of x -> q x on R^4 = H; qs has shape (n, 4)."""
    w, x, y, z = qs[:, 0], qs[:, 1], qs[:, 2], qs[:, 3]
    m = np.empty((qs.shape[0], 4, 4))
    m[:, 0, 0], m[:, 0, 1], m[:, 0, 2], m[:, 0, 3] = w, -x, -y, -z
    m[:, 1, 0], m[:, 1, 1], m[:, 1, 2], m[:, 1, 3] = x, w, -z, y
    m[:, 2, 0], m[:, 2, 1], m[:, 2, 2], m[:, 2, 3] = y, z, w, -x
    m[:, 3, 0], m[:, 3, 1], m[:, 3, 2], m[:, 3, 3] = z, -y, x, w
    return m


def _right_matrices(qs: np.ndarray) -> np.ndarray:
    """Batched matrices of x -> x q on R^4 = H; qs has shape (n, 4)."""
    w, x, y, z = qs[:, 0], qs[:, 1], qs[:, 2], qs[:, 3]
    m = np.empty((qs.shape[0], 4, 4))
    m[:, 0, 0], m[:, 0, 1], m[:, 0, 2], m[:, 0, 3] = w, -x, -y, -z
    m[:, 1, 0], m[:, 1, 1], m[:, 1, 2], m[:, 1, 3] = x, w, z, -y
    m[:, 2, 0], m[:, 2, 1], m[:, 2, 2], m[:, 2, 3] = y, -z, w, x
    m[:, 3, 0], m[:, 3, 1], m[:, 3, 2], m[:, 3, 3] = z, y, -x, w
    return m


def left_isoclinic(q: Quaternion) -> OrthogonalTransform:
    """SO(4) rotation acting as quaternion left multiplication x -> q x."""
    _require_unit(q)
    return OrthogonalTransform(_left_matrices(q.to_array()[None, :])[0])


def right_isoclinic(q: Quaternion) -> OrthogonalTransform:
    """SO(4) rotation acting as quaternion right multiplication x -> x q."""
    _require_unit(q)
    return OrthogonalTransform(_right_matrices(q.to_array()[None, :])[0])


def embed_5(rotation: OrthogonalTransform) -> OrthogonalTransform:
    """Lift a 4x4 rotation to the 5-ball equator: block diag(1, rotation)."""
    if rotation.dim != 4:
        raise ValueError(f"expected a 4x4 rotation, got dimension {rotation.dim}")
    m = np.eye(5)
    m[1:, 1:] = rotation.matrix
    return OrthogonalTransform(m)


def haar_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    """Uniform point of the unit quaternion 3-sphere."""
    vec = rng.standard_normal(4)
    return Quaternion.from_array(vec / np.linalg.norm(vec))


@dataclass(frozen=True)
class IsoclinicClass:
    """Classification of a rotation as left/right multiplication, both, or neither."""

    kind: str  # left | right | plus_minus_identity | general
    quaternion: Quaternion | None


def isoclinic_classify(m: OrthogonalTransform, tol: float = 1e-10) -> IsoclinicClass:
    """Decide whether a 4x4 rotation is a left or right quaternion multiplication.

    The candidate quaternion is the image of 1 = (1, 0, 0, 0); a genuine
    left (right) multiplication is reproduced exactly by that image. Only
    +identity and -identity are both.
    """
    if m.dim != 4:
        raise ValueError(f"isoclinic classification requires dimension 4, got {m.dim}")
    if m.det_sign < 0:
        raise ValueError("a reflection (det -1) is not a rotation of SO(4)")
    image = m.matrix[:, 0]
    is_left = float(np.max(np.abs(m.matrix - _left_matrices(image[None, :])[0]))) <= tol
    is_right = float(np.max(np.abs(m.matrix - _right_matrices(image[None, :])[0]))) <= tol
    q = Quaternion.from_array(image)
    if is_left and is_right:
        return IsoclinicClass("plus_minus_identity", q)
    if is_left:
        return IsoclinicClass("left", q)
    if is_right:
        return IsoclinicClass("right", q)
    return IsoclinicClass("general", None)


def _as_algebra_element(value) -> np.ndarray:
    """Convert a generator to an antisymmetric algebra element.

    Antisymmetric matrices pass through; orthogonal matrices go through the
    principal logarithm, which requires no eigenvalue at -1.
    """
    m = value.matrix if isinstance(value, OrthogonalTransform) else np.asarray(value, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("generators must be square matrices")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m + m.T)) <= 1e-10 * scale:
        return (m - m.T) / 2.0
    if np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) <= 1e-9:
        eigenvalues = np.linalg.eigvals(m)
        if np.min(np.abs(eigenvalues + 1.0)) < 1e-8:
            raise ValueError(
                "principal logarithm undefined (eigenvalue at -1); "
                "pass antisymmetric algebra elements directly"
            )
        log = np.real(scipy.linalg.logm(m))
        return (log - log.T) / 2.0
    raise ValueError("generators must be orthogonal matrices or antisymmetric algebra elements")


def _span_basis(vectors: np.ndarray, rel_tol: float) -> np.ndarray:
    """Orthonormal row basis of the span, keeping singular values > rel_tol * max."""
    _, singular, vt = np.linalg.svd(vectors, full_matrices=False)
    if singular.size == 0 or singular[0] == 0.0:
        return np.empty((0, vectors.shape[1]))
    return vt[singular > rel_tol * singular[0]]


def lie_closure_dim(generators: Sequence, rel_tol: float = 1e-8, max_rounds: int = 10) -> int:
    """Dimension of the smallest bracket-closed linear span of the generators.

    Alternates span completion with pairwise commutators of the current basis
    until the numerical rank stabilizes; fails loudly if it has not after
    ``max_rounds`` rounds.
    """
    if len(generators) == 0:
        raise ValueError("need at least one generator")
    elements = [_as_algebra_element(g) for g in generators]
    dim = elements[0].shape[0]
    if any(e.shape != (dim, dim) for e in elements):
        raise ValueError("all generators must share one dimension")
    basis = _span_basis(np.stack([e.ravel() for e in elements]), rel_tol)
    for _ in range(max_rounds):
        mats = basis.reshape(-1, dim, dim)
        brackets = [
            (mats[i] @ mats[j] - mats[j] @ mats[i]).ravel()
            for i in range(len(mats))
            for j in range(i + 1, len(mats))
        ]
        stacked = np.vstack([basis, *[b[None, :] for b in brackets]]) if brackets else basis
        new_basis = _span_basis(stacked, rel_tol)
        if new_basis.shape[0] == basis.shape[0]:
            return int(basis.shape[0])
        basis = new_basis
    raise RuntimeError(f"Lie closure did not stabilize within {max_rounds} rounds")
