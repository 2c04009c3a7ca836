"""Equations of motion and conserved quantities for n bodies on a quadric.

With the signed inner product of the ambient space written as a dot, each
body obeys

    qdd_i = sum_{j != i} m_j (q_j - sigma (q_i . q_j) q_i)
            / (sigma - sigma (q_i . q_j)^2)^{3/2}
          - sigma (qd_i . qd_i) q_i,

subject to q_i . q_i = sigma and q_i . qd_i = 0.  The pairwise sum is the
tangential gradient of the force function

    U = sum_{i<j} sigma m_i m_j (q_i . q_j) / (sigma - sigma (q_i . q_j)^2)^{1/2}

divided by m_i, and the final term is the normal (constraint) reaction.

The kinetic energy keeps its curvature factor, T = 1/2 sum m_i
(qd_i . qd_i)(sigma q_i . q_i), which is 1 on the quadric in both signs.
Total energy is h = T - U.  Angular momenta are the coordinate-plane
scalars c_ab = sum_i m_i (a_i bd_i - b_i ad_i), one per unordered pair of
ambient coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import SingularPairError
from .geometry import (
    DEFAULT_CONSTRAINT_TOL,
    DEFAULT_SINGULARITY_TOL,
    SingularityKind,
    SpaceSpec,
    inner,
    metric_signs,
    validate_point,
    validate_tangent,
)


@dataclass(frozen=True)
class Body:
    """One point mass: mass > 0, position on the quadric, tangent velocity."""

    mass: float
    position: np.ndarray
    velocity: np.ndarray


@dataclass
class SystemState:
    """Masses, positions and velocities of all bodies at one instant.

    positions and velocities are arrays of shape (n, ambient_dim); row i
    belongs to body i.  The plain constructor performs no checks (the
    integrator builds many transient states); use `create` or
    `from_bodies` to validate inputs.
    """

    space: SpaceSpec
    masses: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    time: float = 0.0

    @classmethod
    def create(cls, space: SpaceSpec, masses, positions, velocities, time: float = 0.0,
               constraint_tol: float = DEFAULT_CONSTRAINT_TOL,
               singularity_tol: float = DEFAULT_SINGULARITY_TOL) -> "SystemState":
        """Validated construction: shapes, constraints, and pair regularity."""
        masses = np.asarray(masses, dtype=float)
        positions = np.asarray(positions, dtype=float)
        velocities = np.asarray(velocities, dtype=float)
        n = masses.shape[0]
        if n < 2:
            raise ValueError("need at least two bodies")
        if positions.shape != (n, space.ambient_dim) or velocities.shape != positions.shape:
            raise ValueError(
                f"expected positions/velocities of shape ({n}, {space.ambient_dim})"
            )
        if np.any(masses <= 0):
            raise ValueError("masses must be positive")
        validate_point(positions, space, tol=constraint_tol)
        validate_tangent(positions, velocities, space, tol=constraint_tol)
        state = cls(space, masses, positions, velocities, float(time))
        pair = state.singular_pair(tol=singularity_tol)
        if pair is not None:
            i, j, kind = pair
            raise SingularPairError(i, j, kind)
        return state

    @classmethod
    def from_bodies(cls, space: SpaceSpec, bodies, time: float = 0.0) -> "SystemState":
        masses = [b.mass for b in bodies]
        positions = [b.position for b in bodies]
        velocities = [b.velocity for b in bodies]
        return cls.create(space, masses, positions, velocities, time)

    @property
    def n_bodies(self) -> int:
        return len(self.masses)

    @property
    def bodies(self) -> list[Body]:
        return [Body(float(m), p.copy(), v.copy())
                for m, p, v in zip(self.masses, self.positions, self.velocities)]

    def copy(self) -> "SystemState":
        return SystemState(self.space, self.masses.copy(), self.positions.copy(),
                           self.velocities.copy(), self.time)

    def singular_pair(self, tol: float = DEFAULT_SINGULARITY_TOL):
        """Return (i, j, kind) for the closest-to-singular pair, or None."""
        return _closest_singular_pair(self.positions, self.space, tol)


def pair_inner_matrix(state: SystemState) -> np.ndarray:
    """Signed inner products of all position pairs, shape (n, n)."""
    g = metric_signs(state.space)
    return (state.positions * g) @ state.positions.T


def _closest_singular_pair(positions: np.ndarray, space: SpaceSpec, tol: float):
    g = metric_signs(space)
    d = (positions * g) @ positions.T
    sigma = space.sigma
    base = sigma - sigma * d * d
    n = len(positions)
    ii, jj = np.triu_indices(n, k=1)
    bases = base[ii, jj]
    k = int(np.argmin(bases))
    if bases[k] >= tol:
        return None
    i, j = int(ii[k]), int(jj[k])
    dij = d[i, j]
    if sigma > 0 and abs(dij + 1.0) < abs(dij - 1.0):
        kind = SingularityKind.ANTIPODAL
    else:
        kind = SingularityKind.COLLISION
    return i, j, kind


def _acceleration_arrays(masses: np.ndarray, positions: np.ndarray,
                         velocities: np.ndarray, space: SpaceSpec,
                         singularity_tol: float = DEFAULT_SINGULARITY_TOL
                         ) -> tuple[np.ndarray, np.ndarray]:
    """Core acceleration kernel on raw arrays.

    Returns (gravitational_part, full_acceleration).  Every ordered pair is
    accumulated independently; the force (anti)symmetry is deliberately not
    exploited, so symmetry in the output is evidence, not construction.
    """
    sigma = space.sigma
    g = metric_signs(space)
    d = (positions * g) @ positions.T
    base = sigma - sigma * d * d
    n = len(masses)
    off = ~np.eye(n, dtype=bool)
    if np.any(base[off] < singularity_tol):
        pair = _closest_singular_pair(positions, space, singularity_tol)
        if pair is not None:
            raise SingularPairError(*pair)
        raise SingularPairError(0, 1, SingularityKind.COLLISION)  # pragma: no cover
    np.fill_diagonal(base, 1.0)  # diagonal base is identically zero; mask it out
    w = np.where(off, masses[None, :] / base ** 1.5, 0.0)
    grav = w @ positions - sigma * (w * d).sum(axis=1)[:, None] * positions
    v2 = inner(velocities, velocities, space)
    full = grav - sigma * v2[:, None] * positions
    return grav, full


def acceleration(state: SystemState,
                 singularity_tol: float = DEFAULT_SINGULARITY_TOL) -> np.ndarray:
    """Accelerations of all bodies, shape (n, ambient_dim).

    Raises SingularPairError when any pair's denominator base
    sigma - sigma (q_i . q_j)^2 falls below singularity_tol.
    """
    _, full = _acceleration_arrays(state.masses, state.positions, state.velocities,
                                   state.space, singularity_tol)
    return full


def gravitational_acceleration(state: SystemState,
                               singularity_tol: float = DEFAULT_SINGULARITY_TOL
                               ) -> np.ndarray:
    """Only the pairwise sum term (the tangential gradient of U over m_i)."""
    grav, _ = _acceleration_arrays(state.masses, state.positions, state.velocities,
                                   state.space, singularity_tol)
    return grav


def force_function(state: SystemState) -> float:
    """The potential-like function U (cotangent on the sphere, coth-like on H)."""
    sigma = state.space.sigma
    d = pair_inner_matrix(state)
    n = state.n_bodies
    ii, jj = np.triu_indices(n, k=1)
    dij = d[ii, jj]
    mm = state.masses[ii] * state.masses[jj]
    return float(np.sum(sigma * mm * dij / np.sqrt(sigma - sigma * dij * dij)))


def kinetic_energy(state: SystemState) -> float:
    v2 = inner(state.velocities, state.velocities, state.space)
    q2 = inner(state.positions, state.positions, state.space)
    return float(0.5 * np.sum(state.masses * v2 * (state.space.sigma * q2)))


def total_energy(state: SystemState) -> float:
    """h = T - U, conserved along solutions."""
    return kinetic_energy(state) - force_function(state)


def momentum_planes(space: SpaceSpec) -> list[str]:
    """Coordinate-plane labels, e.g. ['wx', 'wy', 'wz', 'xy', 'xz', 'yz'] in 4d."""
    names = space.coordinate_names
    return [names[a] + names[b]
            for a in range(len(names)) for b in range(a + 1, len(names))]


def angular_momentum(state: SystemState) -> dict[str, float]:
    """All coordinate-plane angular momenta c_ab = sum m (a bd - b ad)."""
    names = state.space.coordinate_names
    out = {}
    q, v, m = state.positions, state.velocities, state.masses
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            out[names[a] + names[b]] = float(np.sum(m * (q[:, a] * v[:, b] - q[:, b] * v[:, a])))
    return out


def eom_residual(state: SystemState, claimed_accelerations) -> float:
    """Max-norm gap between the true acceleration field and a claim.

    Zero (to rounding) exactly when the claimed accelerations satisfy the
    equations of motion at this state.
    """
    claimed = np.asarray(claimed_accelerations, dtype=float)
    if claimed.shape != state.positions.shape:
        raise ValueError(f"claimed accelerations must have shape {state.positions.shape}")
    return float(np.abs(acceleration(state) - claimed).max())


def transform(state: SystemState, matrix: np.ndarray) -> SystemState:
    """Apply a linear isometry of the ambient space to a state."""
    matrix = np.asarray(matrix, dtype=float)
    return replace(state,
                   positions=state.positions @ matrix.T,
                   velocities=state.velocities @ matrix.T)
