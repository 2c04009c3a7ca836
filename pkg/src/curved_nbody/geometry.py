"""Constant-curvature ambient spaces and their signed linear algebra.

Four spaces are supported, each realized as a unit quadric inside a real
vector space equipped with a signed inner product:

* the sphere S2 in R^3 and S3 in R^4, with the Euclidean product and
  curvature sign sigma = +1 (points satisfy q . q = +1);
* the hyperbolic plane H2 in R^(2,1) and H3 in R^(3,1), with a Lorentz
  product whose minus sign sits on the LAST coordinate, curvature sign
  sigma = -1 (points satisfy q . q = -1, upper sheet, last coordinate > 0).

Coordinates are ordered (x, y, z) in three dimensions and (w, x, y, z) in
four, so "the last coordinate" is always z.  All functions accept either a
single vector of shape (dim,) or a batch of shape (..., dim).

Tangency means q . v = 0 in the signed product.  Tangent vectors on the
hyperboloid are spacelike, so kinetic terms stay positive in both signs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError, DimensionMismatchError

# Pairs closer than this (in inner-product distance from the singular
# values) are treated as collisions / antipodal pairs by default.
DEFAULT_SINGULARITY_TOL = 1e-9

# Constraint checks in factories accept states up to this residual.
DEFAULT_CONSTRAINT_TOL = 1e-9


class SingularityKind(enum.Enum):
    NONE = "none"
    COLLISION = "collision"
    ANTIPODAL = "antipodal"


@dataclass(frozen=True)
class SpaceSpec:
    """Ambient space descriptor.

    Attributes:
        ambient_dim: 3 or 4, the dimension of the embedding vector space.
        sigma: +1 for the sphere, -1 for the hyperboloid.
    """

    ambient_dim: int
    sigma: int

    def __post_init__(self):
        if self.ambient_dim not in (3, 4):
            raise ValueError(f"ambient_dim must be 3 or 4, got {self.ambient_dim}")
        if self.sigma not in (1, -1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")

    @property
    def name(self) -> str:
        rank = self.ambient_dim - 1
        return f"S{rank}" if self.sigma > 0 else f"H{rank}"

    @property
    def coordinate_names(self) -> tuple[str, ...]:
        return ("x", "y", "z") if self.ambient_dim == 3 else ("w", "x", "y", "z")

    def __str__(self) -> str:
        return self.name


S2 = SpaceSpec(3, +1)
S3 = SpaceSpec(4, +1)
H2 = SpaceSpec(3, -1)
H3 = SpaceSpec(4, -1)

_BY_NAME = {"S2": S2, "S3": S3, "H2": H2, "H3": H3}


def space_from_name(name: str) -> SpaceSpec:
    try:
        return _BY_NAME[name.upper()]
    except KeyError:
        raise ValueError(f"unknown space {name!r}, expected one of {sorted(_BY_NAME)}")


def metric_signs(space: SpaceSpec) -> np.ndarray:
    """Diagonal of the signed metric: all ones, except -1 last for sigma=-1."""
    g = np.ones(space.ambient_dim)
    if space.sigma < 0:
        g[-1] = -1.0
    return g


def _check_dim(v: np.ndarray, space: SpaceSpec) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != space.ambient_dim:
        raise DimensionMismatchError(
            f"expected last axis {space.ambient_dim} for {space.name}, got shape {v.shape}"
        )
    return v


def inner(u, v, space: SpaceSpec):
    """Signed inner product along the last axis.

    Euclidean for sigma=+1; Lorentz with the minus sign on the last
    coordinate for sigma=-1.  Broadcasts like an ordinary dot product.
    """
    u = _check_dim(u, space)
    v = _check_dim(v, space)
    prod = u * v
    if space.sigma < 0:
        return prod[..., :-1].sum(axis=-1) - prod[..., -1]
    return prod.sum(axis=-1)


def constraint_residual(p, space: SpaceSpec):
    """How far p sits from the quadric: inner(p, p) - sigma."""
    return inner(p, p, space) - space.sigma


def project_point(p, space: SpaceSpec) -> np.ndarray:
    """Rescale p onto the quadric (and onto the upper sheet for sigma=-1).

    Raises DegeneratePointError when inner(p, p) is within 1e-12 of zero or
    has the wrong sign for the space, since no rescaling can fix that.
    """
    p = _check_dim(p, space)
    n2 = inner(p, p, space)
    bad = (np.abs(n2) < 1e-12) | (np.sign(n2) != space.sigma)
    if np.any(bad):
        raise DegeneratePointError(
            "self inner product is zero or has the wrong sign; cannot rescale"
        )
    q = p / np.sqrt(np.abs(n2))[..., None]
    if space.sigma < 0:
        # upper sheet: flip any vector that landed with z < 0
        flip = q[..., -1] < 0
        q = np.where(flip[..., None], -q, q)
    return q


def project_state(p, v, space: SpaceSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return (p', v') with p' on the quadric and v' tangent at p'.

    The position is rescaled by 1/sqrt(|inner(p, p)|); the velocity then
    loses its normal component, v' = v - sigma * inner(p', v) * p'.  With
    sigma^2 = 1 this makes inner(p', v') vanish identically.
    """
    v = _check_dim(v, space)
    q = project_point(p, space)
    vt = v - space.sigma * inner(q, v, space)[..., None] * q
    return q, vt


def pair_singularity(qi, qj, space: SpaceSpec,
                     tol: float = DEFAULT_SINGULARITY_TOL) -> SingularityKind:
    """Classify the configuration of one pair of on-quadric points.

    Collision when inner(qi, qj) is within tol of sigma; antipodal (sphere
    only) when it is within tol of -1.  Both make the interaction
    denominator base sigma - sigma * inner^2 vanish.
    """
    d = float(inner(qi, qj, space))
    if abs(d - space.sigma) < tol:
        return SingularityKind.COLLISION
    if space.sigma > 0 and abs(d + 1.0) < tol:
        return SingularityKind.ANTIPODAL
    return SingularityKind.NONE


def validate_point(p, space: SpaceSpec, tol: float = DEFAULT_CONSTRAINT_TOL) -> np.ndarray:
    """Check that p lies on the quadric (and on the upper sheet for sigma=-1)."""
    p = _check_dim(p, space)
    res = np.abs(constraint_residual(p, space))
    if np.any(res > tol):
        raise ValueError(f"point off the {space.name} quadric, residual {res.max():.3e}")
    if space.sigma < 0 and np.any(p[..., -1] <= 0):
        raise ValueError("hyperboloid point must lie on the upper sheet (z > 0)")
    return p


def validate_tangent(p, v, space: SpaceSpec, tol: float = DEFAULT_CONSTRAINT_TOL) -> np.ndarray:
    """Check that v is tangent to the quadric at p."""
    v = _check_dim(v, space)
    res = np.abs(inner(p, v, space))
    if np.any(res > tol):
        raise ValueError(f"velocity not tangent, inner(p, v) = {res.max():.3e}")
    return v


def random_isometry(space: SpaceSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw a linear isometry of the signed product (sheet-preserving).

    For the sphere this is a Haar-ish orthogonal matrix from a QR
    factorization.  For the hyperboloid it is rotation * boost * rotation,
    where rotations act on the spatial block and the boost mixes the first
    spatial coordinate with the timelike one (rapidity in [-1.5, 1.5]),
    which keeps the upper sheet fixed.
    """
    n = space.ambient_dim
    if space.sigma > 0:
        mat, _ = np.linalg.qr(rng.standard_normal((n, n)))
        return mat

    def spatial_rotation() -> np.ndarray:
        block, _ = np.linalg.qr(rng.standard_normal((n - 1, n - 1)))
        out = np.eye(n)
        out[: n - 1, : n - 1] = block
        return out

    rapidity = rng.uniform(-1.5, 1.5)
    boost = np.eye(n)
    boost[0, 0] = boost[-1, -1] = np.cosh(rapidity)
    boost[0, -1] = boost[-1, 0] = np.sinh(rapidity)
    return spatial_rotation() @ boost @ spatial_rotation()
