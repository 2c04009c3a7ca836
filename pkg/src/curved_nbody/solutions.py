"""Special-solution families for four bodies on the curvature quadrics.

Each family is a parametrized configuration whose shape is a rectangle (or
a degenerate relative of one) and whose motion, if any, is built from
rotations of the ambient space:

* an isosceles trapezoid at rest on a great circle of S2, the candidate
  configuration for a fixed point;
* a rectangle rigidly rotating in the x-y plane of S2 or H2 at a
  caller-chosen rate (a relative equilibrium candidate);
* a pulsating rectangle on S3 carried by one circular rotation, with the
  transverse coordinates sharing a fixed direction (y proportional to z);
* a rigidly double-rotating rectangle on S3 (two circular rotations);
* the hyperbolic counterparts on H3: one circular rotation with pulsation
  (z proportional to y), one boost-carried rigid family, and the combined
  circular-plus-boost rigid family.

Factories named make_* return validated full states for integration.
Functions named lift_* realize a family configuration as a LiftedState
without raising on degeneracies, so parameter scans can walk across
singular slices and report them; the lift carries the closed-form pair
products and, for the pulsating families, the acceleration the family
equations predict.

The pulsating families reduce to one degree of freedom.  Their transverse
coordinate obeys nu_dot = F(x) * x; two equivalent forms of F are
provided, one eliminating the radial rate through conserved energy and one
keeping the rate explicitly.  Both appear because their agreement along a
trajectory is itself a useful consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dynamics import SystemState
from .errors import AntipodalConfigurationError
from .geometry import (
    DEFAULT_SINGULARITY_TOL,
    H2,
    H3,
    S2,
    S3,
    SingularityKind,
    SpaceSpec,
    pair_singularity,
)

PAIR_KEYS = ("12", "13", "14", "23", "24", "34")

# complementary pair couples of a four-body rectangle
_COUPLES = (("12", "34"), ("13", "24"), ("14", "23"))


@dataclass
class LiftedState:
    """A family configuration realized in the full phase space.

    pair_inners holds the closed-form pair products keyed by body index
    pairs "12" .. "34".  accel_claim is the acceleration of every body
    that the family equations predict, or None for the rigid families
    (their shape carries no rate to claim).  singular_pairs lists
    degenerate pairs instead of raising, so scans can step across a
    singular slice and report it.
    """

    state: SystemState
    pair_inners: dict[str, float]
    accel_claim: Optional[np.ndarray]
    singular_pairs: list[tuple[int, int, SingularityKind]]

    @property
    def is_singular(self) -> bool:
        return bool(self.singular_pairs)


@dataclass(frozen=True)
class ReducedFamily:
    """One-degree-of-freedom form of a pulsating family.

    The transverse coordinate x obeys x_dot = nu, nu_dot = rate(x, nu).
    rate_from freezes whatever constants the rate needs (for the
    energy-eliminated form, the energy of the starting point) and returns
    the closed rate function.  admissible tests the open domain on which
    the configuration exists; leaving it is a domain exit, not an error in
    the step itself.
    """

    label: str
    rate_from: Callable[[float, float], Callable[[float, float], float]]
    admissible: Callable[[float], bool]
    lift: Callable[[float, float, float], "LiftedState"]


def _pair_flags(positions: np.ndarray, space: SpaceSpec,
                tol: float = DEFAULT_SINGULARITY_TOL):
    out = []
    n = len(positions)
    for i in range(n):
        for j in range(i + 1, n):
            kind = pair_singularity(positions[i], positions[j], space, tol)
            if kind is not SingularityKind.NONE:
                out.append((i, j, kind))
    return out


def is_proper_rectangle(pair_inners: dict[str, float], space: SpaceSpec,
                        tol: float = DEFAULT_SINGULARITY_TOL) -> bool:
    """Whether the pair products describe a nondegenerate rectangle.

    Complementary pairs must agree, no pair may be singular, and the
    diagonal couple (the farthest one; least inner product in both signs)
    must be strictly farther than both side couples.
    """
    vals = []
    for k1, k2 in _COUPLES:
        a, b = pair_inners[k1], pair_inners[k2]
        if abs(a - b) > 1e-9:
            return False
        if abs(a - space.sigma) < tol:
            return False
        if space.sigma > 0 and abs(a + 1.0) < tol:
            return False
        vals.append(a)
    vals.sort()
    return vals[0] < vals[1] - 1e-12


# -- trapezoid at rest on a great circle of S2 --------------------------------

@dataclass(frozen=True)
class TrapezoidFixedPoint:
    """Isosceles trapezoid on the great circle z = 0 of S2, at rest.

    Bodies 1 and 2 sit at polar angles alpha and pi - alpha with mass
    mass_upper each; bodies 3 and 4 at beta and pi - beta (lower
    half-circle) with mass_lower each.  alpha lies in (0, pi/2), beta in
    (pi, 3*pi/2); beta = alpha + pi would put bodies 1, 3 (and 2, 4) at
    antipodes, where the interaction is undefined.
    """

    alpha: float
    beta: float
    mass_upper: float = 1.0
    mass_lower: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < np.pi / 2:
            raise ValueError(f"alpha must lie in (0, pi/2), got {self.alpha}")
        if not np.pi < self.beta < 1.5 * np.pi:
            raise ValueError(f"beta must lie in (pi, 3*pi/2), got {self.beta}")
        if self.mass_upper <= 0 or self.mass_lower <= 0:
            raise ValueError("masses must be positive")
        if abs(self.beta - self.alpha - np.pi) < 1e-9:
            raise AntipodalConfigurationError(
                "beta = alpha + pi puts two body pairs at antipodes"
            )


def make_trapezoid_fixed_point(p: TrapezoidFixedPoint) -> SystemState:
    a, b = p.alpha, p.beta
    positions = np.array([
        [np.cos(a), np.sin(a), 0.0],
        [-np.cos(a), np.sin(a), 0.0],
        [np.cos(b), np.sin(b), 0.0],
        [-np.cos(b), np.sin(b), 0.0],
    ])
    masses = np.array([p.mass_upper, p.mass_upper, p.mass_lower, p.mass_lower])
    return SystemState.create(S2, masses, positions, np.zeros((4, 3)))


# -- rigidly rotating rectangle in the x-y plane of S2 / H2 -------------------

@dataclass(frozen=True)
class RectangleRelEq2D:
    """Equal masses on a rectangle spinning rigidly about the z axis.

    The corners sit at plane angles half_angle, pi - half_angle,
    pi + half_angle and -half_angle on the circle of radius `radius`
    (half_angle = pi/4 makes the rectangle a square).  omega is the spin
    rate chosen by the caller; this module never solves for it, so
    unbalanced rectangles can be built on purpose.
    """

    space: SpaceSpec
    radius: float
    omega: float
    half_angle: float = np.pi / 4
    mass: float = 1.0

    def __post_init__(self):
        if self.space.ambient_dim != 3:
            raise ValueError("the rigidly rotating rectangle lives on S2 or H2")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if not 0.0 < self.half_angle < np.pi / 2:
            raise ValueError("half_angle must lie in (0, pi/2)")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.space.sigma > 0 and self.radius >= 1.0:
            raise ValueError("on S2 the circle radius must be below 1")


def rectangle_pair_products(p: RectangleRelEq2D) -> dict[str, float]:
    sigma = p.space.sigma
    r2 = p.radius**2
    d12 = sigma - 2.0 * r2 * np.cos(p.half_angle) ** 2
    d13 = sigma - 2.0 * r2
    d14 = sigma - 2.0 * r2 * np.sin(p.half_angle) ** 2
    return {"12": d12, "13": d13, "14": d14, "23": d14, "24": d13, "34": d12}


def make_rectangle_releq_2d(p: RectangleRelEq2D) -> SystemState:
    sigma = p.space.sigma
    r = p.radius
    last = np.sqrt(1.0 - sigma * r * r)
    a = p.half_angle
    angles = np.array([a, np.pi - a, np.pi + a, -a])
    q = np.stack([r * np.cos(angles), r * np.sin(angles), np.full(4, last)], axis=1)
    v = p.omega * np.stack([-q[:, 1], q[:, 0], np.zeros(4)], axis=1)
    return SystemState.create(p.space, np.full(4, p.mass), q, v)


def rectangle_equilibrium_spin_sq(space: SpaceSpec, radius: float,
                                  mass: float = 1.0) -> float:
    """Spin rate squared that balances the SQUARE (half_angle = pi/4)."""
    sigma = space.sigma
    d_side = sigma - radius**2
    d_diag = sigma - 2.0 * radius**2
    base_side = sigma - sigma * d_side**2
    base_diag = sigma - sigma * d_diag**2
    return 2.0 * mass * (base_side**-1.5 + base_diag**-1.5)


# -- pulsating rectangle on S3, one circular rotation -------------------------

@dataclass(frozen=True)
class PositiveElliptic:
    """Rectangle on S3 carried by one rotation in the w-x plane.

    Bodies carry equal mass and phases alpha + {0, theta, pi, theta + pi}
    on the circle of radius r(t) in the w-x plane; the remaining
    coordinates are shared, with y = gamma * z.  The circle radius is
    slaved to z through r^2 = 1 - (gamma^2 + 1) z^2, so z ranges over the
    open interval (0, 1/sqrt(gamma^2 + 1)).  momentum is the conserved
    w-x plane angular momentum; the rotation rate is
    momentum / (4 * mass * r^2).
    """

    mass: float
    gamma: float
    theta: float
    z0: float
    nu0: float
    momentum: float
    alpha0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if not 0.0 < self.theta < np.pi:
            raise ValueError("theta must lie in (0, pi); the ends are collisions")

    @property
    def dispersion(self) -> float:
        """gamma^2 + 1, the factor tying z to the circle radius."""
        return self.gamma**2 + 1.0


def positive_elliptic_interval(p: PositiveElliptic) -> tuple[float, float]:
    """Open z-interval on which the configuration exists.

    At the left end the bodies reach a great circle and the diagonal pairs
    become antipodal; at the right end the circle collapses to a point.
    """
    return 0.0, 1.0 / np.sqrt(p.dispersion)


def positive_elliptic_pair_products(p: PositiveElliptic, z: float) -> dict[str, float]:
    dz2 = p.dispersion * z * z
    c = np.cos(p.theta)
    e12 = (1.0 - dz2) * c + dz2
    e13 = -1.0 + 2.0 * dz2
    e14 = (-1.0 + dz2) * c + dz2
    return {"12": e12, "13": e13, "14": e14, "23": e14, "24": e13, "34": e12}


def _pe_partner_products(p: PositiveElliptic, z: float) -> tuple[float, float, float]:
    e = positive_elliptic_pair_products(p, z)
    return e["12"], e["13"], e["14"]


def positive_elliptic_energy(p: PositiveElliptic, z: float, nu: float) -> float:
    """Total energy of the lifted configuration, in closed form."""
    r2 = 1.0 - p.dispersion * z * z
    partners = _pe_partner_products(p, z)
    u = sum(e / np.sqrt(1.0 - e * e) for e in partners)
    return (2.0 * p.mass * p.dispersion * nu * nu / r2
            + p.momentum**2 / (8.0 * p.mass * r2)
            - 2.0 * p.mass**2 * u)


def positive_elliptic_rate_velocity_form(p: PositiveElliptic, z: float,
                                         nu: float) -> float:
    """Pulsation coefficient F with the transverse rate kept explicit."""
    r2 = 1.0 - p.dispersion * z * z
    s = sum((1.0 - e) / (1.0 - e * e) ** 1.5 for e in _pe_partner_products(p, z))
    return (p.mass * s - p.dispersion * nu * nu / r2
            - p.momentum**2 / (16.0 * p.mass**2 * r2))


def positive_elliptic_rate_energy_form(p: PositiveElliptic, z: float,
                                       energy: float) -> float:
    """Pulsation coefficient F with the rate eliminated through the energy."""
    s = sum((1.0 - 2.0 * e + e**3) / (1.0 - e * e) ** 1.5
            for e in _pe_partner_products(p, z))
    return p.mass * s - energy / (2.0 * p.mass)


def positive_elliptic_equilibrium_momentum_sq(p: PositiveElliptic, z: float) -> float:
    """Squared momentum that pins the pulsation at rest radius r(z)."""
    r2 = 1.0 - p.dispersion * z * z
    s = sum((1.0 - e) / (1.0 - e * e) ** 1.5 for e in _pe_partner_products(p, z))
    return 16.0 * p.mass**3 * r2 * s


def lift_positive_elliptic(p: PositiveElliptic, z: float, nu: float,
                           alpha: float) -> LiftedState:
    lo, hi = positive_elliptic_interval(p)
    if not lo < z < hi:
        raise ValueError(f"z = {z} outside the admissible interval ({lo}, {hi:.6g})")
    d = p.dispersion
    r2 = 1.0 - d * z * z
    r = np.sqrt(r2)
    rdot = -d * z * nu / r
    adot = p.momentum / (4.0 * p.mass * r2)

    phases = alpha + np.array([0.0, p.theta, np.pi, p.theta + np.pi])
    cosp, sinp = np.cos(phases), np.sin(phases)
    q = np.stack([r * cosp, r * sinp,
                  np.full(4, p.gamma * z), np.full(4, z)], axis=1)
    v = np.stack([rdot * cosp - r * sinp * adot,
                  rdot * sinp + r * cosp * adot,
                  np.full(4, p.gamma * nu), np.full(4, nu)], axis=1)

    nudot = positive_elliptic_rate_velocity_form(p, z, nu) * z
    rddot = -d * (nu * nu + z * nudot) / r - d * d * z * z * nu * nu / r**3
    addot = -2.0 * rdot * adot / r
    acc = np.stack([
        (rddot - r * adot**2) * cosp - (2.0 * rdot * adot + r * addot) * sinp,
        (rddot - r * adot**2) * sinp + (2.0 * rdot * adot + r * addot) * cosp,
        np.full(4, p.gamma * nudot), np.full(4, nudot),
    ], axis=1)

    state = SystemState(S3, np.full(4, p.mass), q, v)
    return LiftedState(state, positive_elliptic_pair_products(p, z), acc,
                       _pair_flags(q, S3))


def make_positive_elliptic(p: PositiveElliptic) -> SystemState:
    lifted = lift_positive_elliptic(p, p.z0, p.nu0, p.alpha0)
    s = lifted.state
    return SystemState.create(s.space, s.masses, s.positions, s.velocities)


def positive_elliptic_reduced_family(p: PositiveElliptic) -> ReducedFamily:
    lo, hi = positive_elliptic_interval(p)

    def rate_from(z0: float, nu0: float):
        energy = positive_elliptic_energy(p, z0, nu0)

        def rate(z: float, nu: float) -> float:
            return positive_elliptic_rate_energy_form(p, z, energy) * z

        return rate

    return ReducedFamily(
        label="z",
        rate_from=rate_from,
        admissible=lambda z: lo < z < hi,
        lift=lambda z, nu, alpha: lift_positive_elliptic(p, z, nu, alpha),
    )


# -- rigid double rotation on S3 ----------------------------------------------

@dataclass(frozen=True)
class PositiveEllipticElliptic:
    """Four equal masses carried rigidly by two rotations of S3.

    Bodies 1, 2 share the phase pair (0, 0) and (0, pi); bodies 3, 4 sit
    at (phase_first, phase_second) and (phase_first, phase_second + pi).
    The first rotation acts in the w-x plane on a circle of radius
    `radius`, the second in the y-z plane on the complementary circle.
    Rates are caller-chosen; the shape never changes, so the lift claims
    no acceleration.
    """

    mass: float
    radius: float
    phase_first: float
    phase_second: float
    rate_first: float = 0.0
    rate_second: float = 0.0
    alpha0: float = 0.0
    beta0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if not 0.0 < self.radius < 1.0:
            raise ValueError("radius must lie in (0, 1)")


def double_rotation_pair_products(p: PositiveEllipticElliptic) -> dict[str, float]:
    r2 = p.radius**2
    rho2 = 1.0 - r2
    e12 = 2.0 * r2 - 1.0
    e13 = r2 * np.cos(p.phase_first) + rho2 * np.cos(p.phase_second)
    e14 = r2 * np.cos(p.phase_first) - rho2 * np.cos(p.phase_second)
    return {"12": e12, "13": e13, "14": e14, "23": e14, "24": e13, "34": e12}


def lift_positive_elliptic_elliptic(p: PositiveEllipticElliptic, alpha: float,
                                    beta: float) -> LiftedState:
    r = p.radius
    rho = np.sqrt(1.0 - r * r)
    pa = alpha + np.array([0.0, 0.0, p.phase_first, p.phase_first])
    pb = beta + np.array([0.0, np.pi, p.phase_second, p.phase_second + np.pi])
    q = np.stack([r * np.cos(pa), r * np.sin(pa),
                  rho * np.cos(pb), rho * np.sin(pb)], axis=1)
    v = np.stack([-r * np.sin(pa) * p.rate_first, r * np.cos(pa) * p.rate_first,
                  -rho * np.sin(pb) * p.rate_second, rho * np.cos(pb) * p.rate_second],
                 axis=1)
    state = SystemState(S3, np.full(4, p.mass), q, v)
    return LiftedState(state, double_rotation_pair_products(p), None,
                       _pair_flags(q, S3))


def make_positive_elliptic_elliptic(p: PositiveEllipticElliptic) -> SystemState:
    lifted = lift_positive_elliptic_elliptic(p, p.alpha0, p.beta0)
    s = lifted.state
    return SystemState.create(s.space, s.masses, s.positions, s.velocities)


# -- pulsating rectangle on H3, one circular rotation -------------------------

@dataclass(frozen=True)
class NegativeElliptic:
    """Rectangle on H3 carried by one rotation in the w-x plane.

    The hyperbolic counterpart of the pulsating family above: equal
    masses, phases alpha + {0, theta, pi, theta + pi}, shared transverse
    coordinates with z = gamma * y this time (z is the timelike one).
    The circle radius follows r^2 = (gamma^2 - 1) y^2 - 1, so gamma must
    exceed 1 and y must stay above 1/sqrt(gamma^2 - 1).
    """

    mass: float
    gamma: float
    theta: float
    y0: float
    nu0: float
    momentum: float
    alpha0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.gamma <= 1.0:
            raise ValueError("gamma must exceed 1, otherwise no radius exists")
        if not 0.0 < self.theta < np.pi:
            raise ValueError("theta must lie in (0, pi); the ends are collisions")


def negative_elliptic_interval(p: NegativeElliptic) -> tuple[float, float]:
    """Open y-interval on which the configuration exists (right end open)."""
    return 1.0 / np.sqrt(p.gamma**2 - 1.0), np.inf


def _ne_radius_sq(p: NegativeElliptic, y: float) -> float:
    return (p.gamma**2 - 1.0) * y * y - 1.0


def negative_elliptic_pair_products(p: NegativeElliptic, y: float) -> dict[str, float]:
    r2 = _ne_radius_sq(p, y)
    c = np.cos(p.theta)
    m12 = r2 * c - r2 - 1.0
    m13 = -2.0 * r2 - 1.0
    m14 = -r2 * c - r2 - 1.0
    return {"12": m12, "13": m13, "14": m14, "23": m14, "24": m13, "34": m12}


def _ne_partner_products(p: NegativeElliptic, y: float) -> tuple[float, float, float]:
    m = negative_elliptic_pair_products(p, y)
    return m["12"], m["13"], m["14"]


def negative_elliptic_rate(p: NegativeElliptic, y: float, nu: float) -> float:
    """Pulsation coefficient G: the transverse coordinate obeys
    nu_dot = G(y, nu) * y."""
    r2 = _ne_radius_sq(p, y)
    s = sum((1.0 + m) / (m * m - 1.0) ** 1.5 for m in _ne_partner_products(p, y))
    return (p.mass * s + (p.gamma**2 - 1.0) * nu * nu / r2
            + p.momentum**2 / (16.0 * p.mass**2 * r2))


def negative_elliptic_equilibrium_momentum_sq(p: NegativeElliptic, y: float) -> float:
    r2 = _ne_radius_sq(p, y)
    s = sum((1.0 + m) / (m * m - 1.0) ** 1.5 for m in _ne_partner_products(p, y))
    return -16.0 * p.mass**3 * r2 * s


def lift_negative_elliptic(p: NegativeElliptic, y: float, nu: float,
                           alpha: float) -> LiftedState:
    lo, _ = negative_elliptic_interval(p)
    if not y > lo:
        raise ValueError(f"y = {y} outside the admissible interval ({lo:.6g}, inf)")
    g = p.gamma
    z, nuz = g * y, g * nu
    r2 = _ne_radius_sq(p, y)
    r = np.sqrt(r2)
    rdot = (g * g - 1.0) * y * nu / r
    adot = p.momentum / (4.0 * p.mass * r2)

    phases = alpha + np.array([0.0, p.theta, np.pi, p.theta + np.pi])
    cosp, sinp = np.cos(phases), np.sin(phases)
    q = np.stack([r * cosp, r * sinp, np.full(4, y), np.full(4, z)], axis=1)
    v = np.stack([rdot * cosp - r * sinp * adot,
                  rdot * sinp + r * cosp * adot,
                  np.full(4, nu), np.full(4, nuz)], axis=1)

    nuzdot = negative_elliptic_rate(p, y, nu) * z
    rddot = ((1.0 - 1.0 / g**2) * (nuz * nuz + z * nuzdot) - rdot * rdot) / r
    addot = -2.0 * rdot * adot / r
    acc = np.stack([
        (rddot - r * adot**2) * cosp - (2.0 * rdot * adot + r * addot) * sinp,
        (rddot - r * adot**2) * sinp + (2.0 * rdot * adot + r * addot) * cosp,
        np.full(4, nuzdot / g), np.full(4, nuzdot),
    ], axis=1)

    state = SystemState(H3, np.full(4, p.mass), q, v)
    return LiftedState(state, negative_elliptic_pair_products(p, y), acc,
                       _pair_flags(q, H3))


def make_negative_elliptic(p: NegativeElliptic) -> SystemState:
    lifted = lift_negative_elliptic(p, p.y0, p.nu0, p.alpha0)
    s = lifted.state
    return SystemState.create(s.space, s.masses, s.positions, s.velocities)


def negative_elliptic_reduced_family(p: NegativeElliptic) -> ReducedFamily:
    lo, _ = negative_elliptic_interval(p)

    def rate_from(y0: float, nu0: float):
        # the rate keeps nu explicitly; nothing to freeze
        def rate(y: float, nu: float) -> float:
            return negative_elliptic_rate(p, y, nu) * y

        return rate

    return ReducedFamily(
        label="y",
        rate_from=rate_from,
        admissible=lambda y: y > lo,
        lift=lambda y, nu, alpha: lift_negative_elliptic(p, y, nu, alpha),
    )


# -- rigid boost-carried rectangle on H3 --------------------------------------

@dataclass(frozen=True)
class NegativeHyperbolic:
    """Four equal masses carried rigidly by a boost of H3.

    Bodies 1, 2 sit at (+-w, +-x) in the first two coordinates and share
    the boost phase beta in the y-z plane; bodies 3, 4 mirror them at
    boost phase beta + phase_gap.  The spatial offset is parametrized by
    eta = sqrt(w^2 + x^2 + 1) > 1 and an angle: w + i x =
    sqrt(eta^2 - 1) * exp(i * spatial_angle).  phase_gap = 0 would
    collide bodies 1, 3 and 2, 4.
    """

    mass: float
    eta: float
    phase_gap: float
    spatial_angle: float = 0.0
    momentum: float = 0.0
    beta0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.eta <= 1.0:
            raise ValueError("eta must exceed 1, otherwise bodies 1 and 2 coincide")
        if abs(self.phase_gap) < 1e-9:
            raise ValueError("phase_gap = 0 collides bodies 1 and 3")


def boost_pair_products(p: NegativeHyperbolic) -> dict[str, float]:
    e2 = p.eta**2
    ch = np.cosh(p.phase_gap)
    n12 = 1.0 - 2.0 * e2
    n13 = e2 - 1.0 - e2 * ch
    n14 = 1.0 - e2 - e2 * ch
    return {"12": n12, "13": n13, "14": n14, "23": n14, "24": n13, "34": n12}


def lift_negative_hyperbolic(p: NegativeHyperbolic, beta: float) -> LiftedState:
    eta = p.eta
    s = np.sqrt(eta * eta - 1.0)
    w, x = s * np.cos(p.spatial_angle), s * np.sin(p.spatial_angle)
    bdot = p.momentum / (4.0 * p.mass * eta * eta)
    phases = beta + np.array([0.0, 0.0, p.phase_gap, p.phase_gap])
    signs = np.array([1.0, -1.0, 1.0, -1.0])
    q = np.stack([signs * w, signs * x,
                  eta * np.sinh(phases), eta * np.cosh(phases)], axis=1)
    v = np.stack([np.zeros(4), np.zeros(4),
                  eta * np.cosh(phases) * bdot, eta * np.sinh(phases) * bdot], axis=1)
    state = SystemState(H3, np.full(4, p.mass), q, v)
    return LiftedState(state, boost_pair_products(p), None, _pair_flags(q, H3))


def make_negative_hyperbolic(p: NegativeHyperbolic) -> SystemState:
    lifted = lift_negative_hyperbolic(p, p.beta0)
    s = lifted.state
    return SystemState.create(s.space, s.masses, s.positions, s.velocities)


# -- rigid rotation-plus-boost rectangle on H3 --------------------------------

@dataclass(frozen=True)
class NegativeEllipticHyperbolic:
    """Four equal masses carried by one rotation and one boost of H3.

    Bodies 1, 2 sit at (+-r cos, +-r sin) on the w-x circle and share the
    boost phase beta; bodies 3, 4 repeat the spatial pair at boost phase
    beta + phase_gap.  Here eta = sqrt(r^2 + 1).  radius = 0 collides
    bodies 1, 2; phase_gap = 0 collides bodies 1, 3.
    """

    mass: float
    radius: float
    phase_gap: float
    momentum_rotation: float = 0.0
    momentum_boost: float = 0.0
    alpha0: float = 0.0
    beta0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.radius <= 0:
            raise ValueError("radius = 0 collides bodies 1 and 2")
        if abs(self.phase_gap) < 1e-9:
            raise ValueError("phase_gap = 0 collides bodies 1 and 3")


def rotation_boost_pair_products(p: NegativeEllipticHyperbolic) -> dict[str, float]:
    r2 = p.radius**2
    e2 = r2 + 1.0
    ch = np.cosh(p.phase_gap)
    d12 = -2.0 * r2 - 1.0
    d13 = r2 - e2 * ch
    d14 = -r2 - e2 * ch
    return {"12": d12, "13": d13, "14": d14, "23": d14, "24": d13, "34": d12}


def lift_negative_elliptic_hyperbolic(p: NegativeEllipticHyperbolic, alpha: float,
                                      beta: float) -> LiftedState:
    r = p.radius
    eta = np.sqrt(r * r + 1.0)
    adot = p.momentum_rotation / (4.0 * p.mass * r * r)
    bdot = p.momentum_boost / (4.0 * p.mass * eta * eta)
    signs = np.array([1.0, -1.0, 1.0, -1.0])
    phases = beta + np.array([0.0, 0.0, p.phase_gap, p.phase_gap])
    q = np.stack([signs * r * np.cos(alpha), signs * r * np.sin(alpha),
                  eta * np.sinh(phases), eta * np.cosh(phases)], axis=1)
    v = np.stack([-signs * r * np.sin(alpha) * adot,
                  signs * r * np.cos(alpha) * adot,
                  eta * np.cosh(phases) * bdot, eta * np.sinh(phases) * bdot], axis=1)
    state = SystemState(H3, np.full(4, p.mass), q, v)
    return LiftedState(state, rotation_boost_pair_products(p), None,
                       _pair_flags(q, H3))


def make_negative_elliptic_hyperbolic(p: NegativeEllipticHyperbolic) -> SystemState:
    lifted = lift_negative_elliptic_hyperbolic(p, p.alpha0, p.beta0)
    s = lifted.state
    return SystemState.create(s.space, s.masses, s.positions, s.velocities)


# -- seed families for the command line ----------------------------------------

def _default_positive_elliptic() -> PositiveElliptic:
    p = PositiveElliptic(mass=1.0, gamma=1.0, theta=np.pi / 2,
                         z0=0.35, nu0=0.0, momentum=0.0)
    c = np.sqrt(positive_elliptic_equilibrium_momentum_sq(p, p.z0))
    return PositiveElliptic(mass=1.0, gamma=1.0, theta=np.pi / 2,
                            z0=0.35, nu0=0.05, momentum=c)


def _default_negative_elliptic() -> NegativeElliptic:
    p = NegativeElliptic(mass=1.0, gamma=np.sqrt(2.0), theta=np.pi / 2,
                         y0=np.sqrt(1.5), nu0=0.0, momentum=0.0)
    b = np.sqrt(negative_elliptic_equilibrium_momentum_sq(p, p.y0))
    return NegativeElliptic(mass=1.0, gamma=np.sqrt(2.0), theta=np.pi / 2,
                            y0=np.sqrt(1.5), nu0=0.05, momentum=b)


SEED_FAMILIES: dict[str, Callable[[], SystemState]] = {
    "trapezoid-fixed-point": lambda: make_trapezoid_fixed_point(
        TrapezoidFixedPoint(alpha=np.pi / 3, beta=7 * np.pi / 6)),
    "rectangle-releq-s2": lambda: make_rectangle_releq_2d(
        RectangleRelEq2D(S2, radius=0.8,
                         omega=np.sqrt(rectangle_equilibrium_spin_sq(S2, 0.8)))),
    "rectangle-releq-h2": lambda: make_rectangle_releq_2d(
        RectangleRelEq2D(H2, radius=1.3,
                         omega=np.sqrt(rectangle_equilibrium_spin_sq(H2, 1.3)))),
    "positive-elliptic": lambda: make_positive_elliptic(_default_positive_elliptic()),
    "positive-elliptic-elliptic": lambda: make_positive_elliptic_elliptic(
        PositiveEllipticElliptic(mass=1.0, radius=0.6, phase_first=np.pi,
                                 phase_second=np.pi / 2,
                                 rate_first=0.4, rate_second=0.3)),
    "negative-elliptic": lambda: make_negative_elliptic(_default_negative_elliptic()),
    "negative-hyperbolic": lambda: make_negative_hyperbolic(
        NegativeHyperbolic(mass=1.0, eta=np.sqrt(2.0), phase_gap=1.0,
                           momentum=0.8)),
    "negative-elliptic-hyperbolic": lambda: make_negative_elliptic_hyperbolic(
        NegativeEllipticHyperbolic(mass=1.0, radius=1.0, phase_gap=0.5,
                                   momentum_rotation=0.6, momentum_boost=0.4)),
}
