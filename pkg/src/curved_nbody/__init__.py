"""Gravitational n-body mechanics on spheres and hyperboloids.

The package provides the equations of motion on S2, S3, H2 and H3, exact
special-solution families (fixed points, relative equilibria, and
rotopulsating orbits built on rectangles), structure-preserving
integrators, and a verification layer that checks the defining properties
of each family numerically.
"""

from .errors import (
    AntipodalConfigurationError,
    ConfigError,
    CurvedNBodyError,
    DegeneratePointError,
    DimensionMismatchError,
    DomainExitError,
    MaxStepsExceededError,
    SingularDenominatorError,
    SingularPairError,
    StepUnderflowError,
)
from .geometry import (
    H2,
    H3,
    S2,
    S3,
    SingularityKind,
    SpaceSpec,
    constraint_residual,
    inner,
    metric_signs,
    pair_singularity,
    project_point,
    project_state,
    random_isometry,
    space_from_name,
)
from .dynamics import (
    Body,
    SystemState,
    acceleration,
    angular_momentum,
    eom_residual,
    force_function,
    gravitational_acceleration,
    kinetic_energy,
    momentum_planes,
    pair_inner_matrix,
    total_energy,
    transform,
)
from .solutions import (
    SEED_FAMILIES,
    NegativeElliptic,
    NegativeEllipticHyperbolic,
    NegativeHyperbolic,
    PositiveElliptic,
    PositiveEllipticElliptic,
    RectangleRelEq2D,
    TrapezoidFixedPoint,
    make_negative_elliptic,
    make_negative_elliptic_hyperbolic,
    make_negative_hyperbolic,
    make_positive_elliptic,
    make_positive_elliptic_elliptic,
    make_rectangle_releq_2d,
    make_trapezoid_fixed_point,
    negative_elliptic_reduced_family,
    positive_elliptic_reduced_family,
    rectangle_equilibrium_spin_sq,
)
from .integrator import (
    IntegratorConfig,
    Method,
    ReducedTrajectory,
    Trajectory,
    drift_report,
    integrate,
    integrate_reduced,
    linearized_period,
    period_estimate,
)
from .verify import (
    CHECKS,
    ParamRange,
    Reading,
    ScanGrid,
    Status,
    TheoremId,
    VerificationReport,
    run_theorem,
)

__version__ = "0.1.0"
