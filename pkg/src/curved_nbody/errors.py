"""Exception types shared across the package.

Everything raised on purpose derives from CurvedNBodyError so callers can
catch library failures without also swallowing programming errors.
"""

from __future__ import annotations


class CurvedNBodyError(Exception):
    """Base class for all errors raised deliberately by this package."""


class DimensionMismatchError(CurvedNBodyError, ValueError):
    """Vector shapes do not match the ambient dimension of the space."""


class DegeneratePointError(CurvedNBodyError, ValueError):
    """A point cannot be projected because its self inner product is ~0."""


class SingularPairError(CurvedNBodyError):
    """Two bodies are in (or too close to) a singular configuration.

    Attributes:
        i, j: body indices of the offending pair.
        kind: a SingularityKind value (collision or antipodal).
    """

    def __init__(self, i: int, j: int, kind, message: str | None = None):
        self.i = i
        self.j = j
        self.kind = kind
        if message is None:
            message = f"bodies {i} and {j} are in a {kind.name.lower()} configuration"
        super().__init__(message)


class AntipodalConfigurationError(CurvedNBodyError, ValueError):
    """A constructor was asked for a configuration with an antipodal pair."""


class SingularDenominatorError(CurvedNBodyError, ZeroDivisionError):
    """A closed-form residual hit a vanishing denominator base."""


class DomainExitError(CurvedNBodyError):
    """A reduced integration left the admissible region.

    Carries the samples accumulated before the exit so callers can still
    write partial output.
    """

    def __init__(self, time: float, message: str, samples=None):
        self.time = time
        self.samples = samples
        super().__init__(message)


class StepUnderflowError(CurvedNBodyError):
    """The adaptive step size collapsed below the resolvable scale."""


class MaxStepsExceededError(CurvedNBodyError):
    """The integrator hit its step budget before reaching t_end."""


class ConfigError(CurvedNBodyError, ValueError):
    """A run configuration document is malformed or inconsistent."""
