"""Time integration on the quadrics, full and reduced.

Two steppers are provided: a classical fixed-step fourth-order scheme and
an embedded 5(4) pair with step control (the fifth-order value is
propagated; the embedded fourth-order value only feeds the error
estimate).  After every accepted step the state is, by default, projected
back onto the quadric and the velocities re-tangentialized; the drift
this removes is at rounding level per step but grows secularly when left
alone.

Close encounters are watched through the pair denominators
sigma - sigma * (q_i . q_j)^2.  A step that would push the smallest
denominator below `singular_reject` is rejected and retried at half the
step (adaptive runs only); once the denominator falls below
`singular_terminate` the run stops and records which pair collapsed,
since no meaningful continuation exists.  Fixed-step runs cannot retry,
so they stop directly.  Step-size underflow and step-count exhaustion
raise instead: they signal a tolerance problem, not physics.

The pulsating rectangle families reduce to one degree of freedom;
integrate_reduced drives that scalar system with the same steppers and
raises DomainExitError, with the partial samples attached, if the
trajectory leaves the family's admissible interval.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dynamics import (
    SystemState,
    _acceleration_arrays,
    _closest_singular_pair,
    angular_momentum,
    momentum_planes,
    total_energy,
)
from .errors import (
    DomainExitError,
    MaxStepsExceededError,
    SingularPairError,
    StepUnderflowError,
)
from .geometry import SpaceSpec, constraint_residual, inner, metric_signs, project_state


class Method(enum.Enum):
    RK4 = "rk4"
    DOPRI54 = "dopri54"


@dataclass(frozen=True)
class IntegratorConfig:
    """Knobs for both steppers.

    dt is the fixed step for RK4 and the initial step for the adaptive
    pair.  abs_tol/rel_tol weigh the embedded error estimate.  Projection
    happens after accepted steps unless project_each_step is False.
    sample_interval, when set, records samples only at integer multiples
    of that interval (steps are shortened to land on them exactly);
    otherwise every accepted step is recorded.
    """

    method: Method = Method.DOPRI54
    dt: float = 1e-3
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_steps: int = 2_000_000
    project_each_step: bool = True
    singular_reject: float = 1e-8
    singular_terminate: float = 1e-10
    sample_interval: Optional[float] = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.abs_tol <= 0 or self.rel_tol < 0:
            raise ValueError("tolerances must be positive")
        if self.sample_interval is not None and self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")


@dataclass
class Trajectory:
    """Sampled solution of the full system.

    Arrays are indexed [sample, body, coordinate].  termination is
    "completed" or "singular"; in the singular case singular_info records
    the offending pair, its kind, the smallest denominator and the time.
    """

    space: SpaceSpec
    masses: np.ndarray
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    energies: np.ndarray
    momenta: dict[str, np.ndarray]
    accepted_steps: int
    rejected_steps: int
    termination: str
    singular_info: Optional[dict] = None

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def state_at(self, k: int) -> SystemState:
        return SystemState(self.space, self.masses, self.positions[k].copy(),
                           self.velocities[k].copy(), float(self.times[k]))

    def final_state(self) -> SystemState:
        return self.state_at(self.n_samples - 1)


@dataclass(frozen=True)
class DriftReport:
    """Conservation scorecard of a trajectory.

    max_constraint_drift covers both the quadric residual and the
    tangency residual; the energy drift is relative to the starting
    energy (absolute when that is essentially zero); momentum drifts are
    absolute, one per coordinate plane.
    """

    max_constraint_drift: float
    max_energy_drift_rel: float
    max_momentum_drift_abs: dict[str, float]
    singular_termination: bool


class _StageFailure(Exception):
    """A stage evaluation left the valid region (singular pair, bad value)."""


# Dormand-Prince 5(4) tableau
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_ERR = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525,
           -1 / 40)


def _dp54_step(rhs: Callable[[np.ndarray], np.ndarray], y: np.ndarray, dt: float,
               abs_tol: float, rel_tol: float) -> tuple[np.ndarray, float]:
    """One embedded step: returns the fifth-order value and the error norm."""
    k = []
    for row in _DP_A:
        yi = y
        if row:
            yi = y + dt * sum(a * ki for a, ki in zip(row, k) if a != 0.0)
        k.append(rhs(yi))
    y5 = y + dt * sum(b * ki for b, ki in zip(_DP_B5, k) if b != 0.0)
    err = dt * sum(e * ki for e, ki in zip(_DP_ERR, k) if e != 0.0)
    scale = abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y5))
    with np.errstate(over="ignore"):
        # an overflowing ratio just means "reject"; inf is a fine norm here
        err_norm = float(np.sqrt(np.mean((err / scale) ** 2)))
    return y5, err_norm


def _rk4_step(rhs: Callable[[np.ndarray], np.ndarray], y: np.ndarray,
              dt: float) -> np.ndarray:
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _growth_factor(err_norm: float) -> float:
    if err_norm == 0.0:
        return 5.0
    return min(5.0, max(0.2, 0.9 * err_norm**-0.2))


def _min_pair_base(q: np.ndarray, space: SpaceSpec) -> float:
    g = metric_signs(space)
    d = (q * g) @ q.T
    base = space.sigma - space.sigma * d * d
    ii, jj = np.triu_indices(len(q), k=1)
    return float(base[ii, jj].min())


def integrate(state: SystemState, duration: float,
              config: IntegratorConfig = IntegratorConfig()) -> Trajectory:
    """Integrate the full system for the given duration (>= 0).

    The initial state must be regular: a singular starting pair raises
    SingularPairError immediately.  A singularity reached along the way
    terminates the run and is reported on the trajectory instead.
    """
    if duration < 0:
        raise ValueError("duration must be nonnegative; to run backwards, "
                         "negate the velocities")
    space, masses = state.space, state.masses
    n, dim = state.positions.shape

    def rhs(y: np.ndarray) -> np.ndarray:
        q = y[: n * dim].reshape(n, dim)
        v = y[n * dim:].reshape(n, dim)
        try:
            # stages must stay evaluable below the terminate threshold, or a
            # step ending inside the terminate band could never be accepted
            _, acc = _acceleration_arrays(masses, q, v, space,
                                          config.singular_terminate * 1e-3)
        except SingularPairError as exc:
            raise _StageFailure from exc
        out = np.empty_like(y)
        out[: n * dim] = v.ravel()
        out[n * dim:] = acc.ravel()
        if not np.all(np.isfinite(out)):
            raise _StageFailure("non-finite stage value")
        return out

    # a singular pair at t = 0 is the caller's mistake, raise it plainly
    _acceleration_arrays(masses, state.positions, state.velocities, space,
                         config.singular_terminate)

    y = np.concatenate([state.positions.ravel(), state.velocities.ravel()])
    t0 = state.time
    times, samples = [t0], [y.copy()]
    accepted = rejected = 0
    termination, singular_info = "completed", None

    adaptive = config.method is Method.DOPRI54
    dt = config.dt
    t = 0.0
    base_cur = _min_pair_base(state.positions, space)
    recording = config.sample_interval is not None
    next_record = config.sample_interval if recording else None

    while duration > 0 and t < duration * (1.0 - 1e-15):
        if accepted + rejected >= config.max_steps:
            raise MaxStepsExceededError(
                f"exceeded {config.max_steps} steps at t = {t0 + t:.6g} "
                f"({accepted} accepted, {rejected} rejected)")
        step = min(dt, duration - t)
        if recording:
            step = min(step, next_record - t)
        if step < 1e-14 * duration:
            if base_cur < config.singular_reject:
                # the collapse is driven by a singular approach, not by the
                # error controller; report it as the physical ending it is
                q_cur = y[: n * dim].reshape(n, dim)
                pair = _closest_singular_pair(q_cur, space,
                                              config.singular_reject)
                i, j, kind = pair if pair is not None else (None, None, None)
                termination = "singular"
                singular_info = {
                    "time": t0 + t,
                    "pair": (i, j) if pair is not None else None,
                    "kind": kind.value if pair is not None else "unknown",
                    "min_base": base_cur,
                }
                break
            raise StepUnderflowError(
                f"step collapsed to {step:.3e} at t = {t0 + t:.6g}")
        try:
            if adaptive:
                y_new, err_norm = _dp54_step(rhs, y, step, config.abs_tol,
                                             config.rel_tol)
            else:
                y_new, err_norm = _rk4_step(rhs, y, step), 0.0
        except _StageFailure:
            if adaptive:
                rejected += 1
                dt = step * 0.5
                continue
            termination, singular_info = "singular", {
                "time": t0 + t, "pair": None, "kind": "stage failure",
                "min_base": None,
            }
            break
        if adaptive and err_norm > 1.0:
            rejected += 1
            dt = step * _growth_factor(err_norm)
            continue

        q_new = y_new[: n * dim].reshape(n, dim)
        v_new = y_new[n * dim:].reshape(n, dim)
        if config.project_each_step:
            q_new, v_new = project_state(q_new, v_new, space)
            y_new = np.concatenate([q_new.ravel(), v_new.ravel()])

        base = _min_pair_base(q_new, space)
        if base < config.singular_terminate or (
                base < config.singular_reject and not adaptive):
            pair = _closest_singular_pair(q_new, space, config.singular_reject)
            i, j, kind = pair if pair is not None else (None, None, None)
            t += step
            times.append(t0 + t)
            samples.append(y_new)
            accepted += 1
            termination = "singular"
            singular_info = {
                "time": t0 + t,
                "pair": (i, j) if pair is not None else None,
                "kind": kind.value if pair is not None else "unknown",
                "min_base": base,
            }
            break
        if (base < 0.25 * config.singular_reject
                and base_cur >= config.singular_reject):
            # the step leapt from outside the near-singular buffer deep into
            # it; halve and resolve the approach instead of jumping.  Entries
            # landing in the outer part of the buffer are accepted, so a real
            # collapse always gets in rather than stalling at the boundary.
            rejected += 1
            dt = step * 0.5
            continue
        base_cur = base

        t += step
        y = y_new
        accepted += 1
        if adaptive:
            dt = step * _growth_factor(err_norm)
        if recording:
            if t >= next_record * (1.0 - 1e-15):
                times.append(t0 + t)
                samples.append(y.copy())
                next_record += config.sample_interval
        else:
            times.append(t0 + t)
            samples.append(y.copy())

    if (t0 + t) - times[-1] > 1e-12 * max(1.0, abs(t0 + t)):
        times.append(t0 + t)  # off-grid final state, e.g. duration not a multiple
        samples.append(y.copy())
    stacked = np.stack(samples)
    positions = stacked[:, : n * dim].reshape(-1, n, dim)
    velocities = stacked[:, n * dim:].reshape(-1, n, dim)
    s = len(times)
    energies = np.empty(s)
    momenta = {plane: np.empty(s) for plane in momentum_planes(space)}
    for k in range(s):
        snap = SystemState(space, masses, positions[k], velocities[k], times[k])
        energies[k] = total_energy(snap)
        for plane, val in angular_momentum(snap).items():
            momenta[plane][k] = val
    return Trajectory(space, masses.copy(), np.asarray(times), positions,
                      velocities, energies, momenta, accepted, rejected,
                      termination, singular_info)


def drift_report(traj: Trajectory) -> DriftReport:
    qres = np.abs(constraint_residual(traj.positions, traj.space)).max()
    tres = np.abs(inner(traj.positions, traj.velocities, traj.space)).max()
    e0 = traj.energies[0]
    denom = abs(e0) if abs(e0) > 1e-12 else 1.0
    e_drift = float(np.abs(traj.energies - e0).max() / denom)
    m_drift = {plane: float(np.abs(series - series[0]).max())
               for plane, series in traj.momenta.items()}
    return DriftReport(float(max(qres, tres)), e_drift, m_drift,
                       traj.termination == "singular")


# -- one-degree-of-freedom (pulsating) systems ---------------------------------

@dataclass
class ReducedTrajectory:
    """Samples of the transverse coordinate and its rate."""

    label: str
    times: np.ndarray
    values: np.ndarray
    rates: np.ndarray

    @property
    def n_samples(self) -> int:
        return len(self.times)


def integrate_reduced(family, x0: float, nu0: float, duration: float,
                      config: IntegratorConfig = IntegratorConfig()
                      ) -> ReducedTrajectory:
    """Drive x_dot = nu, nu_dot = rate(x, nu) inside the family's domain.

    The rate function is frozen from (x0, nu0) once, so families that
    eliminate a rate through a conserved quantity anchor it here.  Raises
    ValueError for an inadmissible start and DomainExitError (with the
    partial samples attached) when the motion reaches the domain edge.
    """
    if duration < 0:
        raise ValueError("duration must be nonnegative")
    if not family.admissible(x0):
        raise ValueError(f"starting value {family.label} = {x0} is outside "
                         "the family's admissible interval")
    rate = family.rate_from(x0, nu0)

    def rhs(y: np.ndarray) -> np.ndarray:
        x, nu = float(y[0]), float(y[1])
        if not family.admissible(x):
            raise _StageFailure("left the admissible interval")
        out = np.array([nu, rate(x, nu)])
        if not np.all(np.isfinite(out)):
            raise _StageFailure("non-finite stage value")
        return out

    y = np.array([x0, nu0], dtype=float)
    times, samples = [0.0], [y.copy()]
    adaptive = config.method is Method.DOPRI54
    dt = config.dt
    t = 0.0
    accepted = rejected = 0

    def partial() -> ReducedTrajectory:
        arr = np.stack(samples)
        return ReducedTrajectory(family.label, np.asarray(times),
                                 arr[:, 0], arr[:, 1])

    while duration > 0 and t < duration * (1.0 - 1e-15):
        if accepted + rejected >= config.max_steps:
            raise MaxStepsExceededError(
                f"exceeded {config.max_steps} steps at t = {t:.6g}")
        step = min(dt, duration - t)
        if step < 1e-14 * duration:
            # when the rate diverges on the domain edge no step size can
            # cross it; a collapse right next to the edge is the edge
            probe = 1e-4 * max(1.0, abs(float(y[0])))
            if (not family.admissible(float(y[0]) + probe)
                    or not family.admissible(float(y[0]) - probe)):
                raise DomainExitError(
                    t, f"the reduced trajectory reached the edge of the "
                    f"admissible {family.label} interval near t = {t:.6g}",
                    samples=partial())
            raise StepUnderflowError(
                f"step collapsed to {step:.3e} at t = {t:.6g}")
        try:
            if adaptive:
                y_new, err_norm = _dp54_step(rhs, y, step, config.abs_tol,
                                             config.rel_tol)
            else:
                y_new, err_norm = _rk4_step(rhs, y, step), 0.0
        except _StageFailure:
            if adaptive and step > 16e-14 * duration:
                rejected += 1
                dt = step * 0.5
                continue
            raise DomainExitError(t, f"the reduced trajectory left the "
                                  f"admissible {family.label} interval near "
                                  f"t = {t:.6g}", samples=partial())
        if adaptive and err_norm > 1.0:
            rejected += 1
            dt = step * _growth_factor(err_norm)
            continue
        if not family.admissible(float(y_new[0])):
            raise DomainExitError(t + step, f"the reduced trajectory left the "
                                  f"admissible {family.label} interval at "
                                  f"t = {t + step:.6g}", samples=partial())
        t += step
        y = y_new
        accepted += 1
        if adaptive:
            dt = step * _growth_factor(err_norm)
        times.append(t)
        samples.append(y.copy())

    return partial()


def period_estimate(times: np.ndarray, rates: np.ndarray) -> Optional[float]:
    """Oscillation period from same-direction zero crossings of the rate.

    Upward crossings (rate passing from negative to positive) are located
    by linear interpolation; the period is the mean gap between
    consecutive ones.  Returns None when fewer than two exist.
    """
    times = np.asarray(times)
    rates = np.asarray(rates)
    crossings = []
    for k in range(len(rates) - 1):
        if rates[k] < 0.0 <= rates[k + 1]:
            frac = -rates[k] / (rates[k + 1] - rates[k])
            crossings.append(times[k] + frac * (times[k + 1] - times[k]))
    if len(crossings) < 2:
        return None
    return float(np.mean(np.diff(crossings)))


def linearized_period(rate: Callable[[float, float], float], x_star: float,
                      step: float = 1e-6) -> float:
    """Small-oscillation period about a rest point of the reduced system."""
    slope = (rate(x_star + step, 0.0) - rate(x_star - step, 0.0)) / (2.0 * step)
    if slope >= 0:
        raise ValueError(f"no oscillation: rate slope {slope:.3e} is not negative")
    return float(2.0 * np.pi / np.sqrt(-slope))
