"""Command line front end.

Four subcommands cover the workflows: `simulate` integrates a full
system and writes a trajectory table plus a diagnostics document,
`verify` runs one claim check and writes its report, `scan` tabulates a
named expression over a parameter grid, and `reduced` drives the
one-degree-of-freedom form of a pulsating family.

All output is deterministic.  Tables open with a '#' block echoing the
tool version and the effective settings (never a timestamp), numbers are
written with repr so a re-read re-serializes to the same bytes, and
lines end with LF.  Exit codes: 0 success, 2 configuration problem,
3 singular or domain-exit termination (partial output is still written),
4 integrator failure, 5 violated claim, 6 inconclusive claim.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from . import __version__
from .dynamics import SystemState
from .errors import (
    AntipodalConfigurationError,
    ConfigError,
    DomainExitError,
    MaxStepsExceededError,
    SingularDenominatorError,
    SingularPairError,
    StepUnderflowError,
)
from .geometry import metric_signs, space_from_name
from .integrator import (
    IntegratorConfig,
    Method,
    Trajectory,
    drift_report,
    integrate,
    integrate_reduced,
    period_estimate,
)
from .solutions import (
    NegativeElliptic,
    PositiveElliptic,
    SEED_FAMILIES,
    negative_elliptic_reduced_family,
    positive_elliptic_reduced_family,
)
from .verify import (
    ParamRange,
    Reading,
    ScanGrid,
    Status,
    boost_pair_identity,
    negative_pulsation_identity,
    positive_pulsation_identity,
    rectangle_spin_mismatch,
    rotating_boost_identity,
    run_theorem,
    trapezoid_det_cartesian,
    trapezoid_det_polar,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_INTEGRATOR = 4
EXIT_VIOLATED = 5
EXIT_INCONCLUSIVE = 6

_STATUS_EXIT = {
    Status.CONFIRMED: EXIT_OK,
    Status.VIOLATED: EXIT_VIOLATED,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


# -- deterministic serialization ----------------------------------------------


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _flatten_settings(obj, prefix: str = "", into: Optional[dict] = None) -> dict:
    if into is None:
        into = {}
    if isinstance(obj, dict):
        for key in sorted(obj):
            dotted = f"{prefix}.{key}" if prefix else str(key)
            _flatten_settings(obj[key], dotted, into)
    else:
        into[prefix] = obj
    return into


def _header_lines(command: str, settings: dict) -> list[str]:
    lines = [f"# curved-nbody {__version__}", f"# command: {command}"]
    for key, value in sorted(_flatten_settings(settings).items()):
        lines.append(f"# {key} = {_fmt_value(value)}")
    return lines


def _write_table(path, header: list[str], columns: Sequence[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(line + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- configuration plumbing ----------------------------------------------------


def _load_toml(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _check_keys(section: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {', '.join(unknown)}")


def _require(section: dict, keys: Sequence[str], where: str) -> None:
    missing = [k for k in keys if k not in section]
    if missing:
        raise ConfigError(f"{where} is missing: {', '.join(missing)}")


def _parse_grid(text: str) -> tuple[ParamRange, ...]:
    ranges = []
    for part in text.split(","):
        name, eq, spec = part.partition("=")
        pieces = spec.split(":")
        if not eq or len(pieces) != 3:
            raise ConfigError(
                f"bad grid entry {part!r}, expected name=lo:hi:steps")
        try:
            lo, hi, steps = float(pieces[0]), float(pieces[1]), int(pieces[2])
        except ValueError:
            raise ConfigError(
                f"bad grid entry {part!r}: the numbers did not parse") from None
        ranges.append(ParamRange(name.strip(), lo, hi, steps))
    return tuple(ranges)


def _parse_tols(text: str) -> dict:
    out = {}
    for part in text.split(","):
        name, eq, raw = part.partition("=")
        if not eq:
            raise ConfigError(f"bad tolerance entry {part!r}, expected name=value")
        try:
            out[name.strip()] = float(raw)
        except ValueError:
            raise ConfigError(
                f"bad tolerance entry {part!r}: the value did not parse") from None
    return out


def _thread_count() -> int:
    raw = os.environ.get("CURVED_NBODY_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(
            f"CURVED_NBODY_THREADS must be a positive integer, got {raw!r}"
        ) from None
    if n < 1:
        raise ConfigError(
            f"CURVED_NBODY_THREADS must be a positive integer, got {raw!r}")
    return n


_INTEGRATOR_KEYS = {"method", "dt", "abs_tol", "rel_tol", "max_steps",
                    "project_each_step", "singular_reject",
                    "singular_terminate", "sample_interval"}


def _integrator_config(section: dict) -> IntegratorConfig:
    _check_keys(section, _INTEGRATOR_KEYS, "[integrator]")
    kwargs = dict(section)
    if "method" in kwargs:
        try:
            kwargs["method"] = Method(kwargs["method"])
        except ValueError:
            names = ", ".join(m.value for m in Method)
            raise ConfigError(
                f"unknown method {kwargs['method']!r}, expected {names}") from None
    try:
        return IntegratorConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [integrator] values: {exc}") from None


# -- simulate -------------------------------------------------------------------


def _state_from_table(table: dict) -> SystemState:
    _check_keys(table, {"space", "masses", "positions", "velocities"},
                "[simulate.state]")
    _require(table, ("space", "masses", "positions", "velocities"),
             "[simulate.state]")
    space = space_from_name(table["space"])
    return SystemState.create(space, table["masses"], table["positions"],
                              table["velocities"])


def _trajectory_columns(traj: Trajectory) -> list[str]:
    names = traj.space.coordinate_names
    cols = ["t"]
    for k in range(traj.positions.shape[1]):
        cols.extend(f"{c}{k + 1}" for c in names)
        cols.extend(f"v{c}{k + 1}" for c in names)
    return cols


def _trajectory_rows(traj: Trajectory):
    for k in range(traj.n_samples):
        row = [traj.times[k]]
        for q, v in zip(traj.positions[k], traj.velocities[k]):
            row.extend(q)
            row.extend(v)
        yield row


def _diagnostics_payload(traj: Trajectory) -> dict:
    rep = drift_report(traj)
    signs = metric_signs(traj.space)
    inners = {}
    n_bodies = traj.positions.shape[1]
    for i in range(n_bodies):
        qi = traj.positions[:, i] * signs
        for j in range(i + 1, n_bodies):
            series = np.einsum("kc,kc->k", qi, traj.positions[:, j])
            inners[f"{i + 1}{j + 1}"] = [float(v) for v in series]
    info = traj.singular_info
    if info is not None:
        info = {"time": info["time"],
                "pair": None if info["pair"] is None else list(info["pair"]),
                "kind": info["kind"],
                "min_base": info["min_base"]}
    return {
        "tool": f"curved-nbody {__version__}",
        "termination": traj.termination,
        "singular_info": info,
        "accepted_steps": traj.accepted_steps,
        "rejected_steps": traj.rejected_steps,
        "energy": [float(e) for e in traj.energies],
        "momenta": {k: [float(v) for v in s] for k, s in traj.momenta.items()},
        "pair_inners": inners,
        "drift": {
            "max_constraint_drift": rep.max_constraint_drift,
            "max_energy_drift_rel": rep.max_energy_drift_rel,
            "max_momentum_drift_abs": dict(rep.max_momentum_drift_abs),
            "singular_termination": rep.singular_termination,
        },
    }


def _cmd_simulate(args) -> int:
    doc = _load_toml(args.config)
    _check_keys(doc, {"simulate", "integrator"}, "the configuration")
    sim = doc.get("simulate")
    if not isinstance(sim, dict):
        raise ConfigError("the configuration needs a [simulate] section")
    _check_keys(sim, {"duration", "state"}, "[simulate]")
    _require(sim, ("duration",), "[simulate]")
    duration = float(sim["duration"])

    state_table = sim.get("state")
    if (state_table is None) == (args.seed_family is None):
        raise ConfigError("provide exactly one starting state: either a "
                          "[simulate.state] table or --seed-family")
    if args.seed_family is not None:
        try:
            state = SEED_FAMILIES[args.seed_family]()
        except KeyError:
            known = ", ".join(sorted(SEED_FAMILIES))
            raise ConfigError(f"unknown seed family {args.seed_family!r}; "
                              f"known families: {known}") from None
    else:
        state = _state_from_table(state_table)

    config = _integrator_config(doc.get("integrator", {}))
    traj = integrate(state, duration, config)

    settings = dict(doc)
    if args.seed_family is not None:
        settings = {**doc, "seed_family": args.seed_family}
    header = _header_lines("simulate", settings)
    _write_table(args.out, header, _trajectory_columns(traj),
                 _trajectory_rows(traj))
    _write_json(Path(args.out).with_suffix(".diagnostics.json"),
                _diagnostics_payload(traj))

    if traj.termination == "singular":
        info = traj.singular_info or {}
        pair = info.get("pair")
        where = (f"bodies {pair[0]} and {pair[1]}" if pair else "a pair")
        print(f"singular termination: {where} reached a "
              f"{info.get('kind', 'unknown')} configuration at "
              f"t = {info.get('time')}", file=sys.stderr)
        return EXIT_SINGULAR
    return EXIT_OK


# -- verify ---------------------------------------------------------------------


def _cmd_verify(args) -> int:
    grid = ScanGrid(_parse_grid(args.grid)) if args.grid else None
    tols = _parse_tols(args.tol) if args.tol else None
    readings = (Reading(args.reading),) if args.reading else None
    report = run_theorem(args.theorem, grid=grid, tol=tols, readings=readings)

    out = args.out
    if out is None:
        out = f"{args.theorem.split('_')[0].upper()}_report.json"
    payload = {"tool": f"curved-nbody {__version__}", **report.to_dict()}
    _write_json(out, payload)
    print(report.summary())
    if report.notes:
        print(report.notes)
    return _STATUS_EXIT[report.status]


# -- scan -----------------------------------------------------------------------


@dataclass(frozen=True)
class _ScanSpec:
    """One scannable expression: its grid axes and point evaluator."""

    params: tuple[str, ...]
    values: tuple[str, ...]
    make: Callable[[Reading], Callable]
    uses_reading: bool = False


def _det_both(alpha: float, beta: float):
    return (trapezoid_det_cartesian(alpha, beta),
            trapezoid_det_polar(alpha, beta))


_PE_Z = math.sqrt(0.1)
_NE_Y = math.sqrt(1.5)
_NH_ETA = math.sqrt(2.0)

SCAN_EXPRESSIONS: dict[str, _ScanSpec] = {
    "detA": _ScanSpec(
        ("alpha", "beta"), ("det_cartesian", "det_polar"),
        lambda reading: _det_both),
    "releq2d_mismatch": _ScanSpec(
        ("alpha",), ("value",),
        lambda reading: lambda a: (float(rectangle_spin_mismatch(a, 0.8, 1)),)),
    "pe_identity": _ScanSpec(
        ("theta",), ("value",),
        lambda reading: lambda t: (positive_pulsation_identity(t, _PE_Z, 1.0),)),
    "ne_identity": _ScanSpec(
        ("theta",), ("value",),
        lambda reading: lambda t: (
            negative_pulsation_identity(t, _NE_Y, math.sqrt(2.0)),)),
    "nh_identity": _ScanSpec(
        ("phi",), ("value",),
        lambda reading: lambda p: (boost_pair_identity(p, _NH_ETA, 1.0, reading),),
        uses_reading=True),
    "neh_identity": _ScanSpec(
        ("phi",), ("value",),
        lambda reading: lambda p: (rotating_boost_identity(p, 1.0, 1.0, reading),),
        uses_reading=True),
}


def _evaluate_points(points: list[tuple], fn: Callable, n_values: int,
                     threads: int) -> list[tuple]:
    def run_chunk(chunk):
        out = []
        for pt in chunk:
            try:
                out.append(tuple(fn(*pt)))
            except (AntipodalConfigurationError, SingularDenominatorError):
                out.append((math.nan,) * n_values)
        return out

    if threads == 1 or len(points) <= 1:
        return run_chunk(points)
    size = math.ceil(len(points) / threads)
    chunks = [points[k:k + size] for k in range(0, len(points), size)]
    results = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(run_chunk, chunks):
            results.extend(part)
    return results


def _cmd_scan(args) -> int:
    spec = SCAN_EXPRESSIONS.get(args.expression)
    if spec is None:
        known = ", ".join(sorted(SCAN_EXPRESSIONS))
        raise ConfigError(f"unknown expression {args.expression!r}; "
                          f"known expressions: {known}")
    ranges = _parse_grid(args.grid)
    names = tuple(r.name for r in ranges)
    if names != spec.params:
        want = ",".join(spec.params)
        got = ",".join(names)
        raise ConfigError(f"{args.expression} expects grid axes ({want}), "
                          f"got ({got})")
    if args.reading and not spec.uses_reading:
        raise ConfigError(f"{args.expression} has a single reading; "
                          "--reading does not apply")
    reading = Reading(args.reading) if args.reading else Reading.COSH_INSIDE
    threads = _thread_count()

    axes = [r.points() for r in ranges]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = list(zip(*(m.ravel() for m in mesh)))
    fn = spec.make(reading)
    values = _evaluate_points(points, fn, len(spec.values), threads)

    settings = {"expression": args.expression,
                "grid": {r.name: f"{r.lo!r}:{r.hi!r}:{r.steps}" for r in ranges}}
    if spec.uses_reading:
        settings["reading"] = reading.value
    header = _header_lines("scan", settings)
    rows = [tuple(pt) + tuple(val) for pt, val in zip(points, values)]
    _write_table(args.out, header, names + spec.values, rows)
    return EXIT_OK


# -- reduced --------------------------------------------------------------------


_REDUCED_COMMON = {"mass", "gamma", "theta", "momentum", "nu0", "duration",
                   "alpha0"}


def _reduced_setup(family_name: str, section: dict):
    x_key = "z0" if family_name == "pe" else "y0"
    _check_keys(section, _REDUCED_COMMON | {x_key}, "[reduced]")
    _require(section, ("mass", "gamma", "momentum", x_key, "nu0", "duration"),
             "[reduced]")
    kwargs = dict(
        mass=float(section["mass"]),
        gamma=float(section["gamma"]),
        theta=float(section.get("theta", math.pi / 2)),
        nu0=float(section["nu0"]),
        momentum=float(section["momentum"]),
        alpha0=float(section.get("alpha0", 0.0)),
    )
    try:
        if family_name == "pe":
            params = PositiveElliptic(z0=float(section["z0"]), **kwargs)
            family = positive_elliptic_reduced_family(params)
            x0 = params.z0
        else:
            params = NegativeElliptic(y0=float(section["y0"]), **kwargs)
            family = negative_elliptic_reduced_family(params)
            x0 = params.y0
    except ValueError as exc:
        raise ConfigError(f"bad [reduced] values: {exc}") from None
    return family, x0, kwargs["nu0"], kwargs["alpha0"], float(section["duration"])


def _lift_residual(family, samples, alpha: float) -> float:
    from .dynamics import eom_residual

    n = samples.n_samples
    idx = np.unique(np.linspace(0, n - 1, min(100, n)).round().astype(int))
    worst = 0.0
    for k in idx:
        lifted = family.lift(float(samples.values[k]), float(samples.rates[k]),
                             alpha)
        if lifted.is_singular or lifted.accel_claim is None:
            continue
        worst = max(worst, eom_residual(lifted.state, lifted.accel_claim))
    return worst


def _cmd_reduced(args) -> int:
    doc = _load_toml(args.config)
    _check_keys(doc, {"reduced"}, "the configuration")
    section = doc.get("reduced")
    if not isinstance(section, dict):
        raise ConfigError("the configuration needs a [reduced] section")
    family, x0, nu0, alpha0, duration = _reduced_setup(args.family, section)

    code = EXIT_OK
    try:
        samples = integrate_reduced(family, x0, nu0, duration)
    except DomainExitError as exc:
        samples = exc.samples
        code = EXIT_SINGULAR
        print(f"domain exit: {exc}", file=sys.stderr)

    header = _header_lines("reduced", {"family": args.family, **doc})
    rows = zip(samples.times, samples.values, samples.rates)
    _write_table(args.out, header, ("t", family.label, "nu"), rows)

    moving = (np.abs(samples.rates).max(initial=0.0) > 1e-10
              and np.ptp(samples.values) > 1e-10)
    period = period_estimate(samples.times, samples.rates) if moving else None
    period_text = "none" if period is None else repr(float(period))
    residual = _lift_residual(family, samples, alpha0)
    print(f"{args.family}: samples={samples.n_samples} period={period_text} "
          f"lift_residual={residual!r}")
    return code


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curved-nbody",
        description="simulate and check rectangular four-body motions on "
                    "curved surfaces and their three-dimensional analogues")
    sub = parser.add_subparsers(dest="command")

    p_sim = sub.add_parser("simulate", help="integrate a full system")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out", required=True)
    p_sim.add_argument("--seed-family", dest="seed_family",
                       help="start from a named built-in configuration")
    p_sim.set_defaults(run=_cmd_simulate)

    p_ver = sub.add_parser("verify", help="run one claim check")
    p_ver.add_argument("theorem")
    p_ver.add_argument("--out")
    p_ver.add_argument("--grid")
    p_ver.add_argument("--tol")
    p_ver.add_argument("--reading",
                       choices=[r.value for r in Reading])
    p_ver.set_defaults(run=_cmd_verify)

    p_scan = sub.add_parser("scan", help="tabulate an expression over a grid")
    p_scan.add_argument("expression")
    p_scan.add_argument("--out", required=True)
    p_scan.add_argument("--grid", required=True)
    p_scan.add_argument("--reading", choices=[r.value for r in Reading])
    p_scan.set_defaults(run=_cmd_scan)

    p_red = sub.add_parser("reduced",
                           help="integrate the reduced form of a family")
    p_red.add_argument("family", choices=["pe", "ne"])
    p_red.add_argument("--config", required=True)
    p_red.add_argument("--out", required=True)
    p_red.set_defaults(run=_cmd_reduced)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        return args.run(args)
    except (ConfigError, tomllib.TOMLDecodeError, FileNotFoundError,
            IsADirectoryError, AntipodalConfigurationError,
            SingularPairError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (StepUnderflowError, MaxStepsExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATOR


if __name__ == "__main__":
    raise SystemExit(main())
