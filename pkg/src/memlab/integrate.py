"""Fixed-step RK4 integration of driven one-ports with event localization.

Steps are split at resistance discontinuities so no RK4 stage ever straddles a
jump: periodic time breakpoints are split analytically, state-threshold
crossings are bisected to within the event tolerance. The sample grid itself is
untouched; all splitting is internal to a grid step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigError,
    Drive,
    MemlabError,
    ModelEvaluationError,
    SignalKind,
    Trajectory,
    accumulate_integrals,
    terminal_pair,
)


class SimulationError(MemlabError):
    """Runtime failure while integrating (as opposed to a bad configuration)."""


class BlowUpError(SimulationError):
    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class SteadyStateError(SimulationError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class EventLocalizationError(SimulationError):
    pass


@dataclass(frozen=True)
class SimControls:
    """Integration controls.

    dt=None picks period/2000. The step is always adjusted downward so that an
    even number of steps divides the drive period exactly; dt must not exceed
    period/200. event_tolerance (seconds, default dt/1000) bounds how precisely
    threshold crossings are localized.
    """

    dt: float | None = None
    transient_cycles: int = 2
    record_cycles: int = 2
    event_tolerance: float | None = None
    steady_state_rel_tol: float = 1e-6

    def __post_init__(self):
        if self.dt is not None and self.dt <= 0.0:
            raise ConfigError("dt must be > 0")
        if self.transient_cycles < 0:
            raise ConfigError("transient_cycles must be >= 0")
        if self.record_cycles < 1:
            raise ConfigError("record_cycles must be >= 1")
        if self.event_tolerance is not None and self.event_tolerance <= 0.0:
            raise ConfigError("event_tolerance must be > 0")
        if self.steady_state_rel_tol <= 0.0:
            raise ConfigError("steady_state_rel_tol must be > 0")


def resolve_step(controls: SimControls, period: float) -> tuple[float, int]:
    """Effective (dt, steps_per_cycle): dt divides the period, step count even."""
    if period <= 0.0:
        raise ConfigError("drive period must be > 0")
    if controls.dt is None:
        n = 2000
    else:
        limit = period / 200.0
        if controls.dt > limit * (1.0 + 1e-12):
            raise ConfigError(
                f"dt = {controls.dt} violates dt <= period/200 = {limit} for this drive"
            )
        n = math.ceil(period / controls.dt - 1e-9)
        if n % 2:
            n += 1
    return period / n, n


def _resolve_event_tol(controls: SimControls, dt: float) -> float:
    if controls.event_tolerance is None:
        return dt * 1e-3
    if controls.event_tolerance >= dt:
        raise ConfigError("event_tolerance must be smaller than dt")
    return controls.event_tolerance


def check_compatible(model, drive: Drive) -> None:
    """Reject current-controlled models on voltage sources and vice versa."""
    if model.input_kind is not drive.kind:
        raise ConfigError(
            f"model {model.name!r} is {model.input_kind.value}-controlled "
            f"but the drive imposes a {drive.kind.value}"
        )


def _any_crossed(before: float, after: float, thresholds) -> bool:
    for th in thresholds:
        if (before < th) != (after < th):
            return True
    return False


def locate_events(
    step,
    x0: tuple,
    t0: float,
    h: float,
    *,
    monitor: int | None = None,
    thresholds=(),
    time_breaks=(),
    event_tol: float,
    max_bisect: int = 64,
):
    """Advance x over [t0, t0+h], splitting at events; returns [(t, x), ...].

    step(x, a, b) must integrate the smooth dynamics over [a, b]. time_breaks
    are known discontinuity times strictly inside the interval (split exactly);
    crossings of the monitored state component through any threshold are
    bisected on the step size until the bracket is below event_tol, and the
    step lands on the crossed side of the threshold.
    """
    bounds = [t0, *time_breaks, t0 + h]
    out: list[tuple[float, tuple]] = []
    x = x0
    for j in range(len(bounds) - 1):
        a, b = bounds[j], bounds[j + 1]
        while b - a > 0.0:
            trial = step(x, a, b)
            if monitor is None or not thresholds or not _any_crossed(
                x[monitor], trial[monitor], thresholds
            ):
                out.append((b, trial))
                x = trial
                break
            before = x[monitor]
            lo, hi = 0.0, b - a
            x_hi = trial
            iters = 0
            while hi - lo > event_tol:
                iters += 1
                if iters > max_bisect:
                    raise EventLocalizationError(
                        f"threshold crossing near t = {a} not localized in {max_bisect} bisections"
                    )
                mid = 0.5 * (lo + hi)
                probe = step(x, a, a + mid)
                if _any_crossed(before, probe[monitor], thresholds):
                    hi = mid
                    x_hi = probe
                else:
                    lo = mid
            x = x_hi
            a = a + hi
            out.append((a, x))
    if not out:
        out.append((t0 + h, x0))
    return out


class _Engine:
    """Shared stepping machinery for simulate and detect_steady_state."""

    def __init__(self, model, drive: Drive, dt: float, event_tol: float):
        self.model = model
        self.drive = drive
        self.dt = dt
        self.event_tol = event_tol
        specs = []
        if model.breakpoint_period is not None:
            specs.append((model.breakpoint_period, tuple(model.breakpoint_offsets)))
        drive_offsets = drive.breakpoint_offsets()
        if drive_offsets:
            specs.append((drive.period, drive_offsets))
        self.specs = specs

    def _hits_break(self, t: float) -> bool:
        for period, offsets in self.specs:
            tol = 1e-9 * period
            for off in offsets:
                s = math.fmod(t - off, period)
                if s < 0.0:
                    s += period
                if s < tol or period - s < tol:
                    return True
        return False

    def _interior_breaks(self, t0: float, t1: float):
        if not self.specs:
            return ()
        found: list[float] = []
        for period, offsets in self.specs:
            tol = 1e-9 * period
            for off in offsets:
                m = math.floor((t0 - off) / period)
                while True:
                    tb = off + m * period
                    if tb >= t1 - tol:
                        break
                    if tb > t0 + tol:
                        found.append(tb)
                    m += 1
        if not found:
            return ()
        found.sort()
        merged = [found[0]]
        for tb in found[1:]:
            if tb - merged[-1] > 1e-12 * self.dt:
                merged.append(tb)
        return tuple(merged)

    def step(self, x: tuple, a: float, b: float) -> tuple:
        # One classical RK4 step over a smooth sub-interval. Stages that land
        # exactly on a discontinuity boundary are evaluated a hair inside the
        # interval so piecewise coefficients resolve on this sub-step's side.
        h = b - a
        nudge = 1e-9 * h
        ta = a + nudge if self._hits_break(a) else a
        tb = b - nudge if self._hits_break(b) else b
        tm = a + 0.5 * h
        value = self.drive.value
        f = self.model.f
        u1 = value(ta)
        um = value(tm)
        u4 = value(tb)
        k1 = f(x, u1, ta)
        h2 = 0.5 * h
        x2 = tuple(xi + h2 * ki for xi, ki in zip(x, k1))
        k2 = f(x2, um, tm)
        x3 = tuple(xi + h2 * ki for xi, ki in zip(x, k2))
        k3 = f(x3, um, tm)
        x4 = tuple(xi + h * ki for xi, ki in zip(x, k3))
        k4 = f(x4, u4, tb)
        h6 = h / 6.0
        return tuple(
            xi + h6 * (c1 + 2.0 * (c2 + c3) + c4)
            for xi, c1, c2, c3, c4 in zip(x, k1, k2, k3, k4)
        )

    def grid_step(self, x: tuple, t0: float, t1: float) -> tuple:
        subs = locate_events(
            self.step,
            x,
            t0,
            t1 - t0,
            monitor=self.model.threshold_component,
            thresholds=self.model.thresholds,
            time_breaks=self._interior_breaks(t0, t1),
            event_tol=self.event_tol,
        )
        return subs[-1][1]


def _initial_state(model, x0) -> tuple:
    x = tuple(model.initial_state) if x0 is None else tuple(float(v) for v in x0)
    if len(x) != model.state_dim:
        raise ConfigError(
            f"initial state has {len(x)} components, model expects {model.state_dim}"
        )
    return x


def simulate(model, drive: Drive, controls: SimControls, x0=None) -> Trajectory:
    """Integrate through the transient and return the recorded cycles.

    The trajectory holds record_cycles full drive periods (first sample on a
    period boundary, both endpoint samples included) with phi and q zeroed at
    the first retained sample. Raises BlowUpError if the state leaves the
    finite range.
    """
    check_compatible(model, drive)
    period = drive.period
    dt, n = resolve_step(controls, period)
    event_tol = _resolve_event_tol(controls, dt)
    engine = _Engine(model, drive, dt, event_tol)

    x = _initial_state(model, x0)
    total_steps = n * (controls.transient_cycles + controls.record_cycles)
    first_kept = n * controls.transient_cycles
    kept = total_steps - first_kept + 1

    t_arr = np.empty(kept)
    u_arr = np.empty(kept)
    y_arr = np.empty(kept)
    state_arr = np.empty((kept, model.state_dim))

    def record(idx: int, t: float, state: tuple):
        u = drive.value(t)
        t_arr[idx] = t
        u_arr[idx] = u
        y_arr[idx] = model.output(state, u, t)
        state_arr[idx] = state

    if first_kept == 0:
        record(0, 0.0, x)
    for k in range(total_steps):
        t1 = (k + 1) * dt
        try:
            x = engine.grid_step(x, k * dt, t1)
        except OverflowError:
            raise BlowUpError(f"state overflow at t = {t1}", t1) from None
        for xi in x:
            if not math.isfinite(xi):
                raise BlowUpError(f"state became non-finite at t = {t1}", t1)
        if k + 1 >= first_kept:
            try:
                record(k + 1 - first_kept, t1, x)
            except (OverflowError, ModelEvaluationError) as exc:
                raise BlowUpError(f"output not finite at t = {t1}: {exc}", t1) from None

    v_arr, i_arr = terminal_pair(model.input_kind, u_arr, y_arr)
    traj = Trajectory(
        dt=dt,
        t=t_arr,
        u=u_arr,
        y=y_arr,
        v=v_arr,
        i=i_arr,
        state=state_arr,
        steps_per_cycle=n,
    )
    return accumulate_integrals(traj)


def _cycle_residual(prev: np.ndarray, cur: np.ndarray) -> float:
    worst = 0.0
    for j in range(prev.shape[1]):
        scale = max(np.max(np.abs(prev[:, j])), np.max(np.abs(cur[:, j])))
        if scale == 0.0:
            continue
        worst = max(worst, np.max(np.abs(cur[:, j] - prev[:, j])) / scale)
    return float(worst)


def detect_steady_state(model, drive: Drive, controls: SimControls, x0=None) -> Trajectory:
    """March cycle by cycle until consecutive cycles agree on the state.

    Convergence is judged on the state vector only (not on the integrals):
    max relative difference between corresponding samples of consecutive
    cycles below steady_state_rel_tol. Returns the first steady cycle (the
    earlier cycle of the first matching pair). Gives up with SteadyStateError
    after max(2, 10 * transient_cycles) cycles.
    """
    check_compatible(model, drive)
    period = drive.period
    dt, n = resolve_step(controls, period)
    event_tol = _resolve_event_tol(controls, dt)
    engine = _Engine(model, drive, dt, event_tol)
    budget = max(2, 10 * controls.transient_cycles)

    x = _initial_state(model, x0)
    prev: dict | None = None
    last_residual = math.inf
    for c in range(budget):
        base = c * n
        t_arr = np.empty(n + 1)
        u_arr = np.empty(n + 1)
        y_arr = np.empty(n + 1)
        state_arr = np.empty((n + 1, model.state_dim))
        for k in range(n + 1):
            t = (base + k) * dt
            if k > 0:
                try:
                    x = engine.grid_step(x, (base + k - 1) * dt, t)
                except OverflowError:
                    raise BlowUpError(f"state overflow at t = {t}", t) from None
                for xi in x:
                    if not math.isfinite(xi):
                        raise BlowUpError(f"state became non-finite at t = {t}", t)
            u = drive.value(t)
            t_arr[k] = t
            u_arr[k] = u
            try:
                y_arr[k] = model.output(x, u, t)
            except (OverflowError, ModelEvaluationError) as exc:
                raise BlowUpError(f"output not finite at t = {t}: {exc}", t) from None
            state_arr[k] = x
        cycle = {"t": t_arr, "u": u_arr, "y": y_arr, "state": state_arr}
        if prev is not None:
            last_residual = _cycle_residual(prev["state"], state_arr)
            if last_residual < controls.steady_state_rel_tol:
                v_arr, i_arr = terminal_pair(model.input_kind, prev["u"], prev["y"])
                traj = Trajectory(
                    dt=dt,
                    t=prev["t"],
                    u=prev["u"],
                    y=prev["y"],
                    v=v_arr,
                    i=i_arr,
                    state=prev["state"],
                    steps_per_cycle=n,
                )
                return accumulate_integrals(traj)
        prev = cycle
    raise SteadyStateError(
        f"no steady state within {budget} cycles; last residual {last_residual:.3e}",
        last_residual,
    )
