"""Domain types for driven one-ports: drives, models, trajectories, integrals.

A memristive one-port produces y = g(x, u, t) * u, so the output is forced to
zero whenever the input is zero. The capacitor-augmented circuit breaks that
factorization and is represented by the generic OnePort instead.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np


class MemlabError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(MemlabError):
    """Invalid experiment configuration: bad parameters, kind mismatch, bad dt."""


class ModelEvaluationError(MemlabError):
    """A model produced a non-finite output factor at some evaluation point."""

    def __init__(self, message: str, state, u: float, t: float):
        super().__init__(message)
        self.state = tuple(state)
        self.u = u
        self.t = t


class SignalKind(enum.Enum):
    """Terminal quantity a source imposes or a model takes as input."""

    CURRENT = "current"
    VOLTAGE = "voltage"


# ---------------------------------------------------------------------------
# drives


@dataclass(frozen=True)
class Sinusoid:
    amplitude: float
    frequency: float
    phase: float = 0.0

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ConfigError("sinusoid amplitude must be >= 0")
        if self.frequency <= 0.0:
            raise ConfigError("sinusoid frequency must be > 0")

    def value(self, t: float) -> float:
        return self.amplitude * math.sin(2.0 * math.pi * self.frequency * t + self.phase)

    def breakpoint_offsets(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class SquareWave:
    """Bipolar square pulse train: +amplitude for the duty fraction, then -amplitude."""

    amplitude: float
    frequency: float
    duty: float = 0.5

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ConfigError("square wave amplitude must be >= 0")
        if self.frequency <= 0.0:
            raise ConfigError("square wave frequency must be > 0")
        if not 0.0 < self.duty <= 1.0:
            raise ConfigError("square wave duty must be in (0, 1]")

    def value(self, t: float) -> float:
        period = 1.0 / self.frequency
        s = math.fmod(t, period)
        if s < 0.0:
            s += period
        return self.amplitude if s < self.duty * period else -self.amplitude

    def breakpoint_offsets(self) -> tuple[float, ...]:
        # level switches at k*T and (k+duty)*T; duty=1 has only period boundaries
        if self.duty >= 1.0:
            return (0.0,)
        return (0.0, self.duty / self.frequency)


Waveform = Sinusoid | SquareWave


@dataclass(frozen=True)
class Drive:
    """A periodic one-port source: what it imposes (current or voltage) and how."""

    kind: SignalKind
    waveform: Waveform

    @property
    def period(self) -> float:
        return 1.0 / self.waveform.frequency

    @property
    def frequency(self) -> float:
        return self.waveform.frequency

    @property
    def amplitude(self) -> float:
        return self.waveform.amplitude

    def value(self, t: float) -> float:
        return self.waveform.value(t)

    def with_frequency(self, frequency: float) -> "Drive":
        return Drive(self.kind, replace(self.waveform, frequency=frequency))

    def breakpoint_offsets(self) -> tuple[float, ...]:
        return self.waveform.breakpoint_offsets()


# ---------------------------------------------------------------------------
# one-port models

StateFn = Callable[[tuple, float, float], tuple]
ScalarFn = Callable[[tuple, float, float], float]


@dataclass(frozen=True, eq=False)
class MemristiveOnePort:
    """State equation dx/dt = f(x, u, t) with resistive output y = g(x, u, t) * u.

    threshold_component/thresholds and breakpoint_period/breakpoint_offsets are
    event metadata for the integrator: crossings of a monitored state component
    and periodic time discontinuities where step splitting is required.
    """

    input_kind: SignalKind
    state_dim: int
    f: StateFn
    g: ScalarFn
    initial_state: tuple[float, ...]
    name: str = "one-port"
    threshold_component: int | None = None
    thresholds: tuple[float, ...] = ()
    breakpoint_period: float | None = None
    breakpoint_offsets: tuple[float, ...] = ()

    def output(self, x, u: float, t: float) -> float:
        return evaluate_output(self, x, u, t)


@dataclass(frozen=True, eq=False)
class OnePort:
    """Generic driven one-port whose output map is not a resistive factor."""

    input_kind: SignalKind
    state_dim: int
    f: StateFn
    output_fn: ScalarFn
    initial_state: tuple[float, ...]
    name: str = "one-port"
    threshold_component: int | None = None
    thresholds: tuple[float, ...] = ()
    breakpoint_period: float | None = None
    breakpoint_offsets: tuple[float, ...] = ()

    def output(self, x, u: float, t: float) -> float:
        return self.output_fn(x, u, t)


def evaluate_output(model: MemristiveOnePort, x, u: float, t: float) -> float:
    """Evaluate y = g(x, u, t) * u; exactly 0 whenever u = 0.

    Raises ModelEvaluationError if the output factor is not finite at (x, u, t).
    """
    if len(x) != model.state_dim:
        raise ValueError(
            f"state has {len(x)} components, model {model.name!r} expects {model.state_dim}"
        )
    if not (math.isfinite(u) and math.isfinite(t)):
        raise ValueError("input and time must be finite")
    g = model.g(x, u, t)
    if not math.isfinite(g):
        raise ModelEvaluationError(
            f"model {model.name!r}: non-finite output factor at t={t!r}", x, u, t
        )
    return g * u


# ---------------------------------------------------------------------------
# trajectories


@dataclass(eq=False)
class Trajectory:
    """Uniformly sampled simulation record.

    Columns share one time grid: u is the applied input, y the model output,
    (v, i) the same two signals mapped to terminal voltage and current. phi and
    q are running trapezoid integrals of v and i, zeroed at the first sample.
    steps_per_cycle is the number of grid steps per drive period.
    """

    dt: float
    t: np.ndarray
    u: np.ndarray
    y: np.ndarray
    v: np.ndarray
    i: np.ndarray
    state: np.ndarray
    phi: np.ndarray | None = None
    q: np.ndarray | None = None
    steps_per_cycle: int | None = None

    def __post_init__(self):
        n = len(self.t)
        for name in ("u", "y", "v", "i"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"column {name} length differs from t")
        if self.state.shape[0] != n:
            raise ValueError("state row count differs from t")

    def __len__(self) -> int:
        return len(self.t)

    @property
    def n_cycles(self) -> int:
        if self.steps_per_cycle is None:
            raise ValueError("trajectory has no cycle metadata")
        return (len(self.t) - 1) // self.steps_per_cycle

    def window(self, start: int, stop: int) -> "Trajectory":
        """Slice samples [start:stop]; integrals are kept, not re-zeroed."""
        sl = slice(start, stop)
        return Trajectory(
            dt=self.dt,
            t=self.t[sl],
            u=self.u[sl],
            y=self.y[sl],
            v=self.v[sl],
            i=self.i[sl],
            state=self.state[sl],
            phi=None if self.phi is None else self.phi[sl],
            q=None if self.q is None else self.q[sl],
            steps_per_cycle=self.steps_per_cycle,
        )

    def cycle(self, k: int) -> "Trajectory":
        """One full cycle (both endpoints included): samples [k*n, (k+1)*n]."""
        n = self.steps_per_cycle
        if n is None:
            raise ValueError("trajectory has no cycle metadata")
        if not 0 <= k < self.n_cycles:
            raise IndexError(f"cycle {k} out of range (have {self.n_cycles})")
        return self.window(k * n, (k + 1) * n + 1)


def _cumtrapz(values: np.ndarray, dt: float) -> np.ndarray:
    out = np.empty(len(values))
    out[0] = 0.0
    np.cumsum(0.5 * dt * (values[1:] + values[:-1]), out=out[1:])
    return out


def accumulate_integrals(traj: Trajectory) -> Trajectory:
    """Fill phi and q with running trapezoid integrals of v and i from sample 0."""
    if len(traj) < 2:
        raise ValueError("need at least two samples to integrate")
    steps = np.diff(traj.t)
    if np.max(np.abs(steps - traj.dt)) > 1e-9 * traj.dt:
        raise ValueError("non-uniform timestamps; trajectory grid must be uniform")
    return replace(traj, phi=_cumtrapz(traj.v, traj.dt), q=_cumtrapz(traj.i, traj.dt))


def terminal_pair(kind: SignalKind, u: np.ndarray, y: np.ndarray):
    """Map (input, output) arrays to (v, i) for the given input kind."""
    if kind is SignalKind.CURRENT:
        return y, u
    return u, y
