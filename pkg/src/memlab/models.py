"""Concrete one-port models: self-heating thermistor, potassium channel,
switched-resistor chains, and the capacitor-augmented chain.

Parameter defaults reproduce the headline device values; every builder returns
a one-port ready for integrate.simulate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import ConfigError, MemristiveOnePort, OnePort, SignalKind

# ---------------------------------------------------------------------------
# thermistor with thermal memory


@dataclass(frozen=True)
class ThermistorParams:
    """NTC thermistor with Joule self-heating.

    delta: dissipation constant [W/K], r0: cold resistance [ohm] at t0 [K],
    beta: exponential sensitivity [K], c: heat capacitance [J/K].
    """

    delta: float = 1e-4
    r0: float = 8000.0
    t0: float = 298.0
    beta: float = 3460.0
    c: float = 1e-3

    def __post_init__(self):
        for name in ("delta", "r0", "t0", "beta", "c"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"thermistor parameter {name} must be > 0")


def thermistor_resistance(params: ThermistorParams, temperature: float) -> float:
    """R(T) = r0 * exp(beta * (1/T - 1/t0)); decreasing in T."""
    if temperature <= 0.0:
        raise ValueError("temperature must be > 0 K")
    return params.r0 * math.exp(params.beta * (1.0 / temperature - 1.0 / params.t0))


def thermistor_state_deriv(params: ThermistorParams, temperature: float, current: float) -> float:
    """dT/dt: Newton cooling toward ambient plus Joule heating R(T) i^2 / c."""
    r = thermistor_resistance(params, temperature)
    return (
        -(params.delta / params.c) * (temperature - params.t0)
        + (r / params.c) * current * current
    )


def thermistor_equilibrium_temperature(
    params: ThermistorParams,
    i_dc: float,
    *,
    bracket: float = 500.0,
    residual_tol: float = 1e-12,
) -> float:
    """Settled temperature under constant current: delta*(T - t0) = R(T)*i^2.

    Bracketing plus bisection until the power residual is below residual_tol
    (watts). i_dc = 0 returns t0 exactly.
    """
    i_sq = i_dc * i_dc
    if i_sq == 0.0:
        return params.t0

    def residual(temp: float) -> float:
        return params.delta * (temp - params.t0) - thermistor_resistance(params, temp) * i_sq

    lo = params.t0
    hi = params.t0 + bracket
    if residual(hi) <= 0.0:
        raise ConfigError(
            f"no thermal equilibrium below {hi} K for i = {i_dc} A; widen the bracket"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = residual(mid)
        if abs(r) < residual_tol:
            return mid
        if r > 0.0:
            hi = mid
        else:
            lo = mid
    raise ConfigError("equilibrium bisection failed to reach the residual tolerance")


def thermistor(params: ThermistorParams = ThermistorParams()) -> MemristiveOnePort:
    """Current-controlled thermistor; state is (T,), started at ambient."""
    delta_over_c = params.delta / params.c
    inv_t0 = 1.0 / params.t0
    r0, beta, c, t0 = params.r0, params.beta, params.c, params.t0

    def f(x, u, t):
        temp = x[0]
        r = r0 * math.exp(beta * (1.0 / temp - inv_t0))
        return (delta_over_c * (t0 - temp) + (r / c) * u * u,)

    def g(x, u, t):
        return r0 * math.exp(beta * (1.0 / x[0] - inv_t0))

    return MemristiveOnePort(
        input_kind=SignalKind.CURRENT,
        state_dim=1,
        f=f,
        g=g,
        initial_state=(t0,),
        name="thermistor",
    )


# ---------------------------------------------------------------------------
# potassium channel conductance


@dataclass(frozen=True)
class AxonParams:
    """First-order gating of a K+ channel conductance g_k * x1^4.

    e_k: resting offset [V], gamma [1/(V s)], v_hat [V], tau [s] set the gate
    opening and closing rates.
    """

    g_k: float = 36.0
    e_k: float = 10.0
    gamma: float = 0.01
    v_hat: float = 10.0
    tau: float = 8.0

    def __post_init__(self):
        for name in ("g_k", "e_k", "gamma", "v_hat", "tau"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"axon parameter {name} must be > 0")


def axon_conductance(params: AxonParams, x1: float) -> float:
    """Channel conductance g_k * x1^4."""
    return params.g_k * x1 ** 4


def axon_gate_rates(
    params: AxonParams, v_k: float, *, hh_denominator: bool = False
) -> tuple[float, float]:
    """Opening and closing rates (a, b) of the gate at membrane voltage v_k.

    The default opening rate is gamma*(v_k+e_k) / exp((v_k+e_k)/v_hat - 1),
    whose denominator never vanishes. hh_denominator=True switches to the
    classical exp(.)-1 denominator, with its removable pole handled by the
    series limit gamma*v_hat.
    """
    d = v_k + params.e_k
    if hh_denominator:
        z = d / params.v_hat
        if abs(z) < 1e-8:
            a = params.gamma * params.v_hat
        else:
            a = params.gamma * d / (math.exp(z) - 1.0)
    else:
        a = params.gamma * d * math.exp(1.0 - d / params.v_hat)
    b = (1.0 / params.tau) * math.exp(d / (8.0 * params.v_hat))
    return a, b


def axon_state_deriv(
    params: AxonParams, x1: float, v_k: float, *, hh_denominator: bool = False
) -> float:
    """dx1/dt = a(v_k)*(1 - x1) - b(v_k)*x1."""
    a, b = axon_gate_rates(params, v_k, hh_denominator=hh_denominator)
    return a * (1.0 - x1) - b * x1


def axon(params: AxonParams = AxonParams(), *, hh_denominator: bool = False) -> MemristiveOnePort:
    """Voltage-controlled channel; state (x1,) starts at its v=0 fixed point a/(a+b)."""
    g_k = params.g_k

    def f(x, u, t):
        a, b = axon_gate_rates(params, u, hh_denominator=hh_denominator)
        x1 = x[0]
        return (a * (1.0 - x1) - b * x1,)

    def g(x, u, t):
        x1 = x[0]
        return g_k * x1 * x1 * x1 * x1

    a0, b0 = axon_gate_rates(params, 0.0, hh_denominator=hh_denominator)
    return MemristiveOnePort(
        input_kind=SignalKind.VOLTAGE,
        state_dim=1,
        f=f,
        g=g,
        initial_state=(a0 / (a0 + b0),),
        name="axon",
    )


# ---------------------------------------------------------------------------
# charge-switched resistor chain


@dataclass(frozen=True)
class PiecewiseR1:
    """Series resistor that alternates between two values each half period.

    Value is high on (0, period/2] and low on (period/2, period], repeating;
    t = 0 belongs to the high branch.
    """

    high: float = 3.0
    low: float = 1.0
    period: float = 10.0

    def __post_init__(self):
        if self.high <= 0.0 or self.low <= 0.0:
            raise ConfigError("piecewise r1 levels must be > 0")
        if self.period <= 0.0:
            raise ConfigError("piecewise r1 period must be > 0")


@dataclass(frozen=True)
class SwitchedNetworkParams:
    """Series resistor r1 plus n_switches branch resistors, each shorted by a
    charge-controlled switch. Switch i closes at q >= i*q0 and opens at
    q <= i*q0, so the closed count is memoryless: clamp(floor(q/q0), 0, n).
    """

    q0: float
    r1: float | PiecewiseR1 = 1.0
    r_branch: float = 0.3
    n_switches: int = 10

    def __post_init__(self):
        if self.q0 <= 0.0:
            raise ConfigError("q0 must be > 0")
        if isinstance(self.r1, (int, float)) and self.r1 <= 0.0:
            raise ConfigError("r1 must be > 0")
        if self.r_branch <= 0.0:
            raise ConfigError("r_branch must be > 0")
        if self.n_switches < 1:
            raise ConfigError("n_switches must be >= 1")


def r1_of_t(params: SwitchedNetworkParams, t: float) -> float:
    """Series resistor value at time t (constant or half-period alternating)."""
    r1 = params.r1
    if isinstance(r1, PiecewiseR1):
        s = math.fmod(t, r1.period)
        if s < 0.0:
            s += r1.period
        return r1.high if s <= 0.5 * r1.period else r1.low
    return r1


def closed_switch_count(params: SwitchedNetworkParams, q: float) -> int:
    """Number of shorting switches closed at charge q."""
    k = math.floor(q / params.q0)
    if k < 0:
        return 0
    if k > params.n_switches:
        return params.n_switches
    return int(k)


def switched_resistance(params: SwitchedNetworkParams, q: float, t: float) -> float:
    """Total series resistance r1(t) + (n - closed(q)) * r_branch."""
    return r1_of_t(params, t) + (params.n_switches - closed_switch_count(params, q)) * params.r_branch


def switch_thresholds(params: SwitchedNetworkParams) -> tuple[float, ...]:
    """Charges i*q0 at which switch i toggles, i = 1..n."""
    return tuple(i * params.q0 for i in range(1, params.n_switches + 1))


def _r1_breakpoints(params: SwitchedNetworkParams) -> tuple[float | None, tuple[float, ...]]:
    r1 = params.r1
    if isinstance(r1, PiecewiseR1):
        return r1.period, (0.0, 0.5 * r1.period)
    return None, ()


def switched_network(params: SwitchedNetworkParams) -> MemristiveOnePort:
    """Current-controlled chain; state (q,) is the charge through the chain."""
    bp_period, bp_offsets = _r1_breakpoints(params)

    def f(x, u, t):
        return (u,)

    def g(x, u, t):
        return switched_resistance(params, x[0], t)

    return MemristiveOnePort(
        input_kind=SignalKind.CURRENT,
        state_dim=1,
        f=f,
        g=g,
        initial_state=(0.0,),
        name="switched-network",
        threshold_component=0,
        thresholds=switch_thresholds(params),
        breakpoint_period=bp_period,
        breakpoint_offsets=bp_offsets,
    )


# ---------------------------------------------------------------------------
# capacitor-augmented chain


@dataclass(frozen=True)
class CapacitorCircuitParams:
    """Capacitor cap [F] in parallel with r1; that block feeds the switched
    chain in series. The switches respond to the charge through r1 only.
    """

    base: SwitchedNetworkParams
    cap: float = 0.1

    def __post_init__(self):
        if self.cap <= 0.0:
            raise ConfigError("cap must be > 0")


def capacitor_circuit_deriv(
    params: CapacitorCircuitParams, state: tuple, i_s: float, t: float
) -> tuple[float, float]:
    """(dv_c/dt, dq_r1/dt) for source current i_s; i_r1 = v_c / r1(t)."""
    v_c, _q_r1 = state
    i_r1 = v_c / r1_of_t(params.base, t)
    return ((i_s - i_r1) / params.cap, i_r1)


def capacitor_circuit(params: CapacitorCircuitParams) -> OnePort:
    """Current-driven circuit with state (v_c, q_r1); output voltage is
    v_c plus the switched chain drop (n - closed(q_r1)) * r_branch * i_s.
    """
    base = params.base
    cap = params.cap
    r_branch = base.r_branch
    n = base.n_switches
    bp_period, bp_offsets = _r1_breakpoints(base)

    def f(x, u, t):
        v_c = x[0]
        i_r1 = v_c / r1_of_t(base, t)
        return ((u - i_r1) / cap, i_r1)

    def output(x, u, t):
        chain = (n - closed_switch_count(base, x[1])) * r_branch
        return x[0] + chain * u

    return OnePort(
        input_kind=SignalKind.CURRENT,
        state_dim=2,
        f=f,
        output_fn=output,
        initial_state=(0.0, 0.0),
        name="capacitor-circuit",
        threshold_component=1,
        thresholds=switch_thresholds(base),
        breakpoint_period=bp_period,
        breakpoint_offsets=bp_offsets,
    )
