import math

import numpy as np
import pytest

from memlab import (
    BlowUpError,
    ConfigError,
    Drive,
    MemristiveOnePort,
    SignalKind,
    SimControls,
    Sinusoid,
    SquareWave,
    SteadyStateError,
    SwitchedNetworkParams,
    axon,
    detect_steady_state,
    locate_events,
    resolve_step,
    simulate,
    switched_network,
    thermistor,
)


def test_controls_validation():
    with pytest.raises(ConfigError):
        SimControls(dt=0.0)
    with pytest.raises(ConfigError):
        SimControls(transient_cycles=-1)
    with pytest.raises(ConfigError):
        SimControls(record_cycles=0)
    with pytest.raises(ConfigError):
        SimControls(steady_state_rel_tol=0.0)


def test_resolve_step_default():
    dt, n = resolve_step(SimControls(), 10.0)
    assert n == 2000
    assert dt == pytest.approx(0.005)


def test_resolve_step_rounds_to_even_divisor():
    dt, n = resolve_step(SimControls(dt=0.03), 10.0)
    assert n % 2 == 0
    assert n * dt == pytest.approx(10.0)
    assert dt <= 0.03 * (1 + 1e-12)


def test_resolve_step_caps_coarse_steps():
    with pytest.raises(ConfigError):
        resolve_step(SimControls(dt=0.051), 10.0)
    # right at the cap is allowed
    dt, n = resolve_step(SimControls(dt=0.05), 10.0)
    assert n == 200


def test_event_tolerance_must_be_below_dt():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1e-4, frequency=0.1))
    with pytest.raises(ConfigError):
        simulate(m, d, SimControls(event_tolerance=0.005, record_cycles=1))


def test_kind_mismatch_rejected():
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1.0, frequency=1.0))
    with pytest.raises(ConfigError):
        simulate(axon(), d, SimControls())


def test_initial_state_dimension_checked():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1e-4, frequency=0.1))
    with pytest.raises(ConfigError):
        simulate(m, d, SimControls(), x0=(298.0, 0.0))


# ---------------------------------------------------------------------------
# locate_events


def _linear_step(x, a, b):
    # exact flow of dx/dt = 1
    return (x[0] + (b - a),)


def test_locate_events_finds_threshold_crossing():
    pts = locate_events(
        _linear_step, (0.0,), 0.0, 1.0,
        monitor=0, thresholds=(0.5,), event_tol=1e-9,
    )
    # one split point at the crossing plus the interval end
    assert len(pts) == 2
    t_ev, x_ev = pts[0]
    assert t_ev == pytest.approx(0.5, abs=1e-8)
    assert x_ev[0] >= 0.5  # landed on the crossed side
    assert pts[-1][0] == pytest.approx(1.0)
    assert pts[-1][1][0] == pytest.approx(1.0, abs=1e-12)


def test_locate_events_multiple_thresholds():
    pts = locate_events(
        _linear_step, (0.0,), 0.0, 1.0,
        monitor=0, thresholds=(0.25, 0.75), event_tol=1e-9,
    )
    times = [t for t, _ in pts]
    assert times[0] == pytest.approx(0.25, abs=1e-8)
    assert times[1] == pytest.approx(0.75, abs=1e-8)


def test_locate_events_splits_at_time_breaks():
    pts = locate_events(
        _linear_step, (0.0,), 0.0, 1.0,
        time_breaks=(0.3, 0.7), event_tol=1e-9,
    )
    times = [t for t, _ in pts]
    assert times == pytest.approx([0.3, 0.7, 1.0])
    assert pts[-1][1][0] == pytest.approx(1.0, abs=1e-12)


def test_locate_events_no_events_single_step():
    pts = locate_events(_linear_step, (0.0,), 2.0, 0.5, event_tol=1e-9)
    assert len(pts) == 1
    assert pts[0][0] == pytest.approx(2.5)


# ---------------------------------------------------------------------------
# simulate


def test_simulate_grid_layout():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1e-4, frequency=0.1))
    traj = simulate(m, d, SimControls(transient_cycles=1, record_cycles=2))
    assert traj.steps_per_cycle == 2000
    assert len(traj) == 2 * 2000 + 1
    assert traj.t[0] == pytest.approx(10.0)  # transient cycle skipped
    assert traj.t[-1] == pytest.approx(30.0)
    dts = np.diff(traj.t)
    assert np.max(np.abs(dts - traj.dt)) < 1e-9 * traj.dt
    assert traj.phi[0] == 0.0 and traj.q[0] == 0.0


def test_simulate_records_initial_sample_without_transient():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=0.0, frequency=0.1))
    traj = simulate(m, d, SimControls(transient_cycles=0, record_cycles=1), x0=(305.0,))
    assert traj.t[0] == 0.0
    assert traj.state[0, 0] == 305.0


def test_simulate_cooling_matches_closed_form():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=0.0, frequency=0.1))
    traj = simulate(m, d, SimControls(transient_cycles=0, record_cycles=1), x0=(308.0,))
    exact = 298.0 + 10.0 * np.exp(-0.1 * traj.t)
    assert np.max(np.abs(traj.state[:, 0] - exact)) < 1e-10


def test_simulate_is_deterministic():
    m = switched_network(SwitchedNetworkParams(q0=0.2893726238034461))
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1.0, frequency=0.1))
    c = SimControls(transient_cycles=1, record_cycles=1)
    a = simulate(m, d, c)
    b = simulate(m, d, c)
    assert np.array_equal(a.state, b.state)
    assert np.array_equal(a.y, b.y)
    assert np.array_equal(a.phi, b.phi)


def test_blow_up_detected():
    grow = MemristiveOnePort(
        input_kind=SignalKind.CURRENT,
        state_dim=1,
        f=lambda x, u, t: (x[0] * x[0],),
        g=lambda x, u, t: 1.0,
        initial_state=(1.0,),
        name="finite-time blowup",
    )
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1.0, frequency=0.25))
    with pytest.raises(BlowUpError) as exc:
        simulate(grow, d, SimControls(transient_cycles=0, record_cycles=1))
    assert 0.0 < exc.value.time <= 4.0


def test_stiff_step_instability_is_a_blow_up():
    # legal step size (exactly period/200) but far beyond the stability
    # bound of the thermal relaxation rate, so the integration explodes
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=5e-4, frequency=1e-6))
    with pytest.raises(BlowUpError):
        simulate(m, d, SimControls(dt=5000.0, transient_cycles=0, record_cycles=1))


def test_switch_events_land_within_a_step_of_the_exact_time():
    q0 = 0.2893726238034461
    m = switched_network(SwitchedNetworkParams(q0=q0))
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1.0, frequency=0.1))
    traj = simulate(m, d, SimControls(transient_cycles=0, record_cycles=1))
    w = 2.0 * math.pi * 0.1
    # first threshold crossing: q(t) = (A/w)(1 - cos) = q0
    t_exact = math.acos(1.0 - q0 * w) / w
    mask = np.abs(traj.i) > 0.01
    r = traj.y[mask] / traj.i[mask]  # resistance samples away from i = 0
    tm = traj.t[mask]
    t_first = tm[int(np.argmax(r < 3.85))]
    assert abs(t_first - t_exact) <= traj.dt


# ---------------------------------------------------------------------------
# detect_steady_state


def test_detect_steady_state_thermistor():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=5e-4, frequency=0.01))
    traj = detect_steady_state(m, d, SimControls(transient_cycles=2, steady_state_rel_tol=1e-8))
    assert traj.steps_per_cycle == 2000
    assert len(traj) == 2001
    # the returned cycle really is periodic in the state
    assert traj.state[0, 0] == pytest.approx(traj.state[-1, 0], rel=1e-6)
    assert traj.phi[0] == 0.0


def test_detect_steady_state_gives_up_on_drift():
    drift = MemristiveOnePort(
        input_kind=SignalKind.CURRENT,
        state_dim=1,
        f=lambda x, u, t: (1.0,),
        g=lambda x, u, t: 1.0,
        initial_state=(0.0,),
        name="ramp",
    )
    d = Drive(SignalKind.CURRENT, Sinusoid(amplitude=1.0, frequency=1.0))
    with pytest.raises(SteadyStateError) as exc:
        detect_steady_state(drift, d, SimControls(transient_cycles=0))
    assert exc.value.residual > 0.0


def test_dc_drive_square_full_duty():
    m = thermistor()
    d = Drive(SignalKind.CURRENT, SquareWave(amplitude=1e-3, frequency=0.01, duty=1.0))
    traj = simulate(m, d, SimControls(transient_cycles=1, record_cycles=1))
    assert np.all(traj.i == 1e-3)
    assert np.all(np.diff(traj.state[:, 0]) >= -1e-12)  # monotone heating
