import math
import random

import pytest

from memlab import (
    ConfigError,
    ParseError,
    SignalKind,
    Sinusoid,
    SquareWave,
    build_model,
    builtin_presets,
    parse_experiment,
    preset_names,
    preset_source,
    serialize_experiment,
)

MINIMAL = """
experiment demo
model thermistor { r0 = 8 kOhm }
drive current sinusoid { amplitude = 0.5 mA  frequency = 10 mHz }
"""


def test_parse_minimal_with_defaults():
    cfg = parse_experiment(MINIMAL)
    assert cfg.name == "demo"
    assert cfg.model_kind == "thermistor"
    assert cfg.model_params["r0"] == 8000.0
    assert cfg.model_params["beta"] == 3460.0  # defaulted
    assert cfg.drive.kind is SignalKind.CURRENT
    assert cfg.drive.amplitude == pytest.approx(5e-4)
    assert cfg.drive.frequency == pytest.approx(0.01)
    assert cfg.controls.transient_cycles == 2  # defaults
    assert cfg.csv_path == "demo.csv" and cfg.json_path == "demo.json"
    assert any("beta" in w for w in cfg.warnings)


def test_comments_and_one_line_form():
    cfg = parse_experiment(
        'experiment oneliner model thermistor { } # tail comment\n'
        'drive current sinusoid { amplitude = 1 A frequency = 1 Hz } '
        'sim { record_cycles = 1 } output csv "a.csv"'
    )
    assert cfg.name == "oneliner"
    assert cfg.json_path is None
    assert cfg.csv_path == "a.csv"


def test_unit_scaling():
    cfg = parse_experiment(
        "experiment u model thermistor { delta = 0.1 mW/K  c = 1 mJ/K }\n"
        "drive current sinusoid { amplitude = 2 mA  frequency = 5 uHz }"
    )
    assert cfg.model_params["delta"] == pytest.approx(1e-4)
    assert cfg.model_params["c"] == pytest.approx(1e-3)
    assert cfg.drive.amplitude == pytest.approx(2e-3)
    assert cfg.drive.frequency == pytest.approx(5e-6)


def test_unknown_unit_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_experiment(
            "experiment u model thermistor { c = 1 mW }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }"
        )
    assert "mW" in str(exc.value)
    assert exc.value.line == 1


def test_attached_unit_suffix():
    cfg = parse_experiment(
        "experiment u model thermistor { }\n"
        "drive current sinusoid { amplitude = 0.5mA frequency = 10mHz }"
    )
    assert cfg.drive.amplitude == pytest.approx(5e-4)


@pytest.mark.parametrize(
    "src, needle",
    [
        ("model thermistor { }", "missing drive"),
        ("drive current sinusoid { amplitude = 1 A frequency = 1 Hz }", "missing model"),
        (
            "model thermistor { } model thermistor { }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "duplicate block",
        ),
        (
            "model thermistor { r0 = 1 r0 = 2 }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "duplicate key",
        ),
        (
            "model thermistor { bogus = 1 }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "unknown key",
        ),
        (
            "model gyrator { }\ndrive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "unknown model kind",
        ),
        (
            "model thermistor { }\ndrive current sinusoid { frequency = 1 Hz }",
            "missing 'amplitude'",
        ),
        (
            "model thermistor { }\ndrive current sinusoid { amplitude = 1 A frequency = 1 Hz }\n"
            "analyze { pinch wavelets }",
            "unknown analysis",
        ),
        (
            "model thermistor { }\ndrive current sinusoid { amplitude = 1 A frequency = 1 Hz }\n"
            "sim { transient_cycles = 1.5 }",
            "integer",
        ),
        (
            "model thermistor { }\ndrive current sinusoid { amplitude = -1 A frequency = 1 Hz }",
            "amplitude",
        ),
        (
            "model switched { q0 = 0.1 r1 = 1 r1_high = 3 }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "conflicts",
        ),
        (
            "model switched { q0 = 0.1 r1_high = 3 }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }",
            "r1_low",
        ),
    ],
)
def test_validation_errors(src, needle):
    with pytest.raises(ParseError) as exc:
        parse_experiment("experiment bad\n" + src)
    assert needle in str(exc.value)


def test_kind_mismatch_points_at_drive():
    with pytest.raises(ParseError) as exc:
        parse_experiment(
            "experiment bad\nmodel axon { }\n"
            "drive current sinusoid { amplitude = 1 A frequency = 1 Hz }"
        )
    assert "voltage" in str(exc.value)
    assert exc.value.line == 3


def test_lexer_errors():
    with pytest.raises(ParseError):
        parse_experiment('experiment x output csv "unterminated')
    with pytest.raises(ParseError):
        parse_experiment("experiment x @")


def test_q0_is_derived_from_the_drive_when_missing():
    cfg = parse_experiment(
        "experiment d\nmodel switched { }\n"
        "drive current sinusoid { amplitude = 1 A  frequency = 0.1 Hz }"
    )
    expected = 2.0 / (11 * 2.0 * math.pi * 0.1)
    assert cfg.model_params["q0"] == pytest.approx(expected, rel=1e-12)
    assert any("q0" in w for w in cfg.warnings)


def test_square_drive_and_duty():
    cfg = parse_experiment(
        "experiment s\nmodel thermistor { }\n"
        "drive current square { amplitude = 1 mA  frequency = 0.01 Hz  duty = 1 }"
    )
    assert isinstance(cfg.drive.waveform, SquareWave)
    assert cfg.drive.waveform.duty == 1.0
    # phase belongs to sinusoids only
    with pytest.raises(ParseError):
        parse_experiment(
            "experiment s\nmodel thermistor { }\n"
            "drive current square { amplitude = 1 mA frequency = 1 Hz phase = 0 }"
        )


def test_sweep_frequencies_parse():
    cfg = parse_experiment(
        "experiment s\nmodel switched { q0 = 0.1 }\n"
        "drive current sinusoid { amplitude = 1 A frequency = 0.1 Hz }\n"
        "analyze { loop_area sweep(0.1 Hz, 200 mHz, 0.4) }"
    )
    assert cfg.sweep_frequencies == pytest.approx((0.1, 0.2, 0.4))
    assert cfg.analyses == ("loop_area",)


def test_preset_catalogue():
    names = preset_names()
    assert len(names) == 9
    assert names == sorted(names)
    cfgs = builtin_presets()
    for name, cfg in cfgs.items():
        assert cfg.name == name
        assert cfg.warnings == ()
        assert cfg.csv_path == f"{name}.csv"
        assert cfg.json_path == f"{name}.json"
        build_model(cfg)  # constructible
    with pytest.raises(ConfigError):
        preset_source("fig99")


def test_round_trip_fixed_point_on_presets():
    for name, cfg in builtin_presets().items():
        text = serialize_experiment(cfg)
        again = parse_experiment(text)
        assert again == cfg, name
        assert serialize_experiment(again) == text, name


def _random_config(rng: random.Random):
    kind = rng.choice(["thermistor", "axon", "switched", "capacitor"])
    lines = [f"experiment fuzz_{rng.randrange(10**6)}"]
    if kind == "thermistor":
        lines.append(
            f"model thermistor {{ delta = {rng.uniform(1e-5, 1e-3)!r} "
            f"r0 = {rng.uniform(100, 1e5)!r} beta = {rng.uniform(500, 6000)!r} }}"
        )
        drive_kind = "current"
    elif kind == "axon":
        lines.append(
            f"model axon {{ g_k = {rng.uniform(1, 100)!r} tau = {rng.uniform(0.5, 20)!r} "
            f"hh_denominator = {rng.choice(['true', 'false'])} }}"
        )
        drive_kind = "voltage"
    else:
        r1 = (
            f"r1 = {rng.uniform(0.5, 5)!r}"
            if rng.random() < 0.5
            else f"r1_high = {rng.uniform(2, 5)!r} r1_low = {rng.uniform(0.1, 1.9)!r} "
            f"r1_period = {rng.uniform(1, 20)!r}"
        )
        cap = f"cap = {rng.uniform(0.01, 1)!r}" if kind == "capacitor" else ""
        lines.append(
            f"model {kind} {{ q0 = {rng.uniform(0.01, 2)!r} {r1} "
            f"n_switches = {rng.randrange(1, 30)} {cap} }}"
        )
        drive_kind = "current"
    wave = rng.choice(["sinusoid", "square"])
    extra = (
        f"phase = {rng.uniform(-3, 3)!r}"
        if wave == "sinusoid"
        else f"duty = {rng.uniform(0.05, 1.0)!r}"
    )
    lines.append(
        f"drive {drive_kind} {wave} {{ amplitude = {rng.uniform(0, 2)!r} "
        f"frequency = {rng.uniform(1e-6, 100)!r} {extra} }}"
    )
    if rng.random() < 0.8:
        lines.append(
            f"sim {{ transient_cycles = {rng.randrange(0, 20)} "
            f"record_cycles = {rng.randrange(1, 6)} }}"
        )
    groups = rng.sample(["pinch", "phi_q", "loop_area", "linearity"], k=rng.randrange(0, 5))
    sweep = ""
    if rng.random() < 0.3:
        fs = sorted({round(rng.uniform(0.01, 10), 4) for _ in range(rng.randrange(1, 5))})
        sweep = "sweep(" + ", ".join(repr(f) for f in fs) + ")"
    if groups or sweep:
        lines.append("analyze { " + " ".join(groups + ([sweep] if sweep else [])) + " }")
    if rng.random() < 0.5:
        lines.append(f'output csv "fuzz.csv" json "fuzz.json"')
    return "\n".join(lines)


def test_round_trip_fuzzed_configs():
    rng = random.Random(20260815)
    for _ in range(200):
        cfg = parse_experiment(_random_config(rng))
        text = serialize_experiment(cfg)
        again = parse_experiment(text)
        assert again == cfg
        assert serialize_experiment(again) == text
