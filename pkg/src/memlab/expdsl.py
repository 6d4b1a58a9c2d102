"""Experiment description language: lexer, parser, canonical serializer and
the built-in preset experiments.

A description names the experiment, picks a model and a periodic drive,
optionally tunes the integrator, and lists the analyses to run:

    experiment demo
    # thermistor driven well below its thermal cutoff
    model thermistor { r0 = 8 kOhm  beta = 3460 K }
    drive current sinusoid { amplitude = 0.5 mA  frequency = 10 mHz }
    sim { transient_cycles = 3  record_cycles = 2 }
    analyze { pinch phi_q loop_area }
    output csv "demo.csv" json "demo.json"

Whitespace and newlines are interchangeable, '#' starts a comment to end of
line. Numbers accept an optional unit suffix from a fixed whitelist; units
only scale (mA -> 1e-3), no dimension checking is attempted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .core import ConfigError, Drive, SignalKind, Sinusoid, SquareWave
from .integrate import SimControls
from . import models

_UNIT_SCALE = {
    "A": 1.0,
    "mA": 1e-3,
    "V": 1.0,
    "Hz": 1.0,
    "mHz": 1e-3,
    "uHz": 1e-6,
    "K": 1.0,
    "S": 1.0,
    "s": 1.0,
    "F": 1.0,
    "C": 1.0,
    "Ohm": 1.0,
    "kOhm": 1e3,
    "W/K": 1.0,
    "mW/K": 1e-3,
    "J/K": 1.0,
    "mJ/K": 1e-3,
}

_ANALYSES = ("pinch", "phi_q", "loop_area", "linearity")

_MODEL_INPUT = {
    "thermistor": SignalKind.CURRENT,
    "axon": SignalKind.VOLTAGE,
    "switched": SignalKind.CURRENT,
    "capacitor": SignalKind.CURRENT,
}

_MODEL_DEFAULTS: dict[str, dict] = {
    "thermistor": {"delta": 1e-4, "r0": 8000.0, "t0": 298.0, "beta": 3460.0, "c": 1e-3},
    "axon": {"g_k": 36.0, "e_k": 10.0, "gamma": 0.01, "v_hat": 10.0, "tau": 8.0,
             "hh_denominator": False},
    # q0 has no static default; it is derived from the drive when omitted
    "switched": {"r_branch": 0.3, "n_switches": 10},
    "capacitor": {"r_branch": 0.3, "n_switches": 10, "cap": 0.1},
}

_SIM_KEYS = ("dt", "transient_cycles", "record_cycles", "event_tolerance",
             "steady_state_rel_tol")
_INT_KEYS = ("transient_cycles", "record_cycles", "n_switches")


class ParseError(ConfigError):
    """Syntax or validation error in an experiment description."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # ident | number | string | punct | eof
    text: str
    value: float | None
    line: int
    col: int


_NUMBER_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:/[A-Za-z][A-Za-z0-9_]*)?")
_PUNCT = "{}=(),"


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    col = 1
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "#":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, None, line, col))
            pos += 1
            col += 1
            continue
        if ch == '"':
            end = text.find('"', pos + 1)
            nl = text.find("\n", pos + 1)
            if end < 0 or (0 <= nl < end):
                raise ParseError("unterminated string", line, col)
            tokens.append(Token("string", text[pos + 1 : end], None, line, col))
            col += end - pos + 1
            pos = end + 1
            continue
        m = _NUMBER_RE.match(text, pos)
        if m and (ch.isdigit() or ch in "+-." ):
            tokens.append(Token("number", m.group(), float(m.group()), line, col))
            col += m.end() - pos
            pos = m.end()
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            tokens.append(Token("ident", m.group(), None, line, col))
            col += m.end() - pos
            pos = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", None, line, col))
    return tokens


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    model_kind: str
    model_params: dict
    drive: Drive
    controls: SimControls
    analyses: tuple[str, ...]
    sweep_frequencies: tuple[float, ...]
    csv_path: str
    json_path: str | None
    warnings: tuple[str, ...] = field(default=(), compare=False)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.warnings: list[str] = []

    def _peek(self, ahead: int = 0) -> Token:
        k = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[k]

    def _next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def _fail(self, message: str, tok: Token):
        raise ParseError(message, tok.line, tok.col)

    def _expect_ident(self, what: str) -> Token:
        tok = self._next()
        if tok.kind != "ident":
            self._fail(f"expected {what}, got {tok.text!r}", tok)
        return tok

    def _expect_punct(self, ch: str) -> Token:
        tok = self._next()
        if tok.kind != "punct" or tok.text != ch:
            self._fail(f"expected {ch!r}, got {tok.text!r}", tok)
        return tok

    def _expect_string(self, what: str) -> Token:
        tok = self._next()
        if tok.kind != "string":
            self._fail(f"expected {what} as a quoted string, got {tok.text!r}", tok)
        return tok

    def _value(self) -> tuple[float | bool, Token]:
        tok = self._next()
        if tok.kind == "number":
            val = float(tok.value)
            nxt = self._peek()
            # an ident right after a number is a unit suffix, unless it is
            # followed by '=' (then it is the next key)
            if nxt.kind == "ident" and self._peek(1).text != "=":
                self._next()
                scale = _UNIT_SCALE.get(nxt.text)
                if scale is None:
                    self._fail(f"unknown unit {nxt.text!r}", nxt)
                val *= scale
            return val, tok
        if tok.kind == "ident" and tok.text in ("true", "false"):
            return tok.text == "true", tok
        self._fail(f"expected a number or true/false, got {tok.text!r}", tok)

    def _kv_block(self, block: str) -> dict[str, tuple[float | bool, Token]]:
        self._expect_punct("{")
        out: dict[str, tuple[float | bool, Token]] = {}
        while True:
            tok = self._next()
            if tok.kind == "punct" and tok.text == "}":
                return out
            if tok.kind != "ident":
                self._fail(f"expected a key or '}}' in {block} block, got {tok.text!r}", tok)
            if tok.text in out:
                self._fail(f"duplicate key {tok.text!r} in {block} block", tok)
            self._expect_punct("=")
            val, _ = self._value()
            out[tok.text] = (val, tok)

    def parse(self) -> ExperimentConfig:
        tok = self._expect_ident("'experiment'")
        if tok.text != "experiment":
            self._fail("description must start with 'experiment <name>'", tok)
        name = self._expect_ident("experiment name").text

        seen: dict[str, Token] = {}
        model_kind = None
        model_raw: dict = {}
        drive_spec = None
        sim_raw: dict = {}
        analyses: list[str] = []
        sweep: tuple[float, ...] = ()
        csv_path = None
        json_path = None
        has_output = False

        while True:
            tok = self._next()
            if tok.kind == "eof":
                break
            if tok.kind != "ident" or tok.text not in ("model", "drive", "sim", "analyze", "output"):
                self._fail(f"expected a block keyword, got {tok.text!r}", tok)
            if tok.text in seen:
                self._fail(f"duplicate block {tok.text!r}", tok)
            seen[tok.text] = tok

            if tok.text == "model":
                kind_tok = self._expect_ident("model kind")
                if kind_tok.text not in _MODEL_INPUT:
                    self._fail(f"unknown model kind {kind_tok.text!r}", kind_tok)
                model_kind = kind_tok.text
                model_raw = self._kv_block("model")
            elif tok.text == "drive":
                kind_tok = self._expect_ident("'current' or 'voltage'")
                if kind_tok.text not in ("current", "voltage"):
                    self._fail(f"drive kind must be 'current' or 'voltage', got {kind_tok.text!r}", kind_tok)
                wave_tok = self._expect_ident("'sinusoid' or 'square'")
                if wave_tok.text not in ("sinusoid", "square"):
                    self._fail(f"waveform must be 'sinusoid' or 'square', got {wave_tok.text!r}", wave_tok)
                drive_spec = (kind_tok, wave_tok, self._kv_block("drive"))
            elif tok.text == "sim":
                sim_raw = self._kv_block("sim")
            elif tok.text == "analyze":
                analyses, sweep = self._analyze_block()
            else:
                has_output = True
                csv_kw = self._expect_ident("'csv'")
                if csv_kw.text != "csv":
                    self._fail(f"output block starts with csv, got {csv_kw.text!r}", csv_kw)
                csv_path = self._expect_string("csv path").text
                if self._peek().kind == "ident" and self._peek().text == "json":
                    self._next()
                    json_path = self._expect_string("json path").text

        if model_kind is None:
            raise ParseError("missing model block")
        if drive_spec is None:
            raise ParseError("missing drive block")

        drive = self._build_drive(model_kind, *drive_spec)
        params = self._normalize_model(model_kind, model_raw, drive)
        controls = self._build_controls(sim_raw, seen.get("sim"))
        if not has_output:
            csv_path = f"{name}.csv"
            json_path = f"{name}.json"

        return ExperimentConfig(
            name=name,
            model_kind=model_kind,
            model_params=params,
            drive=drive,
            controls=controls,
            analyses=tuple(analyses),
            sweep_frequencies=sweep,
            csv_path=csv_path,
            json_path=json_path,
            warnings=tuple(self.warnings),
        )

    def _analyze_block(self) -> tuple[list[str], tuple[float, ...]]:
        self._expect_punct("{")
        analyses: list[str] = []
        sweep: tuple[float, ...] = ()
        while True:
            tok = self._next()
            if tok.kind == "punct" and tok.text == "}":
                return analyses, sweep
            if tok.kind != "ident":
                self._fail(f"expected an analysis name, got {tok.text!r}", tok)
            if tok.text == "sweep":
                if sweep:
                    self._fail("duplicate sweep", tok)
                self._expect_punct("(")
                freqs = []
                while True:
                    val, vtok = self._value()
                    if isinstance(val, bool):
                        self._fail("sweep frequencies must be numbers", vtok)
                    freqs.append(val)
                    nxt = self._next()
                    if nxt.kind == "punct" and nxt.text == ")":
                        break
                    if not (nxt.kind == "punct" and nxt.text == ","):
                        self._fail(f"expected ',' or ')', got {nxt.text!r}", nxt)
                sweep = tuple(freqs)
            else:
                if tok.text not in _ANALYSES:
                    self._fail(f"unknown analysis {tok.text!r}", tok)
                if tok.text in analyses:
                    self._fail(f"duplicate analysis {tok.text!r}", tok)
                analyses.append(tok.text)

    def _build_drive(self, model_kind, kind_tok, wave_tok, raw) -> Drive:
        expected = _MODEL_INPUT[model_kind]
        if kind_tok.text != expected.value:
            self._fail(
                f"model {model_kind!r} is {expected.value}-controlled; "
                f"drive kind must be {expected.value!r}",
                kind_tok,
            )
        allowed = ("amplitude", "frequency", "phase") if wave_tok.text == "sinusoid" \
            else ("amplitude", "frequency", "duty")
        for key, (_, ktok) in raw.items():
            if key not in allowed:
                self._fail(f"unknown drive key {key!r}", ktok)
        for key in ("amplitude", "frequency"):
            if key not in raw:
                self._fail(f"drive is missing {key!r}", wave_tok)
        kwargs = {k: float(v) for k, (v, _) in raw.items()}
        try:
            if wave_tok.text == "sinusoid":
                waveform = Sinusoid(**kwargs)
            else:
                waveform = SquareWave(**kwargs)
        except ConfigError as exc:
            self._fail(str(exc), wave_tok)
        return Drive(kind=SignalKind(kind_tok.text), waveform=waveform)

    def _normalize_model(self, kind: str, raw: dict, drive: Drive) -> dict:
        params: dict = {}
        defaults = dict(_MODEL_DEFAULTS[kind])
        known = set(defaults)
        if kind in ("switched", "capacitor"):
            known |= {"q0", "r1", "r1_high", "r1_low", "r1_period"}

        for key, (val, ktok) in raw.items():
            if key not in known:
                self._fail(f"unknown key {key!r} for model {kind!r}", ktok)
            if key in _INT_KEYS:
                if isinstance(val, bool) or float(val) != int(val):
                    self._fail(f"{key!r} must be an integer", ktok)
                params[key] = int(val)
            elif key == "hh_denominator":
                if not isinstance(val, bool):
                    self._fail("'hh_denominator' must be true or false", ktok)
                params[key] = val
            else:
                if isinstance(val, bool):
                    self._fail(f"{key!r} must be a number", ktok)
                params[key] = float(val)

        for key, dval in defaults.items():
            if key not in params:
                params[key] = dval
                self.warnings.append(f"model {kind}: using default {key} = {dval}")

        if kind in ("switched", "capacitor"):
            trio = [k for k in ("r1_high", "r1_low", "r1_period") if k in params]
            if "r1" in params and trio:
                tok = raw[trio[0]][1]
                self._fail("'r1' conflicts with r1_high/r1_low/r1_period", tok)
            if trio and len(trio) < 3:
                missing = [k for k in ("r1_high", "r1_low", "r1_period") if k not in params]
                tok = raw[trio[0]][1]
                self._fail(f"time-dependent r1 needs all of r1_high/r1_low/r1_period; missing {missing}", tok)
            if not trio and "r1" not in params:
                params["r1"] = 1.0
                self.warnings.append(f"model {kind}: using default r1 = 1.0")
            if "q0" not in params:
                n = params["n_switches"]
                omega = 2.0 * math.pi * drive.frequency
                q0 = 2.0 * drive.amplitude / ((n + 1) * omega)
                if q0 <= 0.0:
                    raise ParseError(
                        "cannot derive q0 from a zero-amplitude drive; set q0 explicitly")
                params["q0"] = q0
                self.warnings.append(
                    f"model {kind}: q0 not given, derived {q0!r} from the drive "
                    f"(2*amplitude/((n_switches+1)*omega))")
        return params

    def _build_controls(self, raw: dict, block_tok) -> SimControls:
        kwargs = {}
        for key, (val, ktok) in raw.items():
            if key not in _SIM_KEYS:
                self._fail(f"unknown sim key {key!r}", ktok)
            if key in _INT_KEYS:
                if isinstance(val, bool) or float(val) != int(val):
                    self._fail(f"{key!r} must be an integer", ktok)
                kwargs[key] = int(val)
            else:
                if isinstance(val, bool):
                    self._fail(f"{key!r} must be a number", ktok)
                kwargs[key] = float(val)
        try:
            return SimControls(**kwargs)
        except ConfigError as exc:
            if block_tok is not None:
                self._fail(str(exc), block_tok)
            raise


def parse_experiment(text: str) -> ExperimentConfig:
    """Parse one experiment description. Raises ParseError with a line and
    column on any syntax or validation problem."""
    return _Parser(_tokenize(text)).parse()


def build_model(config: ExperimentConfig):
    """Instantiate the model a parsed experiment asks for."""
    p = config.model_params
    if config.model_kind == "thermistor":
        return models.thermistor(models.ThermistorParams(
            delta=p["delta"], r0=p["r0"], t0=p["t0"], beta=p["beta"], c=p["c"]))
    if config.model_kind == "axon":
        return models.axon(
            models.AxonParams(g_k=p["g_k"], e_k=p["e_k"], gamma=p["gamma"],
                              v_hat=p["v_hat"], tau=p["tau"]),
            hh_denominator=p["hh_denominator"])
    r1 = p["r1"] if "r1" in p else models.PiecewiseR1(
        high=p["r1_high"], low=p["r1_low"], period=p["r1_period"])
    base = models.SwitchedNetworkParams(
        q0=p["q0"], r1=r1, r_branch=p["r_branch"], n_switches=p["n_switches"])
    if config.model_kind == "switched":
        return models.switched_network(base)
    return models.capacitor_circuit(models.CapacitorCircuitParams(base=base, cap=p["cap"]))


def _fmt(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, int):
        return str(val)
    return repr(float(val))


def serialize_experiment(config: ExperimentConfig) -> str:
    """Canonical description text: explicit values, no units, sorted keys.
    parse_experiment(serialize_experiment(c)) == c.
    """
    lines = [f"experiment {config.name}"]
    lines.append(f"model {config.model_kind} {{")
    for key in sorted(config.model_params):
        lines.append(f"  {key} = {_fmt(config.model_params[key])}")
    lines.append("}")

    wf = config.drive.waveform
    if isinstance(wf, Sinusoid):
        wave = "sinusoid"
        keys = [("amplitude", wf.amplitude), ("frequency", wf.frequency), ("phase", wf.phase)]
    else:
        wave = "square"
        keys = [("amplitude", wf.amplitude), ("frequency", wf.frequency), ("duty", wf.duty)]
    lines.append(f"drive {config.drive.kind.value} {wave} {{")
    for key, val in keys:
        lines.append(f"  {key} = {_fmt(float(val))}")
    lines.append("}")

    c = config.controls
    lines.append("sim {")
    if c.dt is not None:
        lines.append(f"  dt = {_fmt(c.dt)}")
    lines.append(f"  transient_cycles = {c.transient_cycles}")
    lines.append(f"  record_cycles = {c.record_cycles}")
    if c.event_tolerance is not None:
        lines.append(f"  event_tolerance = {_fmt(c.event_tolerance)}")
    if c.steady_state_rel_tol != 1e-6:
        lines.append(f"  steady_state_rel_tol = {_fmt(c.steady_state_rel_tol)}")
    lines.append("}")

    if config.analyses or config.sweep_frequencies:
        items = list(config.analyses)
        if config.sweep_frequencies:
            items.append("sweep(" + ", ".join(repr(f) for f in config.sweep_frequencies) + ")")
        lines.append("analyze { " + " ".join(items) + " }")

    out = f'output csv "{config.csv_path}"'
    if config.json_path is not None:
        out += f' json "{config.json_path}"'
    lines.append(out)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in presets

_PRESET_SOURCES = {
    "fig2_3": """
experiment fig2_3
# quasi-static: the drive period is 1e5 times the thermal time constant.
# dt is capped by stability of the stiff cooling term, not by accuracy.
model thermistor { delta = 0.1 mW/K  r0 = 8 kOhm  t0 = 298 K  beta = 3460 K  c = 1 mJ/K }
drive current sinusoid { amplitude = 0.5 mA  frequency = 1 uHz  phase = 0 }
sim { dt = 8 s  transient_cycles = 0  record_cycles = 2 }
analyze { pinch phi_q loop_area }
output csv "fig2_3.csv" json "fig2_3.json"
""",
    "fig4_5": """
experiment fig4_5
# drive period comparable to the thermal time constant: widest hysteresis
model thermistor { delta = 0.1 mW/K  r0 = 8 kOhm  t0 = 298 K  beta = 3460 K  c = 1 mJ/K }
drive current sinusoid { amplitude = 0.5 mA  frequency = 10 mHz  phase = 0 }
sim { transient_cycles = 3  record_cycles = 2 }
analyze { pinch phi_q loop_area }
output csv "fig4_5.csv" json "fig4_5.json"
""",
    "fig6_7": """
experiment fig6_7
# drive much faster than the thermal response: temperature settles to the
# value set by the average dissipation and the loop collapses to a line.
# the thermal settling takes ~100 cycles, hence the long transient.
model thermistor { delta = 0.1 mW/K  r0 = 8 kOhm  t0 = 298 K  beta = 3460 K  c = 1 mJ/K }
drive current sinusoid { amplitude = 0.5 mA  frequency = 10 Hz  phase = 0 }
sim { dt = 0.00025 s  transient_cycles = 900  record_cycles = 2 }
analyze { pinch phi_q loop_area linearity }
output csv "fig6_7.csv" json "fig6_7.json"
""",
    "fig8_9_switched": """
experiment fig8_9_switched
# q0 = 2A/((n+1) omega) at 0.1 Hz so the full chain is swept every half cycle
model switched { q0 = 0.2893726238034461 C  r1 = 1 Ohm  r_branch = 0.3 Ohm  n_switches = 10 }
drive current sinusoid { amplitude = 1 A  frequency = 0.1 Hz  phase = 0 }
sim { transient_cycles = 1  record_cycles = 2 }
analyze { pinch phi_q loop_area }
output csv "fig8_9_switched.csv" json "fig8_9_switched.json"
""",
    "fig9_10_axon": """
experiment fig9_10_axon
# potassium channel conductance driven around the resting potential
model axon { g_k = 36 S  e_k = 10 V  gamma = 0.01  v_hat = 10 V  tau = 8 s  hh_denominator = false }
drive voltage sinusoid { amplitude = 5 V  frequency = 50 mHz  phase = 0 }
sim { dt = 0.0025 s  transient_cycles = 5  record_cycles = 5 }
analyze { pinch phi_q loop_area }
output csv "fig9_10_axon.csv" json "fig9_10_axon.json"
""",
    "fig12_13_sweep": """
experiment fig12_13_sweep
# q0 pinned to its 0.1 Hz value while the drive frequency rises: fewer
# switches fire per cycle and the loop degenerates toward a line
model switched { q0 = 0.2893726238034461 C  r1 = 1 Ohm  r_branch = 0.3 Ohm  n_switches = 10 }
drive current sinusoid { amplitude = 1 A  frequency = 0.1 Hz  phase = 0 }
sim { transient_cycles = 1  record_cycles = 2 }
analyze { loop_area phi_q sweep(0.1 Hz, 0.2 Hz, 0.4 Hz, 0.8 Hz) }
output csv "fig12_13_sweep.csv" json "fig12_13_sweep.json"
""",
    "fig14_15_tdr1": """
experiment fig14_15_tdr1
# r1 toggles 3 <-> 1 Ohm in step with the 10 s drive period; the orbit stays
# pinched but flux drifts by a fixed amount every cycle
model switched { q0 = 0.2893726238034461 C  r1_high = 3 Ohm  r1_low = 1 Ohm  r1_period = 10 s  r_branch = 0.3 Ohm  n_switches = 10 }
drive current sinusoid { amplitude = 1 A  frequency = 0.1 Hz  phase = 0 }
sim { transient_cycles = 1  record_cycles = 3 }
analyze { pinch phi_q loop_area }
output csv "fig14_15_tdr1.csv" json "fig14_15_tdr1.json"
""",
    "fig17_tdr1_fast": """
experiment fig17_tdr1_fast
# same toggling r1 at 10 Hz with q0 rescaled by the caption formula: each
# semi-period the one-port behaves as a plain resistor
model switched { q0 = 0.0028937262380344607 C  r1_high = 3 Ohm  r1_low = 1 Ohm  r1_period = 0.1 s  r_branch = 0.3 Ohm  n_switches = 10 }
drive current sinusoid { amplitude = 1 A  frequency = 10 Hz  phase = 0 }
sim { transient_cycles = 1  record_cycles = 2 }
analyze { phi_q loop_area linearity }
output csv "fig17_tdr1_fast.csv" json "fig17_tdr1_fast.json"
""",
    "fig16_cap": """
experiment fig16_cap
# shunt capacitor ahead of the switched chain: the output mixes state and
# input so the v-i orbit misses the origin at current reversals
model capacitor { q0 = 0.2893726238034461 C  r1 = 3 Ohm  cap = 0.1 F  r_branch = 0.3 Ohm  n_switches = 10 }
drive current sinusoid { amplitude = 1 A  frequency = 0.1 Hz  phase = 0 }
sim { transient_cycles = 2  record_cycles = 2 }
analyze { pinch phi_q loop_area }
output csv "fig16_cap.csv" json "fig16_cap.json"
""",
}


def preset_names() -> list[str]:
    return sorted(_PRESET_SOURCES)


def preset_source(name: str) -> str:
    try:
        return _PRESET_SOURCES[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}") from None


def builtin_presets() -> dict[str, ExperimentConfig]:
    """Parse every embedded preset. All values are explicit, so none of the
    configs carries warnings."""
    return {name: parse_experiment(src) for name, src in sorted(_PRESET_SOURCES.items())}
