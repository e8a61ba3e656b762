"""Scenario configuration parsing and shipped presets.

Configs are flat INI-style text with [model], [initial], [run] and
[output] sections; unknown sections or keys are rejected.  Value lists
are comma-separated, and numeric grids may be given as inclusive
start:stop:step ranges.
"""
from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

import numpy as np

from .composer import Frame, Method
from .errors import ConfigError
from .model import ModelParams

_SCHEMA = {
    "model": {"delta", "s", "omega_c", "n_modes", "dt", "t_max"},
    "initial": {"kind", "frame"},
    "run": {"method", "alphas", "a_values", "a_squared", "output_every", "workers"},
    "output": {"prefix"},
}

_KINDS = {"anti_bell", "bell", "mixed"}


@dataclass
class ScenarioConfig:
    """A fully validated sweep scenario."""

    delta: float = 0.2
    s: float = 1.0
    omega_c: float = 1.0
    n_modes: int = 400
    dt: float = 0.02
    t_max: float = 100.0
    kind: str = "anti_bell"
    frame: Frame = Frame.RSB
    methods: tuple = (Method.D1,)
    alphas: tuple = ()
    a_values: tuple = ()  # amplitudes a, derived from a_squared if given
    output_every: float = 0.2
    workers: int = 1
    prefix: str = "run"

    def __post_init__(self):
        if not self.alphas:
            raise ConfigError("run.alphas must be a nonempty list")
        if not self.a_values:
            raise ConfigError("run.a_values or run.a_squared must be nonempty")
        if any(alpha < 0 for alpha in self.alphas):
            raise ConfigError("run.alphas entries must be >= 0")
        if any(not 0.0 <= a <= 1.0 for a in self.a_values):
            raise ConfigError("initial-state amplitudes must lie in [0, 1]")
        if self.kind not in _KINDS:
            raise ConfigError(f"initial.kind must be one of {sorted(_KINDS)}")
        if Method.RWA in self.methods and self.frame != Frame.RSB:
            raise ConfigError("method rwa requires initial.frame = rsb")
        if self.output_every <= 0:
            raise ConfigError("run.output_every must be > 0")
        if self.workers < 1:
            raise ConfigError("run.workers must be >= 1")
        ratio = self.output_every / self.dt
        if abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError("run.output_every must be a multiple of model.dt")
        # Full ModelParams validation (invariant checks + recurrence warning).
        for alpha in self.alphas:
            self.model_params(alpha)

    def model_params(self, alpha: float) -> ModelParams:
        try:
            return ModelParams(
                delta=self.delta,
                alpha=alpha,
                s=self.s,
                omega_c=self.omega_c,
                n_modes=self.n_modes,
                dt=self.dt,
                t_max=self.t_max,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def times(self) -> np.ndarray:
        n_out = int(round(self.t_max / self.output_every))
        return np.arange(n_out + 1) * self.output_every


def _parse_float_list(text: str, key: str) -> tuple:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{key}: range must be start:stop:step")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from exc
        if step <= 0 or stop < start:
            raise ConfigError(f"{key}: invalid range {text!r}")
        n = int(round((stop - start) / step))
        values = start + step * np.arange(n + 1)
        values = values[values <= stop + 1e-12]
        return tuple(float(v) for v in values)
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from exc


def _get(parser, section, key, cast, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        return cast(raw)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{section}.{key}: {exc}") from exc


def loads_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario config from text."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser.options(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    frame_raw = _get(parser, "initial", "frame", str, "rsb").strip().lower()
    try:
        frame = Frame(frame_raw)
    except ValueError:
        raise ConfigError("initial.frame must be 'sb' or 'rsb'") from None

    method_raw = _get(parser, "run", "method", str, "d1").strip().lower()
    if method_raw == "both":
        methods = (Method.D1, Method.RWA)
    else:
        try:
            methods = (Method(method_raw),)
        except ValueError:
            raise ConfigError("run.method must be 'd1', 'rwa' or 'both'") from None

    has_a = parser.has_option("run", "a_values")
    has_a2 = parser.has_option("run", "a_squared")
    if has_a and has_a2:
        raise ConfigError("give run.a_values or run.a_squared, not both")
    if has_a2:
        a_sq = _parse_float_list(parser.get("run", "a_squared"), "run.a_squared")
        if any(not 0.0 <= v <= 1.0 for v in a_sq):
            raise ConfigError("run.a_squared entries must lie in [0, 1]")
        a_values = tuple(float(np.sqrt(v)) for v in a_sq)
    elif has_a:
        a_values = _parse_float_list(parser.get("run", "a_values"), "run.a_values")
    else:
        a_values = ()

    return ScenarioConfig(
        delta=_get(parser, "model", "delta", float, 0.2),
        s=_get(parser, "model", "s", float, 1.0),
        omega_c=_get(parser, "model", "omega_c", float, 1.0),
        n_modes=_get(parser, "model", "n_modes", int, 400),
        dt=_get(parser, "model", "dt", float, 0.02),
        t_max=_get(parser, "model", "t_max", float, 100.0),
        kind=_get(parser, "initial", "kind", str, "anti_bell").strip().lower(),
        frame=frame,
        methods=methods,
        alphas=_get(
            parser, "run", "alphas",
            lambda t: _parse_float_list(t, "run.alphas"), (),
        ),
        a_values=a_values,
        output_every=_get(parser, "run", "output_every", float, 0.2),
        workers=_get(parser, "run", "workers", int, 1),
        prefix=_get(parser, "output", "prefix", str, "run").strip(),
    )


def load_config(path) -> ScenarioConfig:
    """Load a scenario config from a file path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return loads_config(text)


def _preset(kind, frame, method, alphas, grid_key, prefix) -> str:
    buf = io.StringIO()
    buf.write("[model]\n")
    buf.write("delta = 0.2\ns = 1.0\nomega_c = 1.0\nn_modes = 400\n")
    buf.write("dt = 0.02\nt_max = 100.0\n\n")
    buf.write(f"[initial]\nkind = {kind}\nframe = {frame}\n\n")
    buf.write(f"[run]\nmethod = {method}\n")
    buf.write(f"alphas = {', '.join(str(a) for a in alphas)}\n")
    buf.write(f"{grid_key}\n")
    buf.write("output_every = 0.2\nworkers = 1\n\n")
    buf.write(f"[output]\nprefix = {prefix}\n")
    return buf.getvalue()


PRESETS = {
    "fig1": _preset(
        "mixed", "rsb", "both", (0.01, 0.05, 0.1, 0.2),
        "a_values = 0.0:1.0:0.05", "fig1",
    ),
    "fig2-anti": _preset(
        "anti_bell", "rsb", "d1", (0.01, 0.1, 0.2),
        "a_squared = 0.0:1.0:0.02", "fig2_anti",
    ),
    "fig2-bell": _preset(
        "bell", "rsb", "d1", (0.01, 0.1, 0.2),
        "a_squared = 0.0:1.0:0.02", "fig2_bell",
    ),
    "fig3": _preset(
        "anti_bell", "sb", "d1", (0.03, 0.05, 0.1, 0.2),
        "a_squared = 0.0:1.0:0.02", "fig3",
    ),
}


def preset_text(name: str) -> str:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
