"""Scenario configuration: a small flat key=value format and its validation.

Documents look like::

    # comment
    [scenario]
    name = conservation
    mode = radial              # radial | cartesian-2d
    T = 40

    [grid]
    h = 0.0078125              # default: R0 / 128
    cfl = 0.45

    [data]
    epsilon = 0.3              # scalar or comma list
    sigma_samples = -2, -1, 0, 0.5
    theta_samples = 0

    [bump]                     # repeated once per bump
    component = 1              # 1 | 2
    kind = f                   # f (position) | g (velocity)
    center = 0, 0
    radius = 1.0
    amplitude = 1.0

Required: scenario.name, data.epsilon and at least one bump.  Everything
else has a documented default (see DEFAULTS below).  Parse errors carry the
offending line number; validation errors name the offending field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bumps import BumpSpec, InitialData

__all__ = [
    "ScenarioConfig",
    "ConfigParseError",
    "ConfigValidationError",
    "parse_scenario",
    "load_scenario",
    "DEFAULT_CFL",
    "DEFAULT_POINTS_PER_RADIUS",
]

DEFAULT_CFL = 0.45
# default grid spacing h = R0 / 128
DEFAULT_POINTS_PER_RADIUS = 128
DEFAULT_SIGMA_SAMPLES = (-2.0, -1.0, 0.0, 0.5)

MODES = ("radial", "cartesian-2d")


class ConfigParseError(ValueError):
    """Malformed configuration text; .line is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ConfigValidationError(ValueError):
    """A parsed value violates an invariant; .field names the culprit."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully validated description of one experiment."""

    name: str
    data: InitialData
    mode: str = "radial"
    h: float = 0.0               # 0 means "derive from support radius"
    cfl: float = DEFAULT_CFL
    T: float = 0.0               # 0 means "derive as 4 / min(eps)"
    sigma_samples: tuple[float, ...] = DEFAULT_SIGMA_SAMPLES
    theta_samples: tuple[float, ...] = (0.0,)
    eps_list: tuple[float, ...] = ()
    out_dir: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigValidationError("mode", f"must be one of {MODES}, got {self.mode!r}")
        eps_list = tuple(self.eps_list) or (self.data.epsilon,)
        object.__setattr__(self, "eps_list", eps_list)
        for e in eps_list:
            if not e > 0:
                raise ConfigValidationError("epsilon", f"must be positive, got {e}")
        if not self.h:
            object.__setattr__(self, "h", self.data.support_radius / DEFAULT_POINTS_PER_RADIUS)
        if not self.h > 0:
            raise ConfigValidationError("h", f"must be positive, got {self.h}")
        if not self.T:
            object.__setattr__(self, "T", 4.0 / min(eps_list))
        if not self.T > 0:
            raise ConfigValidationError("T", f"must be positive, got {self.T}")
        if not 0 < self.cfl <= (0.45 if self.mode == "cartesian-2d" else 0.9):
            raise ConfigValidationError("cfl", f"out of stable range for {self.mode}: {self.cfl}")
        for s in self.sigma_samples:
            if not math.isfinite(s):
                raise ConfigValidationError("sigma_samples", f"non-finite entry {s}")
        if self.mode == "radial" and not self.data.is_centered():
            raise ConfigValidationError(
                "mode", "radial mode requires every bump center at the origin")
        object.__setattr__(self, "sigma_samples", tuple(float(s) for s in self.sigma_samples))
        object.__setattr__(self, "theta_samples", tuple(float(s) for s in self.theta_samples))

    def with_epsilon(self, eps: float) -> "ScenarioConfig":
        return replace(self, data=self.data.with_epsilon(eps), eps_list=(eps,))


def _parse_floats(text: str, key: str, line: int) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigParseError(f"cannot parse {key!r} as number list: {text!r}", line) from None


def _parse_float(text: str, key: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigParseError(f"cannot parse {key!r} as number: {text!r}", line) from None


_SECTION_KEYS = {
    "scenario": {"name", "mode", "T", "out"},
    "grid": {"h", "cfl"},
    "data": {"epsilon", "sigma_samples", "theta_samples"},
    "bump": {"component", "kind", "center", "radius", "amplitude"},
}


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse and validate a configuration document."""
    scalars: dict[str, object] = {}
    bumps: list[dict] = []
    bump_lines: list[int] = []
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigParseError(f"unterminated section header {raw.strip()!r}", lineno)
            section = line[1:-1].strip().lower()
            if section not in _SECTION_KEYS:
                raise ConfigParseError(f"unknown section [{section}]", lineno)
            if section == "bump":
                bumps.append({})
                bump_lines.append(lineno)
            continue
        if "=" not in line:
            raise ConfigParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        if section is None:
            raise ConfigParseError("key outside any [section]", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SECTION_KEYS[section]:
            raise ConfigParseError(f"unknown key {key!r} in section [{section}]", lineno)
        if section == "bump":
            bumps[-1][key] = (value, lineno)
        else:
            scalars[f"{section}.{key}"] = (value, lineno)

    def take(name, parser=None, default=None, required=False):
        if name not in scalars:
            if required:
                raise ConfigValidationError(name, "required key is missing")
            return default
        value, lineno = scalars[name]
        return parser(value, name, lineno) if parser else value

    name = take("scenario.name", required=True)
    mode = take("scenario.mode", default="radial")
    T = take("scenario.T", _parse_float, default=0.0)
    out_dir = take("scenario.out")
    h = take("grid.h", _parse_float, default=0.0)
    cfl = take("grid.cfl", _parse_float, default=DEFAULT_CFL)
    eps_list = take("data.epsilon", _parse_floats, required=True)
    if not eps_list:
        raise ConfigValidationError("epsilon", "empty epsilon list")
    for e in eps_list:
        if not e > 0:
            raise ConfigValidationError("epsilon", f"must be positive, got {e}")
    sigma = take("data.sigma_samples", _parse_floats, default=list(DEFAULT_SIGMA_SAMPLES))
    theta = take("data.theta_samples", _parse_floats, default=None)

    if not bumps:
        raise ConfigValidationError("bump", "at least one [bump] table is required")
    fields = {"f1": [], "g1": [], "f2": [], "g2": []}
    for spec, header_line in zip(bumps, bump_lines):
        def bump_take(key, parser=None, required=True, default=None):
            if key not in spec:
                if required:
                    raise ConfigParseError(
                        f"bump table is missing key {key!r}", header_line)
                return default
            value, lineno = spec[key]
            return parser(value, key, lineno) if parser else value

        component = bump_take("component", _parse_float)
        if component not in (1.0, 2.0):
            raise ConfigValidationError("component", f"must be 1 or 2, got {component}")
        kind = bump_take("kind")
        if kind not in ("f", "g"):
            raise ConfigValidationError("kind", f"must be 'f' or 'g', got {kind!r}")
        center = bump_take("center", _parse_floats, required=False, default=[0.0, 0.0])
        if len(center) != 2:
            raise ConfigValidationError("center", f"needs two coordinates, got {center}")
        radius = bump_take("radius", _parse_float)
        if not radius > 0:
            raise ConfigValidationError("radius", f"must be positive, got {radius}")
        amplitude = bump_take("amplitude", _parse_float)
        fields[f"{kind}{int(component)}"].append(
            BumpSpec(center=(center[0], center[1]), radius=radius, amplitude=amplitude))

    data = InitialData(f1=tuple(fields["f1"]), g1=tuple(fields["g1"]),
                       f2=tuple(fields["f2"]), g2=tuple(fields["g2"]),
                       epsilon=eps_list[0])
    if theta is None:
        theta = [0.0] if mode == "radial" else list(np.linspace(0, 2 * np.pi, 16, endpoint=False))
    return ScenarioConfig(
        name=name, data=data, mode=mode, h=h, cfl=cfl, T=T,
        sigma_samples=tuple(sigma), theta_samples=tuple(theta),
        eps_list=tuple(eps_list), out_dir=out_dir)


def load_scenario(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())
