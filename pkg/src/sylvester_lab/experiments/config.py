"""Experiment configuration and the flat ``key = value`` config grammar."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from pathlib import Path

from ..sampling import IncrementSpec, Law


class ConfigError(ValueError):
    pass


class Mode(enum.Enum):
    WALK = "walk"
    BRIDGE = "bridge"
    VERTICES = "vertices"
    ORACLE = "oracle"
    BASELINE = "baseline"


BASELINE_TARGETS = {"gaussian_d2": 2, "gaussian_d3": 3, "disk": 2, "triangle": 2, "ball": None}

# keys that belong to each mode beyond the common ones
_MODE_KEYS = {
    Mode.WALK: {"law", "scale"},
    Mode.BRIDGE: {"law", "scale"},
    Mode.VERTICES: {"law", "scale", "n"},
    Mode.ORACLE: {"coord_bound"},
    Mode.BASELINE: {"baseline_target"},
}
_COMMON_KEYS = {"mode", "d", "samples", "seed", "workers"}
_INT_KEYS = {"d", "n", "samples", "seed", "workers", "coord_bound"}
_FLOAT_KEYS = {"scale"}

DEFAULT_SAMPLES = {
    Mode.WALK: 1_000_000,
    Mode.BRIDGE: 1_000_000,
    Mode.VERTICES: 100_000,
    Mode.ORACLE: 20,
    Mode.BASELINE: 1_000_000,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One fully specified run.

    ``samples`` counts Monte Carlo trials, or independent input sets in
    oracle mode. Mode-specific fields are ``None`` unless the mode uses them.
    """

    mode: Mode
    d: int
    samples: int
    seed: int = 0
    workers: int = 1
    law: Law | None = None
    scale: float | None = None
    n: int | None = None
    coord_bound: int | None = None
    baseline_target: str | None = None

    def __post_init__(self):
        if not isinstance(self.mode, Mode):
            object.__setattr__(self, "mode", Mode(self.mode))
        if self.law is not None and not isinstance(self.law, Law):
            object.__setattr__(self, "law", Law(self.law))
        self.validate()

    def validate(self) -> None:
        if self.d < 1:
            raise ConfigError(f"d must be >= 1, got {self.d}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        allowed = _MODE_KEYS[self.mode]
        for key in ("law", "scale", "n", "coord_bound", "baseline_target"):
            present = getattr(self, key) is not None
            if present and key not in allowed:
                raise ConfigError(f"{key!r} does not apply to mode {self.mode.value!r}")
        if self.mode in (Mode.WALK, Mode.BRIDGE, Mode.VERTICES):
            if self.law is None:
                raise ConfigError(f"mode {self.mode.value!r} needs a law")
            try:
                self.increment_spec()
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        if self.mode is Mode.VERTICES and (self.n is None or self.n < 1):
            raise ConfigError("vertex-count mode needs n >= 1")
        if self.mode is Mode.ORACLE:
            if self.coord_bound is None or self.coord_bound < 1:
                raise ConfigError("oracle mode needs coord_bound >= 1")
            if self.d > 6:
                raise ConfigError("oracle enumeration supports d <= 6")
        if self.mode is Mode.BASELINE:
            if self.baseline_target not in BASELINE_TARGETS:
                raise ConfigError(
                    f"unknown baseline target {self.baseline_target!r}; "
                    f"choose from {sorted(BASELINE_TARGETS)}"
                )
            fixed = BASELINE_TARGETS[self.baseline_target]
            if fixed is not None and fixed != self.d:
                raise ConfigError(f"baseline {self.baseline_target!r} is defined for d={fixed}")

    def increment_spec(self) -> IncrementSpec:
        return IncrementSpec(self.law, self.d, 1.0 if self.scale is None else self.scale)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["mode"] = self.mode.value
        out["law"] = self.law.value if self.law is not None else None
        return out


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment; dashes in keys map to underscores."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "target":
            key = "baseline_target"
        if key not in _COMMON_KEYS | set().union(*_MODE_KEYS.values()):
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            if key in _INT_KEYS:
                out[key] = int(value, 0)
            elif key in _FLOAT_KEYS:
                out[key] = float(value)
            else:
                out[key] = value
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r}") from exc
    return out


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, str(path))


def build_config(mode: Mode, values: dict) -> ExperimentConfig:
    """Fill mode defaults into ``values`` and construct a validated config."""
    values = {k: v for k, v in values.items() if v is not None}
    if "mode" in values and Mode(values.pop("mode")) is not mode:
        raise ConfigError(f"config file mode does not match subcommand {mode.value!r}")
    values.setdefault("samples", DEFAULT_SAMPLES[mode])
    if mode in (Mode.WALK, Mode.BRIDGE, Mode.VERTICES):
        values.setdefault("law", Law.GAUSSIAN)
    if mode is Mode.ORACLE:
        values.setdefault("coord_bound", 1000)
    if mode is Mode.BASELINE:
        target = values.get("baseline_target")
        if target in BASELINE_TARGETS and BASELINE_TARGETS[target] is not None:
            values.setdefault("d", BASELINE_TARGETS[target])
    if "d" not in values:
        raise ConfigError("d is required")
    try:
        return ExperimentConfig(mode=mode, **values)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
