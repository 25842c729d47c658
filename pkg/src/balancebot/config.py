"""Run configuration: the key = value file format and its defaults.

One assignment per line, `#` starts a comment, blank lines are ignored.
Nested groups use dotted keys (physics.gravity, pid.kp, bins.count). Every
tunable in the package is reachable from a config file; unknown keys are
rejected by name and malformed lines are reported with their line number.
"""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .codec import OBS_MODES, ActionTable, StateBins
from .mlp import LOSS_KINDS
from .qlearn import UPDATE_RULES
from .simulator import PhysicsParams, PidGains

ALGOS = ("q-learning", "dqn", "pid-baseline")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class TrainConfig:
    name: str = "run"
    algo: str = "q-learning"
    alpha: float = 0.8
    gamma: float = 0.999
    epsilon_start: float = 1.0
    epsilon_decay: float = 0.9
    epsilon_floor: float = 0.0
    episodes: int = 1500
    iterations: int = 2000
    pen: float = -100.0
    limit_deg: float = 5.0
    target: float = 2000.0
    update_rule: str = "standard"
    loss: str = "l1"
    layer_sizes: tuple[int, ...] = (1, 20, 20, 10)
    obs_mode: str = "pitch-only"
    buffer_capacity: int = 10000
    batch_size: int = 64
    batches_per_episode: int = 1
    lr: float = 0.01
    seed: int = 0
    physics: PhysicsParams = field(default_factory=PhysicsParams)
    pid: PidGains = field(default_factory=PidGains)
    bins: StateBins = field(default_factory=StateBins)
    actions: ActionTable = field(default_factory=ActionTable)


def _parse_int(text: str) -> int:
    return int(text)


def _parse_float(text: str) -> float:
    return float(text)


def _parse_str(text: str) -> str:
    return text


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok.strip()) for tok in text.split(",") if tok.strip())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok.strip()) for tok in text.split(",") if tok.strip())


# key -> (group, field, converter); group None means a TrainConfig field.
_KEY_TABLE = {
    "name": (None, "name", _parse_str),
    "algo": (None, "algo", _parse_str),
    "alpha": (None, "alpha", _parse_float),
    "gamma": (None, "gamma", _parse_float),
    "epsilon_start": (None, "epsilon_start", _parse_float),
    "epsilon_decay": (None, "epsilon_decay", _parse_float),
    "epsilon_floor": (None, "epsilon_floor", _parse_float),
    "episodes": (None, "episodes", _parse_int),
    "iterations": (None, "iterations", _parse_int),
    "pen": (None, "pen", _parse_float),
    "limit_deg": (None, "limit_deg", _parse_float),
    "target": (None, "target", _parse_float),
    "update_rule": (None, "update_rule", _parse_str),
    "loss": (None, "loss", _parse_str),
    "layer_sizes": (None, "layer_sizes", _parse_int_list),
    "obs_mode": (None, "obs_mode", _parse_str),
    "buffer_capacity": (None, "buffer_capacity", _parse_int),
    "batch_size": (None, "batch_size", _parse_int),
    "batches_per_episode": (None, "batches_per_episode", _parse_int),
    "lr": (None, "lr", _parse_float),
    "seed": (None, "seed", _parse_int),
    "actions": (None, "actions", _parse_float_list),
    "physics.pendulum_length": ("physics", "pendulum_length", _parse_float),
    "physics.gravity": ("physics", "gravity", _parse_float),
    "physics.pitch_damping": ("physics", "pitch_damping", _parse_float),
    "physics.command_gain": ("physics", "command_gain", _parse_float),
    "physics.accel_limit": ("physics", "accel_limit", _parse_float),
    "physics.control_period": ("physics", "control_period", _parse_float),
    "physics.substep": ("physics", "substep", _parse_float),
    "physics.init_pitch_jitter": ("physics", "init_pitch_jitter", _parse_float),
    "pid.kp": ("pid", "kp", _parse_float),
    "pid.ki": ("pid", "ki", _parse_float),
    "pid.kd": ("pid", "kd", _parse_float),
    "pid.integral_clamp": ("pid", "integral_clamp", _parse_float),
    "bins.lo": ("bins", "lo", _parse_float),
    "bins.hi": ("bins", "hi", _parse_float),
    "bins.count": ("bins", "count", _parse_int),
}

CONFIG_KEYS = tuple(_KEY_TABLE)

_GROUP_TYPES = {
    "physics": PhysicsParams,
    "pid": PidGains,
    "bins": StateBins,
}


def parse_config(text: str, source: str = "<config>") -> TrainConfig:
    """Parse config text into a validated TrainConfig."""
    top: dict = {}
    groups: dict[str, dict] = {name: {} for name in _GROUP_TYPES}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{source}, line {lineno}: expected 'key = value', "
                f"got {raw.strip()!r}"
            )
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEY_TABLE:
            raise ConfigError(f"{source}, line {lineno}: unknown key {key!r}")
        group, attr, convert = _KEY_TABLE[key]
        try:
            parsed = convert(value)
        except ValueError as exc:
            raise ConfigError(
                f"{source}, line {lineno}: bad value for {key!r}: {exc}"
            ) from None
        if group is None:
            top[attr] = parsed
        else:
            groups[group][attr] = parsed
    kwargs = dict(top)
    try:
        for group, cls in _GROUP_TYPES.items():
            if groups[group]:
                kwargs[group] = cls(**groups[group])
        if "actions" in kwargs:
            kwargs["actions"] = ActionTable(values=kwargs["actions"])
        cfg = TrainConfig(**kwargs)
        validate_config(cfg)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cfg


def load_config(path) -> TrainConfig:
    """Read and parse a config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config(text, source=str(path))


def validate_config(cfg: TrainConfig) -> None:
    """Reject inconsistent settings before any episode runs."""
    if cfg.algo not in ALGOS:
        raise ValueError(f"unknown algo {cfg.algo!r}, expected one of {ALGOS}")
    if cfg.update_rule not in UPDATE_RULES:
        raise ValueError(
            f"unknown update_rule {cfg.update_rule!r}, "
            f"expected one of {UPDATE_RULES}"
        )
    if cfg.loss not in LOSS_KINDS:
        raise ValueError(
            f"unknown loss {cfg.loss!r}, expected one of {LOSS_KINDS}"
        )
    if cfg.obs_mode not in OBS_MODES:
        raise ValueError(
            f"unknown obs_mode {cfg.obs_mode!r}, expected one of {OBS_MODES}"
        )
    if not 0.0 < cfg.alpha <= 1.0:
        raise ValueError("alpha must be in (0, 1]")
    if not 0.0 <= cfg.gamma <= 1.0:
        raise ValueError("gamma must be in [0, 1]")
    for key in ("epsilon_start", "epsilon_floor"):
        if not 0.0 <= getattr(cfg, key) <= 1.0:
            raise ValueError(f"{key} must be in [0, 1]")
    if not 0.0 < cfg.epsilon_decay <= 1.0:
        raise ValueError("epsilon_decay must be in (0, 1]")
    if cfg.episodes < 1:
        raise ValueError("episodes must be at least 1")
    if cfg.iterations < 1:
        raise ValueError("iterations must be at least 1")
    if cfg.limit_deg <= 0:
        raise ValueError("limit_deg must be positive")
    if len(cfg.layer_sizes) < 2 or any(s < 1 for s in cfg.layer_sizes):
        raise ValueError("layer_sizes needs at least 2 positive entries")
    if cfg.buffer_capacity < 1:
        raise ValueError("buffer_capacity must be at least 1")
    if cfg.batch_size < 1:
        raise ValueError("batch_size must be at least 1")
    if cfg.batches_per_episode < 0:
        raise ValueError("batches_per_episode must be non-negative")
    if cfg.lr < 0:
        raise ValueError("lr must be non-negative")
    if cfg.algo == "dqn":
        expect_in = 1 if cfg.obs_mode == "pitch-only" else 2
        if cfg.layer_sizes[0] != expect_in:
            raise ValueError(
                f"layer_sizes[0] = {cfg.layer_sizes[0]} does not match "
                f"obs_mode {cfg.obs_mode!r} (width {expect_in})"
            )
        if cfg.layer_sizes[-1] != len(cfg.actions):
            raise ValueError(
                f"layer_sizes[-1] = {cfg.layer_sizes[-1]} does not match "
                f"action count {len(cfg.actions)}"
            )
    if cfg.target > cfg.iterations:
        warnings.warn(
            f"target {cfg.target} exceeds iterations {cfg.iterations}; "
            "an episode can never accumulate enough reward to pass",
            stacklevel=2,
        )


def with_overrides(cfg: TrainConfig, **changes) -> TrainConfig:
    """Functional update that re-validates."""
    out = dataclasses.replace(cfg, **changes)
    validate_config(out)
    return out


def preset_names() -> list[str]:
    """Names of the bundled preset configs."""
    root = resources.files("balancebot") / "presets"
    return sorted(p.name[: -len(".cfg")] for p in root.iterdir()
                  if p.name.endswith(".cfg"))


def load_preset(name: str) -> TrainConfig:
    """Load a bundled preset config by name."""
    root = resources.files("balancebot") / "presets"
    candidate = root / f"{name}.cfg"
    if not candidate.is_file():
        raise ConfigError(
            f"unknown preset {name!r}, available: {', '.join(preset_names())}"
        )
    return parse_config(candidate.read_text(encoding="utf-8"),
                        source=f"preset:{name}")
