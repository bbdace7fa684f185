"""Run configuration: JSON documents merged over per-command defaults.

Precedence, lowest first: command defaults, ``--config`` file, ``--set``
overrides, then the dedicated flags (``--frame``, ``--with-oracle``,
``--out``).  Keys absent from the defaults are rejected.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .model import PhysicalConfig
from .oracle import IntegratorConfig

_COMMON = {
    "physical": {"m": 1.0, "omega0": 1.0, "alpha": 1.0, "F0": 0.2, "hbar": 1.0},
    "integrator": {
        "steps_per_period": 256,
        "gamma": None,
        "settle_periods": 2000,
        "measure_periods": 100,
        "blowup_bound": 1e6,
    },
    "frame": "both",
    "quantum_ordering": False,
    "eps_res": None,
    "omega_grid": {"start": 0.5, "stop": 2.0, "num": 151},
    "F0_grid": {"start": 0.0, "stop": 0.3, "num": 31},
    "trajectory": {"omega": 0.5, "n_samples": 256},
    "oracle": {
        "enabled": False,
        "sweep_points": 61,
        "jump_threshold": 20.0,
        "refine_levels": 3,
        "F0_values": None,
    },
    "out": "out",
}


def _with(base, **changes):
    d = copy.deepcopy(base)
    for dotted, value in changes.items():
        node = d
        *head, last = dotted.split("__")
        for k in head:
            node = node[k]
        node[last] = value
    return d


DEFAULTS = {
    "harmonic": _with(_COMMON, physical__alpha=0.0, physical__F0=1.0,
                      omega_grid={"start": 0.1, "stop": 2.0, "num": 191}),
    "duffing": _with(_COMMON),
    "phase-diagram": _with(_COMMON, omega_grid={"start": 0.8, "stop": 1.6, "num": 161}),
}

# Values that may legitimately replace a dict default with another shape.
_GRID_KEYS = {"omega_grid", "F0_grid"}


def _merge(base, override, path, provided):
    for key, value in override.items():
        where = f"{path}{key}"
        if key not in base:
            raise ConfigError(f"unknown configuration key {where!r}")
        if isinstance(base[key], dict) and isinstance(value, dict):
            _merge(base[key], value, where + ".", provided)
        else:
            base[key] = value
            provided.add(where)


def _leaf_keys(d, path=""):
    for key, value in d.items():
        if isinstance(value, dict) and key not in _GRID_KEYS:
            yield from _leaf_keys(value, f"{path}{key}.")
        else:
            yield f"{path}{key}"


def parse_set(items) -> dict:
    """Turn ``key.sub=value`` strings into a nested dict; values parse as JSON."""
    out: dict = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        dotted, raw = item.split("=", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = out
        *head, last = dotted.strip().split(".")
        for k in head:
            node = node.setdefault(k, {})
            if not isinstance(node, dict):
                raise ConfigError(f"conflicting --set keys at {dotted!r}")
        node[last] = value
    return out


def grid_values(spec) -> np.ndarray:
    if isinstance(spec, list):
        values = np.asarray(spec, dtype=float)
    elif isinstance(spec, dict):
        if set(spec) != {"start", "stop", "num"}:
            raise ConfigError(f"grid needs exactly start/stop/num, got {sorted(spec)}")
        values = np.linspace(float(spec["start"]), float(spec["stop"]), int(spec["num"]))
    else:
        raise ConfigError(f"grid must be a list or start/stop/num object, got {spec!r}")
    if values.size == 0:
        raise ConfigError("grid is empty")
    return values


@dataclass
class RunConfig:
    command: str
    raw: dict
    defaults_applied: list[str]

    @classmethod
    def build(cls, command: str, file_doc: dict | None = None, overrides: dict | None = None,
              flags: dict | None = None) -> RunConfig:
        if command not in DEFAULTS:
            raise ConfigError(f"unknown command {command!r}")
        raw = copy.deepcopy(DEFAULTS[command])
        provided: set[str] = set()
        for doc in (file_doc or {}, overrides or {}, flags or {}):
            if not isinstance(doc, dict):
                raise ConfigError("configuration must be a JSON object")
            _merge(raw, doc, "", provided)
        defaults_applied = [k for k in _leaf_keys(DEFAULTS[command])
                            if k not in provided and not any(q.startswith(k + ".") for q in provided)]
        rc = cls(command, raw, defaults_applied)
        rc.validate()
        return rc

    @classmethod
    def load(cls, command: str, path: str | Path | None, overrides=None, flags=None) -> RunConfig:
        doc = None
        if path is not None:
            try:
                doc = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.build(command, doc, overrides, flags)

    def validate(self):
        self.physical
        self.integrator
        self.omega_grid
        if self.command == "phase-diagram":
            self.F0_grid
        if self.raw["frame"] not in ("bare", "drive", "both"):
            raise ConfigError(f"frame must be bare, drive or both, got {self.raw['frame']!r}")
        if not isinstance(self.raw["quantum_ordering"], bool):
            raise ConfigError("quantum_ordering must be true or false")
        traj = self.raw["trajectory"]
        if set(traj) - {"omega", "n_samples"} or int(traj["n_samples"]) < 4:
            raise ConfigError("trajectory needs omega and n_samples >= 4")

    @property
    def physical(self) -> PhysicalConfig:
        try:
            return PhysicalConfig(**{k: float(v) for k, v in self.raw["physical"].items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"physical: {exc}") from exc

    @property
    def integrator(self) -> IntegratorConfig:
        d = self.raw["integrator"]
        try:
            return IntegratorConfig(
                steps_per_period=int(d["steps_per_period"]),
                gamma=None if d["gamma"] is None else float(d["gamma"]),
                settle_periods=int(d["settle_periods"]),
                measure_periods=int(d["measure_periods"]),
                blowup_bound=float(d["blowup_bound"]),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"integrator: {exc}") from exc

    @property
    def omega_grid(self) -> np.ndarray:
        g = grid_values(self.raw["omega_grid"])
        if np.any(g <= 0):
            raise ConfigError("omega_grid must be positive")
        return g

    @property
    def F0_grid(self) -> np.ndarray:
        g = grid_values(self.raw["F0_grid"])
        if np.any(g < 0):
            raise ConfigError("F0_grid must be non-negative")
        return g

    @property
    def frames(self) -> list[str]:
        f = self.raw["frame"]
        return ["drive", "bare"] if f == "both" else [f]

    @property
    def oracle(self) -> dict:
        return self.raw["oracle"]
