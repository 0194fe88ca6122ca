"""Campaign configuration: YAML schema, defaults, validation, echo.

A configuration file is nested key-value sections.  Every field has a
default, the fully resolved configuration is echoed into every output
artifact, and unknown keys anywhere are hard errors carrying the offending
line number (silent typo acceptance burns too many simulation hours).
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Any

import yaml

SCENARIOS = (
    "kljn_ideal",
    "kljn_wire",
    "kljn_injection",
    "kljn_coupler",
    "kljn_transient",
    "br_ideal",
    "br_damped",
    "br_wire_johnson",
)

#: parameters a sweep may vary, mapped to (section, key)
SWEEPABLE = {
    "physics.wire_fraction": ("physics", "wire_fraction"),
    "injection.sigma": ("injection", "sigma"),
    "coupler.kappa": ("coupler", "kappa"),
    "walk.v_rms": ("walk", "v_rms"),
    "protocol.tau": ("protocol", "tau"),
}


class ConfigError(ValueError):
    """Invalid campaign configuration; message carries file line numbers."""


# schema: section -> key -> (python type(s), default)
_SCHEMA: dict[str, dict[str, tuple[Any, Any]]] = {
    "": {
        "scenario": (str, "kljn_ideal"),
        "seed": (int, 20250810),
    },
    "physics": {
        "r_low": (float, 1000.0),
        "r_high": (float, 9000.0),
        "t_eff": (float, 1.0e9),
        "bandwidth": (float, 500.0),
        "wire_fraction": (float, 0.02),
        "t_wire": (float, 300.0),
    },
    "line": {
        "n_segments": (int, 16),
        "series_l": (float, 1.0e-6),
        "shunt_c": (float, 1.0e-9),
        "series_r_total": (float, 50.0),
        "u0": (float, 1.0),
        "damping_temperature": (float, 300.0),
        "tau_round_trips": (float, 0.0),  # 0 = per-scenario default
    },
    "protocol": {
        "tau": (float, 0.1),
        "n_beps": (int, 1000),
        "oversample": (int, 10),
        "chunk_size": (int, 2500),
    },
    "defense": {
        "comparison_resolution_bits": (int, 14),
        "compare_endpoints": (bool, False),
        "leak_cap": ((float, type(None)), None),
        "transient_mode": (str, "none"),
    },
    "walk": {
        "v_rms": (float, 2.0e7),
        "t_r": (float, 0.03),
        "walk_dt": (float, 1.0e-4),
    },
    "injection": {
        "sigma": (float, 0.01),
    },
    "coupler": {
        "kappa": (float, 0.1),
        "kappa_exponent": (float, 2.0),
        "reference_frequency": (float, 5000.0),
    },
    "security": {
        "epsilon": (float, 1.0e-302),
        "key_lengths": (list, [500, 1000]),
        "pa_rounds": (int, 2),
    },
    "sweep": {
        "parameter": ((str, type(None)), None),
        "values": (list, []),
    },
    "output": {
        "figures": (bool, True),
    },
}


@dataclass
class ExperimentConfig:
    """Fully resolved campaign configuration (defaults applied)."""

    data: dict[str, Any] = field(default_factory=dict)

    def __getitem__(self, path: str) -> Any:
        node = self.data
        for part in path.split("."):
            node = node[part]
        return node

    @property
    def scenario(self) -> str:
        return self.data["scenario"]

    @property
    def seed(self) -> int:
        return self.data["seed"]

    def with_value(self, path: str, value: Any) -> "ExperimentConfig":
        import copy

        data = copy.deepcopy(self.data)
        node = data
        parts = path.split(".")
        for part in parts[:-1]:
            node = node[part]
        node[parts[-1]] = value
        return ExperimentConfig(data)

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return self.with_value("seed", int(seed))

    def echo_yaml(self) -> str:
        """Deterministic textual form of the resolved configuration."""
        return yaml.safe_dump(self.data, sort_keys=True, default_flow_style=False)


def default_config() -> ExperimentConfig:
    data: dict[str, Any] = {}
    for section, keys in _SCHEMA.items():
        target = data if section == "" else data.setdefault(section, {})
        for key, (_types, default) in keys.items():
            target[key] = default
    return ExperimentConfig(data)


def _walk_unknown_keys(node: yaml.Node, path: str = "") -> list[tuple[str, int]]:
    """Collect (key path, line) pairs for every mapping key in the document."""
    found = []
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = str(key_node.value)
            where = f"{path}.{key}" if path else key
            found.append((where, key_node.start_mark.line + 1))
            found.extend(_walk_unknown_keys(value_node, where))
    return found


def _validate_keys(text: str) -> None:
    root = yaml.compose(io.StringIO(text))
    if root is None:
        return
    if not isinstance(root, yaml.MappingNode):
        raise ConfigError("line 1: configuration must be a key-value mapping")
    for path, line in _walk_unknown_keys(root, ""):
        parts = path.split(".")
        if len(parts) == 1:
            if parts[0] not in _SCHEMA and parts[0] not in _SCHEMA[""]:
                raise ConfigError(f"line {line}: unknown key '{path}'")
        elif len(parts) == 2:
            section, key = parts
            if section not in _SCHEMA:
                raise ConfigError(f"line {line}: unknown section '{section}'")
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"line {line}: unknown key '{key}' in section '{section}'"
                )
        else:
            raise ConfigError(f"line {line}: unexpected nesting at '{path}'")


def _coerce(section: str, key: str, value: Any) -> Any:
    types, _default = _SCHEMA[section][key]
    if not isinstance(types, tuple):
        types = (types,)
    if float in types and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if bool not in types and isinstance(value, bool):
        raise ConfigError(f"'{key}': expected {types}, got a boolean")
    if not isinstance(value, tuple(t for t in types)):
        names = "/".join(
            "null" if t is type(None) else t.__name__ for t in types
        )
        raise ConfigError(f"'{key}': expected {names}, got {value!r}")
    if key == "values" and isinstance(value, list):
        value = [float(v) for v in value]
    if key == "key_lengths" and isinstance(value, list):
        value = [int(v) for v in value]
    return value


def load_config_text(text: str) -> ExperimentConfig:
    """Parse, validate and resolve a configuration document."""
    _validate_keys(text)
    raw = yaml.safe_load(io.StringIO(text)) or {}
    cfg = default_config()
    for section, keys in _SCHEMA.items():
        source = raw if section == "" else raw.get(section, {})
        target = cfg.data if section == "" else cfg.data[section]
        if source is None:
            source = {}
        for key in keys:
            if key in source:
                target[key] = _coerce(section, key, source[key])
    _validate_semantics(cfg)
    return cfg


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return load_config_text(fh.read())


def _validate_semantics(cfg: ExperimentConfig) -> None:
    if cfg.scenario not in SCENARIOS:
        raise ConfigError(
            f"unknown scenario '{cfg.scenario}'; choose from {', '.join(SCENARIOS)}"
        )
    p = cfg.data["physics"]
    if not 0 < p["r_low"] < p["r_high"]:
        raise ConfigError("physics: need 0 < r_low < r_high")
    if p["bandwidth"] <= 0 or p["t_eff"] < 0:
        raise ConfigError("physics: bandwidth must be > 0 and t_eff >= 0")
    if not 0 <= p["wire_fraction"] <= 0.5:
        raise ConfigError("physics: wire_fraction must lie in [0, 0.5]")
    proto = cfg.data["protocol"]
    if proto["tau"] * 2 * p["bandwidth"] < 4:
        raise ConfigError("protocol: need tau * 2 * bandwidth >= 4")
    if proto["n_beps"] < 1 or proto["chunk_size"] < 1:
        raise ConfigError("protocol: n_beps and chunk_size must be >= 1")
    if proto["oversample"] < 10:
        raise ConfigError("protocol: oversample must be >= 10")
    defense = cfg.data["defense"]
    if defense["transient_mode"] not in ("none", "random_walk"):
        raise ConfigError("defense: transient_mode must be none or random_walk")
    if not 0 <= cfg.data["injection"]["sigma"] < 1:
        raise ConfigError("injection: sigma must lie in [0, 1)")
    if not 0 <= cfg.data["coupler"]["kappa"] <= 1:
        raise ConfigError("coupler: kappa must lie in [0, 1]")
    if cfg.data["line"]["n_segments"] < 8:
        raise ConfigError("line: need at least 8 segments")
    sweep = cfg.data["sweep"]
    if sweep["parameter"] is not None:
        if sweep["parameter"] not in SWEEPABLE:
            raise ConfigError(
                f"sweep: parameter must be one of {', '.join(sorted(SWEEPABLE))}"
            )
        values = sweep["values"]
        if len(values) < 4:
            raise ConfigError("sweep: need at least four values")
        diffs = [b - a for a, b in zip(values, values[1:])]
        if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ConfigError("sweep: values must be strictly monotone")
