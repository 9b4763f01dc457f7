"""Study configuration: defaults, flat key=value file parsing, overrides."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace

from .errors import ConfigurationError
from .network import NetworkConfig
from .routing import ProtocolKind

FORMATS = ("csv", "json", "both")


@dataclass(frozen=True)
class StudyConfig:
    """Everything one reproducible study needs.

    seed is the master seed; each run derives its own stream from it, so a
    study is fully determined by this object.
    """

    packet_count: int = 500
    run_count: int = 5
    sigma_frac: float = 0.05
    beta_a: float = 3.0
    beta_b: float = 2.0
    relay_count: int = 10
    seed: int = 0
    end_to_end_km: float = 1.27e9
    min_coord_km: float = 1.0e4
    out_dir: str = "report"
    format: str = "csv"
    baseline: ProtocolKind = ProtocolKind.BUNDLE
    step_budget_factor: int = 10

    @property
    def network_config(self) -> NetworkConfig:
        return NetworkConfig(
            relay_count=self.relay_count,
            end_to_end_km=self.end_to_end_km,
            min_coord_km=self.min_coord_km,
            beta_a=self.beta_a,
            beta_b=self.beta_b,
        )

    def validate(self) -> None:
        if self.packet_count < 1:
            raise ConfigurationError(f"packet_count must be >= 1, got {self.packet_count}")
        if self.run_count < 1:
            raise ConfigurationError(f"run_count must be >= 1, got {self.run_count}")
        if self.sigma_frac < 0:
            raise ConfigurationError(f"sigma_frac must be >= 0, got {self.sigma_frac}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must fit an unsigned 64-bit int, got {self.seed}")
        if self.format not in FORMATS:
            raise ConfigurationError(
                f"format must be one of {', '.join(FORMATS)}, got {self.format!r}"
            )
        if self.step_budget_factor < 1:
            raise ConfigurationError(
                f"step_budget_factor must be >= 1, got {self.step_budget_factor}"
            )
        self.network_config.validate()


def _parse_protocol(raw: str) -> ProtocolKind:
    for p in ProtocolKind:
        if p.value == raw:
            return p
    names = ", ".join(p.value for p in ProtocolKind)
    raise ConfigurationError(f"unknown protocol {raw!r}, expected one of: {names}")


# key -> converter from raw string; conversion errors become config errors.
_KEY_PARSERS = {
    "packet_count": int,
    "run_count": int,
    "sigma_frac": float,
    "beta_a": float,
    "beta_b": float,
    "relay_count": int,
    "seed": int,
    "end_to_end_km": float,
    "min_coord_km": float,
    "out_dir": str,
    "format": str,
    "baseline": _parse_protocol,
    "step_budget_factor": int,
}


def parse_config_file(path: str) -> dict[str, object]:
    """Read a flat key=value file; blank lines and # comments are ignored."""
    values: dict[str, object] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(
                f"{path}:{lineno}: expected key=value, got {line!r}"
            )
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEY_PARSERS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _KEY_PARSERS[key](value)
        except ConfigurationError:
            raise
        except ValueError as exc:
            raise ConfigurationError(
                f"{path}:{lineno}: bad value for {key}: {value!r} ({exc})"
            ) from exc
    return values


def load_config(
    path: str | None = None, overrides: dict[str, object] | None = None
) -> StudyConfig:
    """Resolve a config: defaults, then the file, then explicit overrides."""
    values: dict[str, object] = {}
    if path is not None:
        values.update(parse_config_file(path))
    for key, value in (overrides or {}).items():
        if key not in _KEY_PARSERS:
            raise ConfigurationError(f"unknown config key {key!r}")
        if isinstance(value, str) and _KEY_PARSERS[key] is not str:
            try:
                value = _KEY_PARSERS[key](value)
            except ValueError as exc:
                raise ConfigurationError(f"bad value for {key}: {value!r}") from exc
        values[key] = value
    config = replace(StudyConfig(), **values)
    config.validate()
    return config


def config_lines(config: StudyConfig) -> list[str]:
    """Canonical key=value rendering of a resolved config."""
    out = []
    for f in fields(config):
        value = getattr(config, f.name)
        if isinstance(value, ProtocolKind):
            value = value.value
        out.append(f"{f.name}={value}")
    return out


def config_hash(config: StudyConfig) -> str:
    """Stable hex digest of the resolved configuration."""
    text = "\n".join(config_lines(config))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
