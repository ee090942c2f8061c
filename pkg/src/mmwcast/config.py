"""Run configuration: a flat, human-readable YAML file mapping one-to-one
onto the channel constants, topology settings, demand, scheme selection, and
trial seeding."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .model import ChannelParams

SCHEMES = ("EMS", "D2D", "FDMAC")

SWEEP_VARIABLES = (
    "demand",
    "group_size",
    "p_max",
    "region_side",
    "theta_3db",
    "h_max",
    "sigma",
)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"unknown sweep variable {self.variable!r}; choose from {SWEEP_VARIABLES}"
            )
        if not self.values:
            raise ValueError("sweep values must be non-empty")


@dataclass(frozen=True)
class SimConfig:
    region_side: float = 20.0
    group_size: int = 15
    h_max: int = 6
    demand_bits: float = 1e9
    trials: int = 50
    master_seed: int = 1
    seeds: tuple[int, ...] | None = None
    schemes: tuple[str, ...] = SCHEMES
    channel: ChannelParams = field(default_factory=ChannelParams)
    sweep: SweepSpec | None = None
    series: SweepSpec | None = None

    def __post_init__(self) -> None:
        if not self.schemes:
            raise ValueError("at least one scheme must be selected")
        for s in self.schemes:
            if s not in SCHEMES:
                raise ValueError(f"unknown scheme {s!r}; choose from {SCHEMES}")
        if self.seeds is not None and len(self.seeds) != self.trials:
            raise ValueError("explicit seed list must match the trial count")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def resolved_dict(self) -> dict:
        out = dataclasses.asdict(self)
        return out


def _sweep_from(raw: dict | None) -> SweepSpec | None:
    if raw is None:
        return None
    return SweepSpec(variable=str(raw["variable"]), values=tuple(float(v) for v in raw["values"]))


def config_from_dict(raw: dict) -> SimConfig:
    channel_raw = dict(raw.get("channel") or {})
    # YAML 1.1 reads exponents without a sign ("2.16e9") as strings; coerce.
    channel = ChannelParams(
        **{k: float(v) for k, v in channel_raw.items() if v is not None}
    )
    seeds = raw.get("seeds")
    kwargs = dict(
        region_side=float(raw.get("region_side", 20.0)),
        group_size=int(raw.get("group_size", 15)),
        h_max=int(raw.get("h_max", 6)),
        demand_bits=float(raw.get("demand_bits", 1e9)),
        trials=int(raw.get("trials", 50)),
        master_seed=int(raw.get("master_seed", 1)),
        seeds=tuple(int(s) for s in seeds) if seeds else None,
        schemes=tuple(raw.get("schemes", list(SCHEMES))),
        channel=channel,
        sweep=_sweep_from(raw.get("sweep")),
        series=_sweep_from(raw.get("series")),
    )
    if kwargs["seeds"] is not None:
        kwargs["trials"] = len(kwargs["seeds"])
    return SimConfig(**kwargs)


def load_config(path: str | Path) -> SimConfig:
    with open(path) as fh:
        raw = yaml.safe_load(fh) or {}
    if not isinstance(raw, dict):
        raise ValueError(f"config root must be a mapping, got {type(raw).__name__}")
    return config_from_dict(raw)


def dump_resolved(config: SimConfig, path: str | Path) -> None:
    """Sidecar JSON with every resolved setting, for provenance."""
    with open(path, "w") as fh:
        json.dump(config.resolved_dict(), fh, indent=2, sort_keys=True, default=list)
        fh.write("\n")
