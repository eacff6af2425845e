"""Run configuration: caps, output and seed, optionally overridden by a JSON file in WORKBENCH_CONFIG."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace

from .cyclotomic import DEFAULT_CONDUCTOR_CAP

ENV_VAR = "WORKBENCH_CONFIG"
FORMATS = ("json", "csv", "dot")


class ConfigError(ValueError):
    pass


def _default_caps() -> dict[str, int]:
    return {"invariants": 40, "invariant_nodes": 5_000_000, "torus": 144, "double": 100}


@dataclass(frozen=True)
class RunConfig:
    conductor_cap: int = DEFAULT_CONDUCTOR_CAP
    search_caps: dict = field(default_factory=_default_caps)
    output: str | None = None
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.conductor_cap <= 0:
            raise ConfigError("conductor_cap must be positive")
        unknown = set(self.search_caps) - set(_default_caps())
        if unknown:
            raise ConfigError(f"unknown search caps: {sorted(unknown)}")
        if any(int(v) <= 0 for v in self.search_caps.values()):
            raise ConfigError("all search caps must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")

    def cap(self, name: str) -> int:
        return int(self.search_caps.get(name, _default_caps()[name]))

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        if "search_caps" in data:
            caps = _default_caps()
            extra = set(data["search_caps"]) - set(caps)
            if extra:
                raise ConfigError(f"unknown search caps: {sorted(extra)}")
            caps.update(data["search_caps"])
            data["search_caps"] = caps
        return cls(**data)

    @classmethod
    def load(cls, path: str | None = None) -> "RunConfig":
        path = path or os.environ.get(ENV_VAR)
        if not path:
            return cls()
        with open(path) as fh:
            return cls.from_mapping(json.load(fh))

    def override(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        caps = kw.pop("search_caps", None)
        out = replace(self, **kw)
        if caps:
            merged = dict(out.search_caps)
            merged.update(caps)
            out = replace(out, search_caps=merged)
        return out
