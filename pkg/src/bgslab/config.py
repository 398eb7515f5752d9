"""Runtime limits and defaults, optionally loaded from a flat key=value file."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

OUTPUT_FORMATS = ("json", "csv", "table")


@dataclass
class Config:
    budget_default: int = 10_000
    k_max: int = 32
    var_count_max: int = 20
    cache_path: str | None = None
    output_format: str = "json"

    def validate(self) -> "Config":
        if self.budget_default < 1:
            raise ValueError("budget_default must be >= 1")
        if not 0 <= self.k_max <= 64:
            raise ValueError("k_max must be between 0 and 64")
        if not 0 <= self.var_count_max <= 20:
            raise ValueError("var_count_max must be between 0 and 20")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}")
        return self


def load_config(path: str | None = None, env: dict | None = None) -> Config:
    """Read `key=value` lines (# comments allowed); BGSLAB_CACHE overrides
    the cache path."""
    env = os.environ if env is None else env
    cfg = Config()
    if path is not None:
        int_fields = {f.name for f in fields(Config) if f.type == "int"}
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line: {line!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in {f.name for f in fields(Config)}:
                    raise ValueError(f"unknown config key: {key!r}")
                setattr(cfg, key, int(value) if key in int_fields else value)
    if env.get("BGSLAB_CACHE"):
        cfg.cache_path = env["BGSLAB_CACHE"]
    return cfg.validate()
