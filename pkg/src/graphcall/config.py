"""Runtime configuration: file values, environment overrides, flag overrides.

Precedence, lowest to highest: built-in defaults, the JSON config file,
``GRAPHCALL_*`` environment variables, command-line flags.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError

ENV_CONFIG = "GRAPHCALL_CONFIG"
ENV_CAPACITY = "GRAPHCALL_MEMORY_CAPACITY"
ENV_SEED = "GRAPHCALL_SEED"
ENV_ENDPOINT = "GRAPHCALL_ENDPOINT"


@dataclass
class Config:
    datasets: dict = field(default_factory=dict)
    memory_capacity: int = 128
    seed: int = 0
    endpoint_url: str | None = None


def load_config(path=None, env=None):
    env = os.environ if env is None else env
    cfg = Config()
    path = path or env.get(ENV_CONFIG)
    if path:
        p = Path(path)
        if not p.is_file():
            raise SchemaError("config", f"no config file at {path}")
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError("config", f"invalid JSON: {exc}") from exc
        cfg.datasets = dict(doc.get("datasets", {}))
        cfg.memory_capacity = int(doc.get("memory_capacity", cfg.memory_capacity))
        cfg.seed = int(doc.get("seed", cfg.seed))
        cfg.endpoint_url = doc.get("endpoint_url", cfg.endpoint_url)
    if ENV_CAPACITY in env:
        cfg.memory_capacity = int(env[ENV_CAPACITY])
    if ENV_SEED in env:
        cfg.seed = int(env[ENV_SEED])
    if ENV_ENDPOINT in env:
        cfg.endpoint_url = env[ENV_ENDPOINT]
    return cfg
