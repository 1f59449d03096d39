"""Service configuration: JSON config file with environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .annotator import AnnotatorConfig

ENV_PREFIX = "ANNOBENCH_"

_TRUTHY = {"1", "true", "yes", "on"}


@dataclass
class ServiceConfig:
    port: int = 8000
    store_path: str = "workbench.json"
    delta: float = 0.25
    context_window: int = 7
    learning_rate: float = 0.1
    spell_enabled: bool = True

    def annotator_config(self):
        return AnnotatorConfig(
            context_window=self.context_window,
            delta=self.delta,
            learning_rate=self.learning_rate,
            spell_enabled=self.spell_enabled,
        )


def load_config(path=None, env=None):
    """Defaults < config file < ANNOBENCH_* environment variables."""
    env = os.environ if env is None else env
    values = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            values.update(json.load(fh))
    mapping = {
        "PORT": ("port", int),
        "STORE": ("store_path", str),
        "DELTA": ("delta", float),
        "CONTEXT_WINDOW": ("context_window", int),
        "LEARNING_RATE": ("learning_rate", float),
        "SPELL": ("spell_enabled", lambda v: v.strip().lower() in _TRUTHY),
    }
    for suffix, (key, cast) in mapping.items():
        raw = env.get(ENV_PREFIX + suffix)
        if raw is not None:
            values[key] = cast(raw)
    known = {f for f in ServiceConfig.__dataclass_fields__}
    return ServiceConfig(**{k: v for k, v in values.items() if k in known})
