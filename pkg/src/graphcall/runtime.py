"""Facade wiring the store, registry, working memory, and executor together."""

from __future__ import annotations

from .config import Config
from .executor import Executor, WorkingMemory
from .hub import build_default_registry
from .store import GraphStore


class Runtime:
    def __init__(self, store=None, registry=None, memory_capacity=128, seed=0):
        self.store = store if store is not None else GraphStore()
        self.registry = registry if registry is not None else build_default_registry()
        self.memory = WorkingMemory(capacity=memory_capacity)
        self.executor = Executor(self.store, self.registry, memory=self.memory, seed=seed)
        self.seed = seed

    @classmethod
    def from_config(cls, cfg=None):
        cfg = cfg or Config()
        store = GraphStore(registry=cfg.datasets)
        return cls(store=store, memory_capacity=cfg.memory_capacity, seed=cfg.seed)

    def reason(self, text, strict=False):
        return self.executor.reason(text, strict=strict)

    def execute(self, query):
        return self.executor.execute(query)
