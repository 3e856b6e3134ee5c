"""Tagged reasoning results and their deterministic statement renderings."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_CHUNK_RE = re.compile(r"(\d+)")


def natural_key(text):
    """Sort key ordering numeric runs by value, so "9" < "10" and "i2" < "i10"."""
    return tuple(int(c) if c.isdigit() else c for c in _CHUNK_RE.split(str(text)))


@dataclass(frozen=True)
class ReasoningValue:
    """One executed-call result.

    ``kind`` is one of ``count``, ``decimal``, ``label``, ``node_set``,
    ``node_map``, ``ranked_list``, ``graph_ref``, ``boolean``.
    """

    kind: str
    payload: object
    digits: int = 2
    exact: Fraction | None = None

    def render(self):
        return render_value(self)


def count(n):
    return ReasoningValue("count", int(n))


def decimal(value, digits=2, exact=None):
    return ReasoningValue("decimal", float(value), digits=digits, exact=exact)


def label(text):
    return ReasoningValue("label", str(text))


def node_set(ids):
    return ReasoningValue("node_set", tuple(sorted((str(i) for i in ids), key=natural_key)))


def node_map(mapping):
    items = tuple(sorted(((str(k), v) for k, v in mapping.items()), key=lambda kv: natural_key(kv[0])))
    return ReasoningValue("node_map", items)


def ranked_list(ids):
    return ReasoningValue("ranked_list", tuple(str(i) for i in ids))


def graph_ref(handle):
    return ReasoningValue("graph_ref", handle)


def boolean(flag):
    return ReasoningValue("boolean", bool(flag))


def render_value(value):
    kind, payload = value.kind, value.payload
    if kind == "count":
        return str(payload)
    if kind == "decimal":
        if value.exact is not None and value.exact.denominator != 1:
            return f"{value.exact.numerator}/{value.exact.denominator}"
        return f"{payload:.{value.digits}f}"
    if kind == "label":
        return payload
    if kind == "node_set":
        return "{" + ", ".join(payload) + "}"
    if kind == "node_map":
        return "{" + ", ".join(f"{k}: {v}" for k, v in payload) + "}"
    if kind == "ranked_list":
        return "[" + ", ".join(f"'{x}'" for x in payload) + "]"
    if kind == "boolean":
        return "the same" if payload else "different"
    if kind == "graph_ref":
        return payload.describe()
    raise ValueError(f"unknown value kind {kind!r}")
