"""Graph data hub: loads, validates, and serves graph datasets; executes GL calls.

On-disk format is JSON mirroring the in-memory schema key for key (see
docs/data_formats.md).  Single-graph datasets carry ``data_profile``,
``nodes`` and ``links``; instance-set datasets carry ``data_profile`` and
``graph_set``.  Node ids are strings throughout; numeric ids are stringified
on load.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import dsl
from .errors import (
    ArityError,
    DuplicateKey,
    InvariantViolation,
    NotFound,
    SchemaError,
    UnknownInstance,
    UnknownLink,
    UnknownNode,
)

SCHEMA_VERSION = 1

_PROFILE_FIELDS = ("name", "order", "size", "is_directed", "is_weighted")
_ALL_TOKENS = {"all nodes", "all links", "all related nodes", "all related links"}


@dataclass(frozen=True)
class DataProfile:
    name: str
    order: int = 0
    size: int = 0
    is_directed: bool = False
    is_weighted: bool = False
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NodeRecord:
    id: str
    features: tuple | None = None
    label: object = None


@dataclass(frozen=True)
class LinkRecord:
    source: str
    target: str
    weight: float | None = None
    timestamp: int | None = None
    label: object = None


@dataclass(frozen=True)
class GraphDataset:
    profile: DataProfile
    nodes: dict
    links: tuple


@dataclass(frozen=True)
class GraphInstance:
    nodes: tuple
    links: tuple
    label: object = None


@dataclass(frozen=True)
class GraphInstanceSet:
    profile: DataProfile
    graphs: dict


# --- selections -----------------------------------------------------------


@dataclass(frozen=True)
class Whole:
    pass


@dataclass(frozen=True)
class NodeInduced:
    nodes: frozenset


@dataclass(frozen=True)
class LinkInduced:
    links: frozenset


@dataclass(frozen=True)
class Instance:
    graph_id: str


@dataclass(frozen=True)
class GraphHandle:
    dataset_name: str
    selection: object = field(default_factory=Whole)

    def key(self):
        sel = self.selection
        if isinstance(sel, Whole):
            detail = ("whole",)
        elif isinstance(sel, NodeInduced):
            detail = ("nodes", tuple(sorted(sel.nodes)))
        elif isinstance(sel, LinkInduced):
            detail = ("links", tuple(sorted(sel.links)))
        else:
            detail = ("instance", sel.graph_id)
        return (self.dataset_name,) + detail

    def describe(self):
        sel = self.selection
        if isinstance(sel, Whole):
            return self.dataset_name
        if isinstance(sel, Instance):
            return f"{self.dataset_name}[{sel.graph_id}]"
        if isinstance(sel, NodeInduced):
            return f"{self.dataset_name}[{len(sel.nodes)} nodes]"
        return f"{self.dataset_name}[{len(sel.links)} links]"


# --- loading and validation --------------------------------------------------


def _require(mapping, key, kind, where):
    if key not in mapping:
        raise SchemaError(f"{where}.{key}", "missing")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{where}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_profile(raw):
    if not isinstance(raw, dict):
        raise SchemaError("data_profile", "expected object")
    name = _require(raw, "name", str, "data_profile")
    extras = {k: v for k, v in raw.items() if k not in _PROFILE_FIELDS}
    return DataProfile(
        name=name,
        order=int(raw.get("order", 0)),
        size=int(raw.get("size", 0)),
        is_directed=bool(raw.get("is_directed", False)),
        is_weighted=bool(raw.get("is_weighted", False)),
        extras=extras,
    )


def _parse_single_graph(doc):
    profile = _parse_profile(_require(doc, "data_profile", dict, "dataset"))
    raw_nodes = _require(doc, "nodes", dict, "dataset")
    raw_links = _require(doc, "links", list, "dataset")
    nodes = {}
    for node_id, rec in raw_nodes.items():
        rec = rec or {}
        if not isinstance(rec, dict):
            raise SchemaError(f"nodes.{node_id}", "expected object")
        features = rec.get("features")
        nodes[str(node_id)] = NodeRecord(
            id=str(node_id),
            features=tuple(features) if features is not None else None,
            label=rec.get("label"),
        )
    links = []
    for i, rec in enumerate(raw_links):
        if not isinstance(rec, dict):
            raise SchemaError(f"links[{i}]", "expected object")
        links.append(
            LinkRecord(
                source=str(_require(rec, "source", None, f"links[{i}]")),
                target=str(_require(rec, "target", None, f"links[{i}]")),
                weight=rec.get("weight"),
                timestamp=rec.get("timestamp"),
                label=rec.get("label"),
            )
        )
    dataset = GraphDataset(profile=profile, nodes=nodes, links=tuple(links))
    violations = validate_dataset(dataset)
    if violations:
        raise InvariantViolation(violations)
    return dataset


def _parse_instance_set(doc):
    profile = _parse_profile(_require(doc, "data_profile", dict, "dataset"))
    raw_graphs = _require(doc, "graph_set", dict, "dataset")
    graphs = {}
    for gid, rec in raw_graphs.items():
        if not isinstance(rec, dict):
            raise SchemaError(f"graph_set.{gid}", "expected object")
        nodes = tuple(str(n) for n in _require(rec, "nodes", list, f"graph_set.{gid}"))
        links = []
        for pair in _require(rec, "links", list, f"graph_set.{gid}"):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise SchemaError(f"graph_set.{gid}.links", "expected [source, target] pairs")
            links.append((str(pair[0]), str(pair[1])))
        graphs[str(gid)] = GraphInstance(nodes=nodes, links=tuple(links), label=rec.get("label"))
    dataset = GraphInstanceSet(profile=profile, graphs=graphs)
    violations = validate_instance_set(dataset)
    if violations:
        raise InvariantViolation(violations)
    return dataset


def parse_dataset(doc):
    if not isinstance(doc, dict):
        raise SchemaError("dataset", "expected object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"unsupported version {version}")
    if "graph_set" in doc:
        return _parse_instance_set(doc)
    return _parse_single_graph(doc)


def validate_dataset(dataset):
    """Every violated invariant of a single-graph dataset, as messages."""
    violations = []
    profile, nodes, links = dataset.profile, dataset.nodes, dataset.links
    if not profile.name:
        violations.append("profile name is empty")
    if profile.order < 0 or profile.size < 0:
        violations.append("profile counts must be nonnegative")
    if len(nodes) != profile.order:
        violations.append(f"profile order {profile.order} != node count {len(nodes)}")
    if len(links) != profile.size:
        violations.append(f"profile size {profile.size} != link count {len(links)}")
    dims = {len(rec.features) for rec in nodes.values() if rec.features is not None}
    if len(dims) > 1:
        violations.append(f"non-uniform feature dimensions {sorted(dims)}")
    seen = set()
    for link in links:
        for endpoint in (link.source, link.target):
            if endpoint not in nodes:
                violations.append(f"link endpoint {endpoint!r} not in nodes")
        if not profile.is_directed:
            key = frozenset((link.source, link.target))
            if key in seen:
                violations.append(f"duplicate undirected edge ({link.source}, {link.target})")
            seen.add(key)
        if profile.is_weighted and link.weight is None:
            violations.append(f"weighted dataset but link ({link.source}, {link.target}) has no weight")
        if not profile.is_weighted and link.weight is not None:
            violations.append(f"unweighted dataset but link ({link.source}, {link.target}) has a weight")
        if link.timestamp is not None and link.timestamp < 0:
            violations.append(f"negative timestamp on link ({link.source}, {link.target})")
    return violations


def validate_instance_set(dataset):
    violations = []
    profile, graphs = dataset.profile, dataset.graphs
    if not profile.name:
        violations.append("profile name is empty")
    number = profile.extras.get("graph_number")
    if number is None or number < 1:
        violations.append("graph_number missing or < 1")
    elif number != len(graphs):
        violations.append(f"graph_number {number} != instance count {len(graphs)}")
    for gid, inst in graphs.items():
        node_set = set(inst.nodes)
        for u, v in inst.links:
            if u not in node_set or v not in node_set:
                violations.append(f"instance {gid}: link ({u}, {v}) references unknown node")
    return violations


def dataset_to_doc(dataset):
    """Inverse of :func:`parse_dataset`; used by fixture builders and converters."""
    profile = dataset.profile
    doc_profile = {
        "name": profile.name,
        "order": profile.order,
        "size": profile.size,
        "is_directed": profile.is_directed,
        "is_weighted": profile.is_weighted,
    }
    doc_profile.update(profile.extras)
    if isinstance(dataset, GraphInstanceSet):
        return {
            "schema_version": SCHEMA_VERSION,
            "data_profile": doc_profile,
            "graph_set": {
                gid: {
                    "nodes": list(inst.nodes),
                    "links": [list(pair) for pair in inst.links],
                    "label": inst.label,
                }
                for gid, inst in dataset.graphs.items()
            },
        }
    nodes = {}
    for node_id, rec in dataset.nodes.items():
        entry = {}
        if rec.features is not None:
            entry["features"] = list(rec.features)
        if rec.label is not None:
            entry["label"] = rec.label
        nodes[node_id] = entry
    links = []
    for link in dataset.links:
        entry = {"source": link.source, "target": link.target}
        if link.weight is not None:
            entry["weight"] = link.weight
        if link.timestamp is not None:
            entry["timestamp"] = link.timestamp
        if link.label is not None:
            entry["label"] = link.label
        links.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "data_profile": doc_profile,
        "nodes": nodes,
        "links": links,
    }


def default_registry():
    """Short names for the datasets shipped with the package."""
    data_dir = resources.files("graphcall") / "data"
    registry = {}
    for entry in sorted(data_dir.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            registry[entry.name[: -len(".json")]] = str(entry)
    return registry


class GraphStore:
    """Registry plus cache of loaded datasets.

    Datasets are immutable after load and may be shared freely; registration
    is exclusive, reads are lock-free on the cached objects.
    """

    def __init__(self, registry=None, include_defaults=True):
        self._registry = default_registry() if include_defaults else {}
        if registry:
            self._registry.update(registry)
        self._cache = {}
        self._lock = threading.Lock()

    def register(self, name, path, overwrite=False):
        with self._lock:
            if name in self._registry and not overwrite:
                raise DuplicateKey(f"dataset {name!r} already registered")
            self._registry[name] = str(path)
            self._cache.pop(name, None)

    def registered(self):
        return dict(self._registry)

    def load(self, name_or_path):
        """Load and validate a dataset by registered name or file path."""
        with self._lock:
            if name_or_path in self._cache:
                return self._cache[name_or_path]
            path = self._registry.get(name_or_path, name_or_path)
        p = Path(path)
        if not p.is_file():
            raise NotFound(f"no dataset registered or file found for {name_or_path!r}")
        try:
            doc = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(str(p), f"invalid JSON: {exc}") from exc
        dataset = parse_dataset(doc)
        with self._lock:
            self._cache[name_or_path] = dataset
        return dataset

    # --- GL execution -------------------------------------------------------

    def execute_gl(self, call):
        """Resolve a GL call to a :class:`GraphHandle` (whole graph, induced
        subgraph, or a named instance of an instance set)."""
        if call.func.upper() != "GL":
            raise ArityError(f"expected a GL call, got {call.func!r}")
        if not call.args:
            raise ArityError("GL requires a dataset name")
        if len(call.args) > 3:
            raise ArityError(f"GL takes at most 3 arguments, got {len(call.args)}")
        name = _text_arg(call.args[0])
        dataset = self.load(name)
        node_arg = call.args[1] if len(call.args) > 1 else None
        link_arg = call.args[2] if len(call.args) > 2 else None

        if isinstance(dataset, GraphInstanceSet):
            if node_arg is None or _is_all_token(node_arg):
                return GraphHandle(name, Whole())
            if not isinstance(node_arg, dsl.SetLiteral) or len(node_arg.items) != 1:
                raise ArityError("instance selection must be a one-element set, e.g. {\"lollipop_graph\"}")
            gid = _text_arg(node_arg.items[0])
            if gid not in dataset.graphs:
                raise UnknownInstance(f"no instance {gid!r} in {name!r}")
            return GraphHandle(name, Instance(gid))

        nodes = _subset_nodes(node_arg)
        links = _subset_links(link_arg)
        if nodes is None and links is None:
            return GraphHandle(name, Whole())
        if links is not None and nodes is None:
            _check_links(dataset, links)
            return GraphHandle(name, LinkInduced(frozenset(links)))
        if links is not None:
            # Both subsets given concretely: node-induced over the union of the
            # named nodes and the link endpoints.
            nodes = set(nodes)
            for u, v in links:
                nodes.update((u, v))
        _check_nodes(dataset, nodes)
        return GraphHandle(name, NodeInduced(frozenset(nodes)))

    def materialize(self, handle):
        """Concrete dataset for a handle, with recomputed profile counts."""
        dataset = self.load(handle.dataset_name)
        sel = handle.selection
        if isinstance(sel, Whole):
            return dataset
        if isinstance(sel, Instance):
            if not isinstance(dataset, GraphInstanceSet):
                raise UnknownInstance(f"{handle.dataset_name!r} is not an instance set")
            inst = dataset.graphs.get(sel.graph_id)
            if inst is None:
                raise UnknownInstance(f"no instance {sel.graph_id!r} in {handle.dataset_name!r}")
            return instance_as_dataset(dataset, sel.graph_id, inst)
        if isinstance(dataset, GraphInstanceSet):
            raise UnknownNode(f"cannot select nodes or links from instance set {handle.dataset_name!r}")
        if isinstance(sel, NodeInduced):
            _check_nodes(dataset, sel.nodes)
            keep = sel.nodes
            links = tuple(l for l in dataset.links if l.source in keep and l.target in keep)
        else:
            _check_links(dataset, sel.links)
            wanted = {frozenset(pair) if not dataset.profile.is_directed else pair for pair in sel.links}
            keep = set()
            links = []
            for l in dataset.links:
                key = frozenset((l.source, l.target)) if not dataset.profile.is_directed else (l.source, l.target)
                if key in wanted:
                    links.append(l)
                    keep.update((l.source, l.target))
            links = tuple(links)
        nodes = {nid: dataset.nodes[nid] for nid in sorted(keep)}
        profile = DataProfile(
            name=dataset.profile.name,
            order=len(nodes),
            size=len(links),
            is_directed=dataset.profile.is_directed,
            is_weighted=dataset.profile.is_weighted,
            extras=dict(dataset.profile.extras),
        )
        return GraphDataset(profile=profile, nodes=nodes, links=links)


def instance_as_dataset(parent, gid, inst):
    nodes = {nid: NodeRecord(id=nid) for nid in inst.nodes}
    links = tuple(LinkRecord(source=u, target=v) for u, v in inst.links)
    profile = DataProfile(
        name=f"{parent.profile.name}/{gid}",
        order=len(nodes),
        size=len(links),
        is_directed=parent.profile.is_directed,
        is_weighted=parent.profile.is_weighted,
        extras={"instance": gid, "label": inst.label},
    )
    return GraphDataset(profile=profile, nodes=nodes, links=links)


def _text_arg(arg):
    if isinstance(arg, dsl.Quoted):
        return arg.text
    if isinstance(arg, dsl.Bare):
        return arg.text
    if isinstance(arg, dsl.Number):
        return arg.lexeme
    if isinstance(arg, dsl.EntityRef):
        return arg.id
    raise ArityError(f"expected a name, got {arg!r}")


def _is_all_token(arg):
    return isinstance(arg, (dsl.Quoted, dsl.Bare)) and arg.text.lower() in _ALL_TOKENS


def _subset_nodes(arg):
    if arg is None or _is_all_token(arg):
        return None
    if isinstance(arg, dsl.SetLiteral):
        return [_node_id(item) for item in arg.items]
    return [_node_id(arg)]


def _node_id(arg):
    if isinstance(arg, dsl.EntityRef):
        return arg.id
    if isinstance(arg, dsl.Quoted) or isinstance(arg, dsl.Bare):
        text = arg.text
        m = dsl._ENTITY_RE.fullmatch(text)
        return m.group(2) if m else text
    if isinstance(arg, dsl.Number):
        return arg.lexeme
    raise ArityError(f"cannot interpret {arg!r} as a node id")


def _subset_links(arg):
    if arg is None or _is_all_token(arg):
        return None
    if not isinstance(arg, dsl.SetLiteral):
        raise ArityError("link subset must be a set of (source, target) pairs")
    pairs = []
    for item in arg.items:
        if isinstance(item, dsl.Bare) and item.text.startswith("(") and item.text.endswith(")"):
            inner = item.text[1:-1]
            parts = [p.strip().strip('"') for p in inner.split(",")]
            if len(parts) != 2:
                raise ArityError(f"link element must name two endpoints: {item.text!r}")
            pairs.append((_strip_ref(parts[0]), _strip_ref(parts[1])))
        else:
            raise ArityError(f"link element must be a (source, target) pair: {item!r}")
    return pairs


def _strip_ref(token):
    m = dsl._ENTITY_RE.fullmatch(token)
    return m.group(2) if m else token


def _check_nodes(dataset, nodes):
    for nid in nodes:
        if nid not in dataset.nodes:
            raise UnknownNode(f"no node {nid!r} in {dataset.profile.name!r}")


def _check_links(dataset, links):
    if dataset.profile.is_directed:
        existing = {(l.source, l.target) for l in dataset.links}
        missing = [pair for pair in links if pair not in existing]
    else:
        existing = {frozenset((l.source, l.target)) for l in dataset.links}
        missing = [pair for pair in links if frozenset(pair) not in existing]
    if missing:
        raise UnknownLink(f"no link {missing[0]} in {dataset.profile.name!r}")
