"""Model hub: the ``domain:function`` registry resolving GR calls.

Descriptors validate argument counts before dispatch and say what kind of
value the handler produces.  ``build_default_registry`` wires up the full
shipped surface: the graph property toolkit, the community/ranking/embedding
models, and the baseline classifiers that stand in for the neural topic and
molecule models (marked ``baseline_substitute``).
"""

from __future__ import annotations

import difflib
import threading
from dataclasses import dataclass, field

from . import community as community_mod
from . import dsl, toolx, values
from .baselines import LabelPropagationClassifier, WlSubtreeNearestNeighbor
from .errors import ArityError, DuplicateKey, MalformedFunctionName, UnknownFunction
from .kg import TransEEmbedder
from .recsys import BprRanker
from .store import GraphInstanceSet

# Surface spellings that resolve to a registered function after the
# hyphen/underscore normalization still misses.
ALIASES = {
    ("toolx", "avg_shortest_path"): ("toolx", "avg_path_length"),
    ("toolx", "max_shortest_path"): ("toolx", "max_path_length"),
    ("toolx", "min_shortest_path"): ("toolx", "min_path_length"),
}


@dataclass(frozen=True)
class Descriptor:
    domain: str
    function: str
    handler: object = field(repr=False, compare=False)
    min_args: int = 0
    max_args: int = 0
    params: tuple = ()
    result_kind: str = "label"
    baseline_substitute: bool = False

    @property
    def name(self):
        return f"{self.domain}:{self.function}"

    def validate_args(self, args):
        n = len(args)
        if n < self.min_args or n > self.max_args:
            wanted = (
                str(self.min_args)
                if self.min_args == self.max_args
                else f"{self.min_args}..{self.max_args}"
            )
            raise ArityError(f"{self.name} takes {wanted} argument(s) after the graph, got {n}")


class ModelRegistry:
    """Thread-safe (domain, function) -> descriptor map with near-miss hints."""

    def __init__(self):
        self._entries = {}
        self._lock = threading.Lock()

    def register(self, descriptor):
        key = (descriptor.domain, descriptor.function)
        with self._lock:
            if key in self._entries:
                raise DuplicateKey(f"{descriptor.name!r} already registered")
            self._entries[key] = descriptor

    def resolve(self, domain_function):
        """Descriptor for a ``domain:function`` string.

        Hyphens normalize to underscores and matching is case-insensitive, so
        the surface variants seen in generated statements (``graph-bert:topic``,
        ``toolx:shortest-path``) reach the canonical registrations.
        """
        if domain_function.count(":") != 1:
            raise MalformedFunctionName(
                f"expected 'domain:function', got {domain_function!r}"
            )
        domain, function = domain_function.split(":")
        key = (domain.lower().replace("-", "_"), function.lower().replace("-", "_"))
        key = ALIASES.get(key, key)
        with self._lock:
            entry = self._entries.get(key)
            known = [f"{d}:{f}" for d, f in self._entries]
        if entry is not None:
            return entry
        wanted = f"{key[0]}:{key[1]}"
        suggestions = difflib.get_close_matches(wanted, known, n=3, cutoff=0.6)
        raise UnknownFunction(domain_function, suggestions)

    def catalog(self):
        """Machine-readable registry contents, sorted by name."""
        with self._lock:
            entries = sorted(self._entries.values(), key=lambda d: (d.domain, d.function))
        return [
            {
                "name": d.name,
                "domain": d.domain,
                "function": d.function,
                "min_args": d.min_args,
                "max_args": d.max_args,
                "params": list(d.params),
                "result_kind": d.result_kind,
                "baseline_substitute": d.baseline_substitute,
            }
            for d in entries
        ]


# --- argument interpretation --------------------------------------------------


def node_id_arg(arg):
    """Node/entity id carried by an argument, whatever its surface form.

    ``paper#83826`` and ``{Paper#1}`` and ``"node#25"`` all name the id after
    the ``#``; plain tokens and numbers are ids verbatim.
    """
    if isinstance(arg, values.ReasoningValue):
        if arg.kind == "label":
            arg = dsl.Bare(arg.payload)
        elif arg.kind == "count":
            return str(arg.payload)
        else:
            raise ArityError(f"cannot use a {arg.kind} value as a node id")
    if isinstance(arg, dsl.EntityRef):
        return arg.id
    if isinstance(arg, dsl.SetLiteral):
        if len(arg.items) != 1:
            raise ArityError("expected a single node in the set argument")
        return node_id_arg(arg.items[0])
    if isinstance(arg, (dsl.Quoted, dsl.Bare)):
        m = dsl._ENTITY_RE.fullmatch(arg.text.strip())
        return m.group(2) if m else arg.text.strip()
    if isinstance(arg, dsl.Number):
        return arg.lexeme
    raise ArityError(f"cannot interpret {arg!r} as a node id")


def int_arg(arg):
    if isinstance(arg, values.ReasoningValue) and arg.kind == "count":
        return int(arg.payload)
    if isinstance(arg, dsl.Number):
        return int(arg.value)
    if isinstance(arg, (dsl.Quoted, dsl.Bare)):
        try:
            return int(arg.text.strip())
        except ValueError:
            pass
    raise ArityError(f"expected an integer argument, got {arg!r}")


def bool_arg(arg):
    if isinstance(arg, (dsl.Quoted, dsl.Bare)):
        text = arg.text.strip()
        if ":" in text:  # e.g. is-directed:False
            text = text.rsplit(":", 1)[1]
        lowered = text.lower()
        if lowered in ("true", "yes", "1"):
            return True
        if lowered in ("false", "no", "0"):
            return False
    if isinstance(arg, dsl.Number):
        return bool(arg.value)
    raise ArityError(f"expected a boolean argument, got {arg!r}")


def _single_graph(ctx, handle):
    dataset = ctx.materialize(handle)
    if isinstance(dataset, GraphInstanceSet):
        raise ArityError(
            f"{handle.dataset_name!r} is an instance set; select one instance, "
            'e.g. GL("gpr", {"lollipop_graph"})'
        )
    return dataset


def _instance_set(ctx, handle):
    dataset = ctx.store.load(handle.dataset_name)
    if not isinstance(dataset, GraphInstanceSet):
        raise ArityError(f"{handle.dataset_name!r} is not an instance set")
    return dataset


# --- toolx handlers ------------------------------------------------------------


def _toolx_handler(name):
    def handle(ctx, handle_, args):
        g = _single_graph(ctx, handle_)
        if name == "order":
            return values.count(toolx.order(g))
        if name == "size":
            return values.count(toolx.size(g))
        if name == "density":
            directed = bool_arg(args[0]) if args else None
            ratio = toolx.density(g, directed)
            return values.decimal(ratio.decimal, exact=ratio.as_fraction())
        if name == "eccentricity":
            if args:
                first = args[0]
                if isinstance(first, dsl.SetLiteral):
                    ids = [node_id_arg(item) for item in first.items]
                else:
                    ids = [node_id_arg(a) for a in args]
                result = toolx.eccentricity(g, ids)
            else:
                result = toolx.eccentricity(g)
            if isinstance(result, dict):
                return values.node_map(result)
            return values.count(result)
        if name == "radius":
            return values.count(toolx.radius(g))
        if name == "diameter":
            return values.count(toolx.diameter(g))
        if name == "center":
            return values.node_set(toolx.center(g))
        if name == "periphery":
            return values.node_set(toolx.periphery(g))
        if name == "shortest_path":
            return values.count(toolx.shortest_path(g, node_id_arg(args[0]), node_id_arg(args[1])))
        if name == "avg_path_length":
            return values.decimal(toolx.avg_path_length(g))
        if name == "max_path_length":
            return values.count(toolx.max_path_length(g))
        if name == "min_path_length":
            return values.count(toolx.min_path_length(g))
        raise UnknownFunction(f"toolx:{name}")

    return handle


_TOOLX_ARITIES = {
    "order": (0, 0, ()),
    "size": (0, 0, ()),
    "density": (0, 1, ("is_directed",)),
    "eccentricity": (0, 2, ("nodes",)),
    "radius": (0, 0, ()),
    "diameter": (0, 0, ()),
    "center": (0, 0, ()),
    "periphery": (0, 0, ()),
    "shortest_path": (2, 2, ("node1", "node2")),
    "avg_path_length": (0, 0, ()),
    "min_path_length": (0, 0, ()),
    "max_path_length": (0, 0, ()),
}

_TOOLX_RESULTS = {
    "order": "count",
    "size": "count",
    "density": "decimal",
    "eccentricity": "node_map",
    "radius": "count",
    "diameter": "count",
    "center": "node_set",
    "periphery": "node_set",
    "shortest_path": "count",
    "avg_path_length": "decimal",
    "min_path_length": "count",
    "max_path_length": "count",
}


# --- model-backed handlers --------------------------------------------------------


def _communities_for(ctx, handle, k=None):
    key = ("kmeans", handle.key(), k, ctx.seed)
    model = ctx.model_cache.get(key)
    if model is None:
        g = _single_graph(ctx, handle)
        model = community_mod.fit_communities(g, k=k, seed=ctx.seed)
        ctx.model_cache[key] = model
    return model


def _kmeans_handler(name):
    def handle(ctx, handle_, args):
        model = _communities_for(ctx, handle_)
        if name == "community":
            if args:
                return values.label(f"#{model.community(node_id_arg(args[0]))}")
            return values.node_map({n: c for n, c in model.labels_.items()})
        if name == "community_count":
            return values.count(model.community_count())
        if name == "community_size":
            return values.count(model.community_size(node_id_arg(args[0])))
        if name == "community_avg_size":
            return values.decimal(model.community_avg_size())
        if name == "community_max_size":
            return values.count(model.community_max_size())
        if name == "common_community_check":
            return values.boolean(
                model.common_community_check(node_id_arg(args[0]), node_id_arg(args[1]))
            )
        raise UnknownFunction(f"kmeans:{name}")

    return handle


_KMEANS_ARITIES = {
    "community": (0, 1, ("node",), "label"),
    "community_count": (0, 0, (), "count"),
    "community_size": (1, 1, ("node",), "count"),
    "community_avg_size": (0, 0, (), "decimal"),
    "community_max_size": (0, 0, (), "count"),
    "common_community_check": (2, 2, ("node1", "node2"), "boolean"),
}


def _bpr_for(ctx, handle):
    key = ("bpr", handle.key(), ctx.seed)
    model = ctx.model_cache.get(key)
    if model is None:
        g = _single_graph(ctx, handle)
        model = BprRanker(seed=ctx.seed).fit(g)
        ctx.model_cache[key] = model
    return model


def _bpr_recommendation(ctx, handle, args):
    model = _bpr_for(ctx, handle)
    score = model.recommendation(node_id_arg(args[0]), node_id_arg(args[1]))
    return values.decimal(score, digits=3)


def _bpr_topk(ctx, handle, args):
    model = _bpr_for(ctx, handle)
    return values.ranked_list(model.topk_recommendation(node_id_arg(args[0]), int_arg(args[1])))


def _transe_for(ctx, handle):
    key = ("transe", handle.key(), ctx.seed)
    model = ctx.model_cache.get(key)
    if model is None:
        g = _single_graph(ctx, handle)
        model = TransEEmbedder(seed=ctx.seed).fit(g)
        ctx.model_cache[key] = model
    return model


def _transe_handler(name):
    def handle(ctx, handle_, args):
        model = _transe_for(ctx, handle_)
        a, b = node_id_arg(args[0]), node_id_arg(args[1])
        if name == "tail_entity":
            return values.label(model.search_tail_entity(a, b))
        if name == "head_entity":
            return values.label(model.search_head_entity(a, b))
        return values.label(model.search_relation(a, b))

    return handle


def _topic(ctx, handle, args):
    key = ("label_prop", handle.key())
    model = ctx.model_cache.get(key)
    if model is None:
        g = _single_graph(ctx, handle)
        model = LabelPropagationClassifier().fit(g)
        ctx.model_cache[key] = model
    return values.label(model.predict(node_id_arg(args[0])))


def _molecule_function(ctx, handle, args):
    key = ("wl_nn", handle.dataset_name)
    model = ctx.model_cache.get(key)
    if model is None:
        instance_set = _instance_set(ctx, handle)
        model = WlSubtreeNearestNeighbor().fit(instance_set)
        ctx.model_cache[key] = model
    return values.label(model.predict(node_id_arg(args[0])))


def build_default_registry():
    registry = ModelRegistry()
    for name in toolx.FUNCTION_NAMES:
        lo, hi, params = _TOOLX_ARITIES[name]
        registry.register(
            Descriptor(
                domain="toolx",
                function=name,
                handler=_toolx_handler(name),
                min_args=lo,
                max_args=hi,
                params=params,
                result_kind=_TOOLX_RESULTS[name],
            )
        )
    for name, (lo, hi, params, kind) in _KMEANS_ARITIES.items():
        registry.register(
            Descriptor(
                domain="kmeans",
                function=name,
                handler=_kmeans_handler(name),
                min_args=lo,
                max_args=hi,
                params=params,
                result_kind=kind,
            )
        )
    registry.register(
        Descriptor(
            domain="bpr",
            function="recommendation",
            handler=_bpr_recommendation,
            min_args=2,
            max_args=2,
            params=("user", "item"),
            result_kind="decimal",
        )
    )
    registry.register(
        Descriptor(
            domain="bpr",
            function="topk_recommendation",
            handler=_bpr_topk,
            min_args=2,
            max_args=2,
            params=("user", "k"),
            result_kind="ranked_list",
        )
    )
    for name, params in (
        ("tail_entity", ("head_entity", "relation")),
        ("head_entity", ("relation", "tail_entity")),
        ("relation", ("head_entity", "tail_entity")),
    ):
        registry.register(
            Descriptor(
                domain="transe",
                function=name,
                handler=_transe_handler(name),
                min_args=2,
                max_args=2,
                params=params,
                result_kind="label",
            )
        )
    registry.register(
        Descriptor(
            domain="graph_bert",
            function="topic",
            handler=_topic,
            min_args=1,
            max_args=1,
            params=("paper_node",),
            result_kind="label",
            baseline_substitute=True,
        )
    )
    registry.register(
        Descriptor(
            domain="seg_bert",
            function="molecule_function",
            handler=_molecule_function,
            min_args=1,
            max_args=1,
            params=("instance",),
            result_kind="label",
            baseline_substitute=True,
        )
    )
    return registry
