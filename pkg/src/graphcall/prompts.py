"""Prompt dataset pipeline: template expansion with executed ground truth,
execute-and-filter validation, and the train/test split.

Expansion is deterministic: instances are enumerated in sorted order, the
seed only drives auxiliary slot choices (sampled nodes, k values), and the
same (templates, dataset, seed) triple regenerates byte-identical files.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from string import Template

from . import dsl
from .errors import GraphCallError, SlotUnfillable, TemplateParseError, TooFewPairs
from .store import GraphInstanceSet
from .templates import PatternPair, PromptTemplate, default_templates
from .values import natural_key, render_value

__all__ = [
    "PromptPair",
    "DroppedPair",
    "PatternPair",
    "PromptTemplate",
    "default_templates",
    "expand_templates",
    "validate_pairs",
    "split",
    "write_pairs",
    "read_pairs",
]


@dataclass(frozen=True)
class PromptPair:
    input: str
    output: str
    reasoning_result: str | None = None


@dataclass(frozen=True)
class DroppedPair:
    pair: PromptPair
    reason: str


def _graph_title(graph_id):
    return graph_id.replace("_", " ")


def _enumerate_bindings(runtime, template, dataset_name, rng):
    """Slot bindings per concrete instance, in sorted enumeration order."""
    dataset = runtime.store.load(dataset_name)
    task, name = template.task, template.name
    base = {"dataset": dataset_name}

    if task in ("property", "qa_property"):
        if not isinstance(dataset, GraphInstanceSet):
            raise SlotUnfillable(f"{task} templates need an instance-set dataset, not {dataset_name!r}")
        bindings = []
        for gid in sorted(dataset.graphs, key=natural_key):
            b = dict(base, graph_id=gid, graph=_graph_title(gid))
            nodes = sorted(dataset.graphs[gid].nodes, key=natural_key)
            if "node" in template.slots:
                b["node"] = rng.choice(nodes)
            if "node1" in template.slots:
                pair = rng.sample(nodes, 2) if len(nodes) >= 2 else nodes * 2
                b["node1"], b["node2"] = pair[0], pair[1]
            bindings.append(b)
        return bindings

    if task in ("topic", "qa_topic"):
        labeled = sorted(
            (nid for nid, rec in dataset.nodes.items() if rec.label is not None),
            key=natural_key,
        )
        if not labeled:
            raise SlotUnfillable(f"no labeled nodes in {dataset_name!r}")
        return [dict(base, node=nid) for nid in labeled]

    if task in ("molecule", "qa_molecule"):
        if not isinstance(dataset, GraphInstanceSet):
            raise SlotUnfillable(f"{task} templates need an instance-set dataset")
        return [dict(base, instance=gid) for gid in sorted(dataset.graphs, key=natural_key)]

    if task in ("recommendation", "qa_recommendation"):
        if name == "topk_recommendation":
            users = sorted({l.source for l in dataset.links}, key=natural_key)
            return [dict(base, user=u, k=str(rng.randint(1, 5))) for u in users]
        pairs = sorted({(l.source, l.target) for l in dataset.links}, key=lambda p: (natural_key(p[0]), natural_key(p[1])))
        return [dict(base, user=u, item=i) for u, i in pairs]

    if task in ("community", "qa_community"):
        nodes = sorted(dataset.nodes, key=natural_key)
        if not nodes:
            raise SlotUnfillable(f"no nodes in {dataset_name!r}")
        if "node1" in template.slots:
            return [
                dict(base, node1=nodes[i], node2=rng.choice([n for n in nodes if n != nodes[i]]))
                for i in range(len(nodes))
            ]
        if "node" in template.slots:
            return [dict(base, node=n) for n in nodes]
        return [dict(base)]

    if task in ("kg", "qa_kg"):
        triples = sorted(
            {(l.source, str(l.label), l.target) for l in dataset.links if l.label is not None},
            key=lambda t: (natural_key(t[0]), natural_key(t[1]), natural_key(t[2])),
        )
        if not triples:
            raise SlotUnfillable(f"no relation-labeled links in {dataset_name!r}")
        return [dict(base, head=h, relation=r, tail=t) for h, r, t in triples]

    if task == "loading":
        return [dict(base)]

    raise SlotUnfillable(f"unknown template task {template.task!r}")


def _fill(pattern, binding):
    try:
        return Template(pattern).substitute(binding)
    except KeyError as exc:
        raise SlotUnfillable(f"no source for slot {exc.args[0]!r}") from exc


def _execute_output(runtime, output):
    """Rendered results of the output's insert-tagged calls, joined."""
    stmt = dsl.parse_statement(output)
    if stmt.diagnostics:
        raise TemplateParseError(f"output does not parse: {stmt.diagnostics[0].message}")
    rendered = []
    for call in stmt.calls:
        value = runtime.execute(dsl.ParsedQuery(call, [call.insert_output], (0, 0)))
        if call.insert_output:
            rendered.append(render_value(value))
    return "; ".join(rendered) if rendered else None


def expand_templates(runtime, templates, dataset_name, limit=None, seed=0):
    """Expand each template over the dataset's instances.

    ``limit`` caps the instances per template; every kept instance yields one
    pair per surface variant, with the ground-truth value computed by
    executing the output's calls.
    """
    rng = random.Random(seed)
    pairs = []
    for template in templates:
        bindings = _enumerate_bindings(runtime, template, dataset_name, rng)
        if limit is not None:
            bindings = bindings[:limit]
        for binding in bindings:
            probe_output = _fill(template.variants[0].output_pattern, dict(binding, value="_"))
            value = _execute_output(runtime, probe_output)
            full = dict(binding)
            if value is not None:
                full["value"] = value
            for variant in template.variants:
                pairs.append(
                    PromptPair(
                        input=_fill(variant.input_pattern, full),
                        output=_fill(variant.output_pattern, full),
                        reasoning_result=value,
                    )
                )
    return pairs


def validate_pairs(runtime, pairs):
    """Execute every pair's output; keep only runnable pairs whose rendered
    result matches the recorded one.  Failures are data, not faults."""
    kept, dropped = [], []
    for pair in pairs:
        try:
            value = _execute_output(runtime, pair.output)
        except GraphCallError as exc:
            dropped.append(DroppedPair(pair, f"not runnable: {exc.code}"))
            continue
        if pair.reasoning_result is not None and value != pair.reasoning_result:
            dropped.append(
                DroppedPair(pair, f"result mismatch: expected {pair.reasoning_result!r}, got {value!r}")
            )
            continue
        kept.append(pair)
    return kept, dropped


def split(pairs, seed, n_test=160, train_cap=1600):
    """Sample ``n_test`` test pairs uniformly, then min(N - n_test, train_cap)
    training pairs from the remainder; disjoint and deterministic."""
    n = len(pairs)
    if n <= n_test:
        raise TooFewPairs(f"need more than {n_test} pairs, got {n}")
    rng = random.Random(seed)
    indices = list(range(n))
    test_idx = sorted(rng.sample(indices, n_test))
    test_set = set(test_idx)
    remainder = [i for i in indices if i not in test_set]
    train_size = min(n - n_test, train_cap)
    train_idx = sorted(rng.sample(remainder, train_size))
    return [pairs[i] for i in train_idx], [pairs[i] for i in test_idx]


def write_pairs(path, pairs):
    """Line-delimited records with fields input, output, reasoning_result."""
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            record = {
                "input": pair.input,
                "output": pair.output,
                "reasoning_result": pair.reasoning_result,
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def read_pairs(path):
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            pairs.append(
                PromptPair(
                    input=record["input"],
                    output=record["output"],
                    reasoning_result=record.get("reasoning_result"),
                )
            )
    return pairs
