#!/usr/bin/env python3
"""Regenerate the dataset fixtures shipped under src/graphcall/data/.

Every fixture is deterministic; rerunning this script reproduces the files
byte for byte.  The classic-graph set comes from the generators in
graphcall.gpr; the remaining datasets are small synthetic stand-ins shaped
like their real counterparts (citation network, molecule instance set,
recommender interactions, social communities, knowledge-graph triples).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

SRC = Path(__file__).resolve().parent.parent / "src"
sys.path.insert(0, str(SRC))

from graphcall import gpr
from graphcall.store import (
    DataProfile,
    GraphDataset,
    GraphInstance,
    GraphInstanceSet,
    LinkRecord,
    NodeRecord,
    dataset_to_doc,
    parse_dataset,
)

DATA_DIR = SRC / "graphcall" / "data"

CORA_TOPICS = (
    "Neural Networks",
    "Reinforcement Learning",
    "Theory",
    "Genetic Algorithms",
    "Probabilistic Methods",
    "Case Based",
    "Rule Learning",
)


def build_cora():
    """Citation-network excerpt: 7 four-paper topic clusters chained together.

    The first paper of each cluster is left out of the training mask; its
    three labeled neighbors carry the cluster topic.
    """
    nodes = {}
    links = []
    train_nodes = []
    for c, topic in enumerate(CORA_TOPICS):
        base = 4 * c + 1
        members = [str(base + i) for i in range(4)]
        for i, nid in enumerate(members):
            nodes[nid] = NodeRecord(id=nid, label=topic)
            if i > 0:
                train_nodes.append(nid)
        links.append(LinkRecord(source=members[0], target=members[1]))
        links.append(LinkRecord(source=members[0], target=members[2]))
        links.append(LinkRecord(source=members[0], target=members[3]))
        links.append(LinkRecord(source=members[1], target=members[2]))
        if c > 0:
            links.append(LinkRecord(source=str(base - 1), target=members[3]))
    profile = DataProfile(
        name="cora",
        order=len(nodes),
        size=len(links),
        extras={"class_count": len(CORA_TOPICS), "train_nodes": train_nodes},
    )
    return GraphDataset(profile=profile, nodes=nodes, links=tuple(links))


def _cycle_with_tail(ring, tail):
    nodes = [str(i) for i in range(ring + tail)]
    links = [(str(i), str((i + 1) % ring)) for i in range(ring)]
    for i in range(tail):
        links.append((str(ring - 1 if i == 0 else ring + i - 1), str(ring + i)))
    return GraphInstance(nodes=tuple(nodes), links=tuple(sorted(links)), label=1)


def _tree(binary_depth):
    n = 2 ** (binary_depth + 1) - 1
    nodes = [str(i) for i in range(n)]
    links = []
    for i in range(1, n):
        links.append((str((i - 1) // 2), str(i)))
    return GraphInstance(nodes=tuple(nodes), links=tuple(sorted(links)), label=0)


def _path(n):
    nodes = [str(i) for i in range(n)]
    links = [(str(i), str(i + 1)) for i in range(n - 1)]
    return GraphInstance(nodes=tuple(nodes), links=tuple(links), label=0)


def build_mutag():
    """Molecule-style instance set: ringed compounds (label 1) vs acyclic ones
    (label 0)."""
    instances = [
        _cycle_with_tail(5, 1),
        _cycle_with_tail(6, 0),
        _cycle_with_tail(6, 2),
        _cycle_with_tail(7, 1),
        _cycle_with_tail(5, 3),
        _cycle_with_tail(8, 0),
        _path(6),
        _path(8),
        _tree(2),
        _tree(3),
        _path(10),
        _tree(2),
    ]
    graphs = {str(i): inst for i, inst in enumerate(instances)}
    train = ["0", "1", "2", "3", "6", "7", "8", "9"]
    profile = DataProfile(
        name="mutag",
        order=sum(len(g.nodes) for g in graphs.values()),
        size=sum(len(g.links) for g in graphs.values()),
        extras={"graph_number": len(graphs), "class_count": 2, "train_graphs": train},
    )
    return GraphInstanceSet(profile=profile, graphs=graphs)


def build_movielens():
    """Two-taste-block interaction data with timestamps and rating labels."""
    rng = np.random.default_rng(7)
    links = []
    nodes = {}
    users = [f"u{i}" for i in range(1, 13)]
    items = [f"i{i}" for i in range(1, 31)]
    for nid in users + items:
        nodes[nid] = NodeRecord(id=nid)
    for ui, user in enumerate(users):
        block = items[:15] if ui < 6 else items[15:]
        chosen = rng.choice(15, size=8, replace=False)
        for t, idx in enumerate(sorted(chosen)):
            links.append(
                LinkRecord(
                    source=user,
                    target=block[idx],
                    timestamp=1000 + 100 * t + ui,
                    label=int(rng.integers(1, 6)),
                )
            )
    profile = DataProfile(
        name="movielens",
        order=len(nodes),
        size=len(links),
        extras={"class_count": 5},
    )
    return GraphDataset(profile=profile, nodes=nodes, links=tuple(links))


def build_foursquare():
    """Three dense friend circles with two bridging links."""
    nodes = {}
    links = []
    circles = []
    for c in range(3):
        members = [f"user{6 * c + i + 1}" for i in range(6)]
        circles.append(members)
        for nid in members:
            nodes[nid] = NodeRecord(id=nid)
        for i in range(6):
            for j in range(i + 1, 6):
                links.append(LinkRecord(source=members[i], target=members[j]))
    links.append(LinkRecord(source=circles[0][5], target=circles[1][0]))
    links.append(LinkRecord(source=circles[1][5], target=circles[2][0]))
    profile = DataProfile(name="foursquare", order=len(nodes), size=len(links))
    return GraphDataset(profile=profile, nodes=nodes, links=tuple(links))


def build_wordnet():
    """Small sense hierarchy with _hypernym/_hyponym triples."""
    hypernym_of = {
        "dog.n.01": "animal.n.01",
        "cat.n.01": "animal.n.01",
        "bird.n.01": "animal.n.01",
        "poodle.n.01": "dog.n.01",
        "beagle.n.01": "dog.n.01",
        "sparrow.n.01": "bird.n.01",
        "tool.n.01": "artifact.n.01",
        "toy.n.01": "artifact.n.01",
        "hammer.n.01": "tool.n.01",
        "plaything.n.01": "toy.n.01",
        "swing.n.02": "plaything.n.01",
    }
    entities = sorted(set(hypernym_of) | set(hypernym_of.values()))
    nodes = {e: NodeRecord(id=e) for e in entities}
    links = []
    for child, parent in sorted(hypernym_of.items()):
        links.append(LinkRecord(source=child, target=parent, label="_hypernym"))
        links.append(LinkRecord(source=parent, target=child, label="_hyponym"))
    profile = DataProfile(
        name="wordnet",
        order=len(nodes),
        size=len(links),
        is_directed=True,
        extras={"relation_count": 2},
    )
    return GraphDataset(profile=profile, nodes=nodes, links=tuple(links))


def write(name, dataset):
    doc = dataset_to_doc(dataset)
    parse_dataset(json.loads(json.dumps(doc)))  # round-trip sanity check
    path = DATA_DIR / f"{name}.json"
    path.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    write("gpr", gpr.build_dataset())
    write("cora", build_cora())
    write("mutag", build_mutag())
    write("movielens", build_movielens())
    write("foursquare", build_foursquare())
    write("wordnet", build_wordnet())


if __name__ == "__main__":
    main()
