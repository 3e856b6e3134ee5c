"""Baseline classifiers occupying the neural model slots in the registry.

These keep the full call surface executable end to end: a label-propagation
node classifier answers topic queries, and a Weisfeiler-Lehman subtree
histogram with cosine nearest-neighbor answers graph-instance function
queries.  Registry descriptors mark them as baseline substitutes.
"""

from __future__ import annotations

from collections import Counter

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import EmptyTrainingSet, NoLabeledNodes, UnknownInstance, UnknownNode
from .toolx import adjacency
from .values import natural_key


class LabelPropagationClassifier(BaseEstimator):
    """Clamped label propagation over a node-labeled graph.

    Labeled nodes keep their one-hot distribution; every other node's
    distribution is repeatedly replaced by the normalized mean of its
    neighbors' distributions until the change drops below ``tol`` or
    ``max_iter`` passes complete.
    """

    def __init__(self, max_iter=50, tol=1e-6):
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, dataset, train_nodes=None):
        if train_nodes is None:
            train_nodes = dataset.profile.extras.get("train_nodes")
        if train_nodes is None:
            train_nodes = [nid for nid, rec in dataset.nodes.items() if rec.label is not None]
        train_nodes = [str(n) for n in train_nodes]
        labeled = {
            nid: dataset.nodes[nid].label
            for nid in train_nodes
            if nid in dataset.nodes and dataset.nodes[nid].label is not None
        }
        if not labeled:
            raise NoLabeledNodes("no labeled nodes to propagate from")

        classes = sorted({str(lbl) for lbl in labeled.values()})
        class_index = {c: i for i, c in enumerate(classes)}
        nodes = sorted(dataset.nodes, key=natural_key)
        node_index = {n: i for i, n in enumerate(nodes)}
        adj = adjacency(dataset)

        dist = np.zeros((len(nodes), len(classes)))
        clamp = np.zeros(len(nodes), dtype=bool)
        for nid, lbl in labeled.items():
            dist[node_index[nid], class_index[str(lbl)]] = 1.0
            clamp[node_index[nid]] = True

        self.n_iter_ = 0
        for _ in range(self.max_iter):
            self.n_iter_ += 1
            new = dist.copy()
            for nid in nodes:
                i = node_index[nid]
                if clamp[i]:
                    continue
                neighbors = adj[nid]
                if not neighbors:
                    continue
                mean = dist[[node_index[v] for v in neighbors]].mean(axis=0)
                total = mean.sum()
                new[i] = mean / total if total > 0 else mean
            change = float(np.abs(new - dist).max())
            dist = new
            if change < self.tol:
                break

        self.classes_ = classes
        self.nodes_ = nodes
        self.distributions_ = dist
        self.train_labels_ = {nid: str(lbl) for nid, lbl in labeled.items()}
        return self

    def predict(self, node):
        check_is_fitted(self, "distributions_")
        node = str(node)
        if node in self.train_labels_:
            return self.train_labels_[node]
        if node not in self.nodes_:
            raise UnknownNode(f"no node {node!r} in the fitted graph")
        row = self.distributions_[self.nodes_.index(node)]
        if row.sum() == 0:
            # Unreached by propagation; fall back to the majority class.
            counts = Counter(self.train_labels_.values())
            return min(counts, key=lambda c: (-counts[c], c))
        best = np.flatnonzero(row == row.max())
        return self.classes_[int(best[0])]


def wl_histogram(nodes, links, iterations=3):
    """Weisfeiler-Lehman subtree feature counts, degree-seeded.

    Features are the structural signatures themselves (not compressed ids),
    so relabeling the nodes of an instance leaves the histogram unchanged.
    """
    neighbors = {n: [] for n in nodes}
    for u, v in links:
        neighbors[u].append(v)
        neighbors[v].append(u)
    signature = {n: str(len(neighbors[n])) for n in nodes}
    hist = Counter(f"0|{s}" for s in signature.values())
    for it in range(1, iterations + 1):
        signature = {
            n: signature[n] + "(" + ",".join(sorted(signature[v] for v in neighbors[n])) + ")"
            for n in nodes
        }
        hist.update(f"{it}|{s}" for s in signature.values())
    return hist


def _cosine(a, b):
    shared = set(a) & set(b)
    dot = sum(a[k] * b[k] for k in shared)
    norm_a = sum(v * v for v in a.values()) ** 0.5
    norm_b = sum(v * v for v in b.values()) ** 0.5
    if norm_a == 0 or norm_b == 0:
        return 0.0
    return dot / (norm_a * norm_b)


class WlSubtreeNearestNeighbor(BaseEstimator):
    """1-nearest-neighbor graph-instance classifier over WL histograms."""

    def __init__(self, iterations=3):
        self.iterations = iterations

    def fit(self, instance_set, train_graphs=None):
        if train_graphs is None:
            train_graphs = instance_set.profile.extras.get("train_graphs")
        if train_graphs is None:
            train_graphs = [gid for gid, g in instance_set.graphs.items() if g.label is not None]
        train_graphs = [str(g) for g in train_graphs]
        training = [
            gid
            for gid in train_graphs
            if gid in instance_set.graphs and instance_set.graphs[gid].label is not None
        ]
        if not training:
            raise EmptyTrainingSet("no labeled training instances")
        self.instance_set_ = instance_set
        self.training_ = sorted(training, key=natural_key)
        self.histograms_ = {
            gid: wl_histogram(
                instance_set.graphs[gid].nodes,
                instance_set.graphs[gid].links,
                self.iterations,
            )
            for gid in self.training_
        }
        return self

    def predict(self, graph_id):
        check_is_fitted(self, "histograms_")
        graph_id = str(graph_id)
        inst = self.instance_set_.graphs.get(graph_id)
        if inst is None:
            raise UnknownInstance(f"no instance {graph_id!r}")
        query = wl_histogram(inst.nodes, inst.links, self.iterations)
        scored = [(-_cosine(query, self.histograms_[gid]), natural_key(gid), gid) for gid in self.training_]
        winner = min(scored)[2]
        return str(self.instance_set_.graphs[winner].label)
