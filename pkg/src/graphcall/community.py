"""Social-network community detection: KMeans over a common-neighbor affinity matrix.

Each node's feature vector is its row of the |V|x|V| matrix counting common
neighbors with every other node; Lloyd iterations then partition the nodes.
Node order is canonicalized internally (natural id order), so the fitted
partition does not depend on insertion order.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from .errors import BadK, EmptyGraph, UnknownNode
from .toolx import adjacency
from .values import natural_key


def default_k(n_nodes):
    """Community count used when a call does not supply one."""
    return max(1, math.ceil(math.sqrt(n_nodes / 2)))


class CommonNeighborCommunities(BaseEstimator):
    """Hard partition of a graph's nodes into ``n_communities`` groups.

    Parameters
    ----------
    n_communities : int or None
        Number of communities; ``None`` picks ``ceil(sqrt(|V|/2))``.
    seed : int
        Drives centroid initialization; fitting is deterministic given it.
    max_iter, tol : Lloyd iteration cap and centroid-shift tolerance.
    """

    def __init__(self, n_communities=None, seed=0, max_iter=300, tol=1e-6):
        self.n_communities = n_communities
        self.seed = seed
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, dataset):
        nodes = sorted(dataset.nodes, key=natural_key)
        if not nodes:
            raise EmptyGraph("cannot partition an empty graph")
        k = self.n_communities if self.n_communities is not None else default_k(len(nodes))
        if k < 1 or k > len(nodes):
            raise BadK(f"k must be in [1, {len(nodes)}], got {k}")

        points = _affinity_matrix(dataset, nodes)
        assignment = _lloyd(points, k, self.seed, self.max_iter, self.tol)

        # Canonical community ids: order of first appearance over the sorted
        # node list, so two fits of the same partition agree exactly.
        remap = {}
        labels = {}
        for node, raw in zip(nodes, assignment):
            if raw not in remap:
                remap[raw] = len(remap)
            labels[node] = remap[raw]
        self.labels_ = labels
        self.n_communities_ = k
        self.sizes_ = [0] * k
        for c in labels.values():
            self.sizes_[c] += 1
        return self

    def _label(self, node):
        node = str(node)
        if node not in self.labels_:
            raise UnknownNode(f"no node {node!r} in the fitted graph")
        return self.labels_[node]

    def community(self, node):
        return self._label(node)

    def community_count(self):
        return self.n_communities_

    def community_size(self, node):
        return self.sizes_[self._label(node)]

    def community_avg_size(self):
        return len(self.labels_) / self.n_communities_

    def community_max_size(self):
        return max(self.sizes_)

    def common_community_check(self, a, b):
        return self._label(a) == self._label(b)


def fit_communities(dataset, k=None, seed=0):
    return CommonNeighborCommunities(n_communities=k, seed=seed).fit(dataset)


def _affinity_matrix(dataset, nodes):
    adj = adjacency(dataset)
    index = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    neighbor_sets = [frozenset(index[v] for v in adj[u]) for u in nodes]
    points = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            common = len(neighbor_sets[i] & neighbor_sets[j])
            points[i, j] = common
            points[j, i] = common
    return points


def _lloyd(points, k, seed, max_iter, tol):
    n = points.shape[0]
    rng = np.random.default_rng(seed)
    centroids = points[rng.choice(n, size=k, replace=False)].copy()
    labels = np.zeros(n, dtype=int)
    for _ in range(max_iter):
        dists = np.linalg.norm(points[:, None, :] - centroids[None, :, :], axis=2)
        labels = np.argmin(dists, axis=1)
        moved = 0.0
        for c in range(k):
            members = points[labels == c]
            if len(members) == 0:
                # Re-seed an empty cluster from the point farthest from its
                # assigned centroid.
                far = int(np.argmax(dists[np.arange(n), labels]))
                centroids[c] = points[far]
                labels[far] = c
                moved = np.inf
                continue
            new = members.mean(axis=0)
            moved = max(moved, float(np.linalg.norm(new - centroids[c])))
            centroids[c] = new
        if moved < tol:
            break
    return _fill_empty(points, labels, k)


def _fill_empty(points, labels, k):
    """Guarantee exactly k nonempty clusters (duplicate points can starve one)."""
    counts = np.bincount(labels, minlength=k)
    for empty in np.flatnonzero(counts == 0):
        donors = np.flatnonzero(counts > 1)
        if len(donors) == 0:
            break
        donor = int(donors[np.argmax(counts[donors])])
        moved = int(np.flatnonzero(labels == donor)[-1])
        labels[moved] = empty
        counts[donor] -= 1
        counts[empty] += 1
    return labels
