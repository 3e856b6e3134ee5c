"""Graph property reasoning over materialized datasets.

All distances are unweighted hop counts computed by breadth-first search;
weighted graphs are treated as unweighted here.  Eccentricity-family
properties require a connected graph and raise
:class:`~graphcall.errors.DisconnectedGraph` otherwise (infinite values do
not serialize cleanly into statements).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateGraph, DisconnectedGraph, NoPath, UnknownNode
from .values import natural_key

FUNCTION_NAMES = (
    "order",
    "size",
    "density",
    "eccentricity",
    "radius",
    "diameter",
    "center",
    "shortest_path",
    "avg_path_length",
    "min_path_length",
    "max_path_length",
    "periphery",
)


@dataclass(frozen=True)
class Ratio:
    """Exact ratio with its decimal value (accurate to 12+ significant digits)."""

    numerator: int
    denominator: int

    @property
    def decimal(self):
        return self.numerator / self.denominator

    def as_fraction(self):
        return Fraction(self.numerator, self.denominator)


def adjacency(dataset):
    """Neighbor lists keyed by node id, respecting link direction."""
    adj = {nid: [] for nid in dataset.nodes}
    directed = dataset.profile.is_directed
    for link in dataset.links:
        adj[link.source].append(link.target)
        if not directed:
            adj[link.target].append(link.source)
    return adj


def _bfs_distances(adj, start):
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nb in adj[node]:
            if nb not in dist:
                dist[nb] = dist[node] + 1
                queue.append(nb)
    return dist


def _require_node(dataset, node_id):
    if node_id not in dataset.nodes:
        raise UnknownNode(f"no node {node_id!r} in {dataset.profile.name!r}")


def _connected_distances(dataset):
    """All-pairs BFS distances; raises on empty or disconnected graphs."""
    adj = adjacency(dataset)
    if not adj:
        raise DegenerateGraph("graph has no nodes")
    n = len(adj)
    all_dist = {}
    for node in adj:
        dist = _bfs_distances(adj, node)
        if len(dist) != n:
            raise DisconnectedGraph(f"{dataset.profile.name!r} is not connected")
        all_dist[node] = dist
    return all_dist


def order(dataset):
    return len(dataset.nodes)


def size(dataset):
    return len(dataset.links)


def density(dataset, is_directed=None):
    """Ratio of existing links to the maximum possible: |E|/(|V|(|V|-1)) for
    directed graphs, 2|E|/(|V|(|V|-1)) for undirected ones."""
    n, m = len(dataset.nodes), len(dataset.links)
    if n < 2:
        raise DegenerateGraph("density requires at least 2 nodes")
    if is_directed is None:
        is_directed = dataset.profile.is_directed
    numerator = m if is_directed else 2 * m
    frac = Fraction(numerator, n * (n - 1))
    return Ratio(frac.numerator, frac.denominator)


def eccentricity(dataset, nodes=None):
    """Maximum distance from each node to any other node.

    Returns the full id-to-eccentricity map, or a single count when exactly
    one node is asked for.
    """
    all_dist = _connected_distances(dataset)
    ecc = {node: max(dist.values()) for node, dist in all_dist.items()}
    if nodes is None:
        return ecc
    wanted = [str(n) for n in nodes]
    for nid in wanted:
        _require_node(dataset, nid)
    if len(wanted) == 1:
        return ecc[wanted[0]]
    return {nid: ecc[nid] for nid in wanted}


def radius(dataset):
    return min(eccentricity(dataset).values())


def diameter(dataset):
    return max(eccentricity(dataset).values())


def center(dataset):
    ecc = eccentricity(dataset)
    r = min(ecc.values())
    return sorted((n for n, e in ecc.items() if e == r), key=natural_key)


def periphery(dataset):
    ecc = eccentricity(dataset)
    d = max(ecc.values())
    return sorted((n for n, e in ecc.items() if e == d), key=natural_key)


def shortest_path(dataset, a, b):
    """Hop count of a shortest path between two nodes."""
    a, b = str(a), str(b)
    _require_node(dataset, a)
    _require_node(dataset, b)
    dist = _bfs_distances(adjacency(dataset), a)
    if b not in dist:
        raise NoPath(f"no path from {a!r} to {b!r}")
    return dist[b]


def avg_path_length(dataset):
    """Mean shortest-path length over all ordered node pairs, source included
    (a node contributes distance 0 to itself), i.e. the per-node mean distance
    averaged over nodes."""
    all_dist = _connected_distances(dataset)
    n = len(all_dist)
    total = sum(sum(dist.values()) for dist in all_dist.values())
    return total / (n * n)


def max_path_length(dataset):
    """Largest shortest-path length; equals the diameter."""
    return diameter(dataset)


def min_path_length(dataset):
    """Smallest shortest-path length over distinct node pairs.

    This is 1 for any connected graph with at least one edge; implemented
    literally for completeness of the registered function family.
    """
    all_dist = _connected_distances(dataset)
    if len(all_dist) < 2:
        raise DegenerateGraph("min_path_length requires at least 2 nodes")
    return min(
        d for dist in all_dist.values() for node, d in dist.items() if d > 0
    )
