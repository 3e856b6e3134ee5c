"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import json
import threading
from contextlib import contextmanager
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from graphcall.store import (
    DataProfile,
    GraphDataset,
    GraphInstance,
    GraphInstanceSet,
    LinkRecord,
    NodeRecord,
)

INF = float("inf")


def make_graph(edges, nodes=None, directed=False, weighted=False, labels=None,
               extras=None, name="test", timestamps=None, link_labels=None):
    """Small single-graph dataset from an edge list of (u, v) pairs."""
    labels = labels or {}
    node_ids = set(str(n) for n in (nodes or []))
    for u, v in edges:
        node_ids.update((str(u), str(v)))
    node_map = {
        nid: NodeRecord(id=nid, label=labels.get(nid)) for nid in sorted(node_ids)
    }
    links = []
    for i, (u, v) in enumerate(edges):
        links.append(
            LinkRecord(
                source=str(u),
                target=str(v),
                weight=1.0 if weighted else None,
                timestamp=None if timestamps is None else timestamps[i],
                label=None if link_labels is None else link_labels[i],
            )
        )
    profile = DataProfile(
        name=name,
        order=len(node_map),
        size=len(links),
        is_directed=directed,
        is_weighted=weighted,
        extras=dict(extras or {}),
    )
    return GraphDataset(profile=profile, nodes=node_map, links=tuple(links))


def make_instance_set(instances, name="iset", extras=None):
    """Instance-set dataset from {gid: (nodes, edges, label)}."""
    graphs = {}
    for gid, (nodes, edges, label) in instances.items():
        graphs[str(gid)] = GraphInstance(
            nodes=tuple(str(n) for n in nodes),
            links=tuple((str(u), str(v)) for u, v in edges),
            label=label,
        )
    merged = {"graph_number": len(graphs)}
    merged.update(extras or {})
    profile = DataProfile(
        name=name,
        order=sum(len(g.nodes) for g in graphs.values()),
        size=sum(len(g.links) for g in graphs.values()),
        extras=merged,
    )
    return GraphInstanceSet(profile=profile, graphs=graphs)


def floyd_warshall(dataset):
    """Independent all-pairs distance oracle (no BFS)."""
    nodes = sorted(dataset.nodes)
    index = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    dist = [[INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for link in dataset.links:
        i, j = index[link.source], index[link.target]
        dist[i][j] = min(dist[i][j], 1)
        if not dataset.profile.is_directed:
            dist[j][i] = min(dist[j][i], 1)
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            row_k = dist[k]
            row_i = dist[i]
            for j in range(n):
                alt = dik + row_k[j]
                if alt < row_i[j]:
                    row_i[j] = alt
    return {
        u: {v: dist[index[u]][index[v]] for v in nodes}
        for u in nodes
    }


def lollipop_dataset():
    """4-clique with a 6-node tail: the golden fixture for property values."""
    clique = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    tail = [(3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9)]
    return make_graph(clique + tail, name="lollipop")


def planted_recsys(n_users=20, n_items=20, seed=3):
    """Two-block interaction data: users 0..9 interact with items 0..9, users
    10..19 with items 10..19.  Per-user interaction order is shuffled, so the
    held-out (latest) item differs across users."""
    rng = np.random.default_rng(seed)
    edges = []
    timestamps = []
    half_u = n_users // 2
    half_i = n_items // 2
    users = [f"u{k}" for k in range(n_users)]
    items = [f"i{k}" for k in range(n_items)]
    for uk, user in enumerate(users):
        block = items[:half_i] if uk < half_u else items[half_i:]
        for t, idx in enumerate(rng.permutation(len(block))):
            edges.append((user, block[idx]))
            timestamps.append(100 * (t + 1) + uk)
    return make_graph(
        edges,
        nodes=users + items,
        timestamps=timestamps,
        name="planted",
    )


def heldout_auc(model):
    """Exhaustive pairwise AUC over each user's held-out item vs all items the
    user never interacted with."""
    scores = []
    for user, pos in model.heldout_.items():
        uvec = model.user_factors_[model._u_index[user]]
        history = set(model.seen_[user]) | {pos}
        negatives = [i for i in model.items_ if i not in history]
        if not negatives:
            continue
        pos_score = float(uvec @ model.item_factors_[model._i_index[pos]])
        wins = 0.0
        for neg in negatives:
            neg_score = float(uvec @ model.item_factors_[model._i_index[neg]])
            if pos_score > neg_score:
                wins += 1.0
            elif pos_score == neg_score:
                wins += 0.5
        scores.append(wins / len(negatives))
    return sum(scores) / len(scores)


def toy_kg(two_relations=False):
    """Separable four-entity knowledge graph.

    The optional second relation is translation-consistent with the first
    (no pair of triples forces two relations onto the same entity offset).
    """
    edges = [("A", "B"), ("C", "D")]
    link_labels = ["likes", "likes"]
    if two_relations:
        edges += [("B", "C")]
        link_labels += ["mentors"]
    return make_graph(
        edges,
        directed=True,
        link_labels=link_labels,
        name="toykg",
    )


def filtered_hits_at_1(model, test_triples, known_triples):
    """Exhaustive filtered tail ranking: a hit when the true tail is the
    closest candidate after removing other known-true tails."""
    from graphcall.kg import distance

    hits = 0
    for h, r, t in test_triples:
        hvec = model._entity_vec(h)
        rvec = model._relation_vec(r)
        true_tails = {tt for hh, rr, tt in known_triples if hh == h and rr == r and tt != t}
        ranked = sorted(
            (
                (distance(hvec, rvec, model._entity_vec(e)), e)
                for e in model.entities_
                if e not in true_tails
            ),
        )
        if ranked[0][1] == t:
            hits += 1
    return hits / len(test_triples)


class _MockHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length).decode("utf-8")
        self.server.requests.append(json.loads(body))
        status, payload = self.server.script[min(len(self.server.requests) - 1, len(self.server.script) - 1)]
        data = payload if isinstance(payload, bytes) else json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


@contextmanager
def mock_endpoint(script):
    """Scripted completion endpoint.

    ``script`` is a list of (status, payload) responses; the final entry
    repeats for any further requests.  Yields (url, recorded_requests).
    """
    server = ThreadingHTTPServer(("127.0.0.1", 0), _MockHandler)
    server.script = script
    server.requests = []
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_port}/complete", server.requests
    finally:
        server.shutdown()
        server.server_close()
