"""Deterministic constructors for the classic-graph property-reasoning set.

Each generator builds one small connected graph with integer node ids
(stringified in the dataset), so property values like the lollipop graph's
eccentricity map are reproducible from source.
"""

from __future__ import annotations

import networkx as nx

from .store import DataProfile, GraphInstance, GraphInstanceSet


def _relabeled(graph):
    return nx.convert_node_labels_to_integers(graph, ordering="sorted")


GENERATORS = {
    "balanced_tree": lambda: nx.balanced_tree(2, 3),
    "barbell_graph": lambda: nx.barbell_graph(4, 4),
    "binomial_tree": lambda: nx.binomial_tree(4),
    "bull_graph": nx.bull_graph,
    "chvatal_graph": nx.chvatal_graph,
    "circular_ladder_graph": lambda: nx.circular_ladder_graph(6),
    "complete_bipartite_graph": lambda: nx.complete_bipartite_graph(3, 5),
    "complete_graph": lambda: nx.complete_graph(6),
    "cubical_graph": nx.cubical_graph,
    "cycle_graph": lambda: nx.cycle_graph(8),
    "desargues_graph": nx.desargues_graph,
    "diamond_graph": nx.diamond_graph,
    "dodecahedral_graph": nx.dodecahedral_graph,
    "frucht_graph": nx.frucht_graph,
    "full_rary_tree": lambda: nx.full_rary_tree(3, 13),
    "grid_graph": lambda: _relabeled(nx.grid_2d_graph(3, 4)),
    "heawood_graph": nx.heawood_graph,
    "house_graph": nx.house_graph,
    "house_x_graph": nx.house_x_graph,
    "hypercube_graph": lambda: _relabeled(nx.hypercube_graph(3)),
    "icosahedral_graph": nx.icosahedral_graph,
    "krackhardt_kite_graph": nx.krackhardt_kite_graph,
    "ladder_graph": lambda: nx.ladder_graph(6),
    "lollipop_graph": lambda: nx.lollipop_graph(4, 6),
    "moebius_kantor_graph": nx.moebius_kantor_graph,
    "octahedral_graph": nx.octahedral_graph,
    "pappus_graph": nx.pappus_graph,
    "path_graph": lambda: nx.path_graph(12),
    "petersen_graph": nx.petersen_graph,
    "sedgewick_maze_graph": nx.sedgewick_maze_graph,
    "star_graph": lambda: nx.star_graph(6),
    "tetrahedral_graph": nx.tetrahedral_graph,
    "truncated_cube_graph": nx.truncated_cube_graph,
    "truncated_tetrahedron_graph": nx.truncated_tetrahedron_graph,
    "turan_graph": lambda: nx.turan_graph(8, 3),
    "tutte_graph": nx.tutte_graph,
    "wheel_graph": lambda: nx.wheel_graph(6),
}


def build_instance(name):
    graph = GENERATORS[name]()
    nodes = tuple(str(n) for n in sorted(graph.nodes()))
    links = tuple(
        (str(u), str(v)) for u, v in sorted((min(u, v), max(u, v)) for u, v in graph.edges())
    )
    return GraphInstance(nodes=nodes, links=links, label=None)


def build_dataset(name="gpr"):
    graphs = {gname: build_instance(gname) for gname in sorted(GENERATORS)}
    profile = DataProfile(
        name=name,
        order=sum(len(g.nodes) for g in graphs.values()),
        size=sum(len(g.links) for g in graphs.values()),
        is_directed=False,
        is_weighted=False,
        extras={"graph_number": len(graphs)},
    )
    return GraphInstanceSet(profile=profile, graphs=graphs)
