"""Curated template bank for prompt dataset generation.

Every template carries at least four surface variants: a base phrasing plus
rephrasings that keep the meaning (and the embedded call) unchanged.
Patterns use ``string.Template`` placeholders; ``$value`` in an input pattern
is filled with the rendered execution result of the output's call.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PatternPair:
    input_pattern: str
    output_pattern: str


@dataclass(frozen=True)
class PromptTemplate:
    task: str
    name: str
    variants: tuple
    slots: tuple


def _t(task, name, slots, *variants):
    return PromptTemplate(task=task, name=name, variants=tuple(PatternPair(*v) for v in variants), slots=tuple(slots))


def _property_call(function, extra=""):
    return f'[GR(GL("$dataset", {{"$graph_id"}}), "toolx:{function}"{extra})-->r]'


def _statement_property(name, phrasings, extra=""):
    call = _property_call(name if name not in ("eccentricity_node",) else "eccentricity", extra)
    variants = []
    for input_pattern, value_slot in phrasings:
        variants.append((input_pattern, input_pattern.replace(value_slot, call)))
    slots = ["dataset", "graph_id", "graph"]
    if "$node1" in extra:
        slots += ["node1", "node2"]
    elif "$node" in extra:
        slots.append("node")
    return _t("property", name, slots, *variants)


def _qa(task, name, questions, answer):
    return _t(task, name, _slots_of(answer), *[(q, answer) for q in questions])


def _slots_of(pattern):
    import string

    return tuple(sorted({m[1] or m[2] for m in string.Template.pattern.findall(pattern) if m[1] or m[2]}))


PROPERTY_TEMPLATES = (
    _statement_property(
        "order",
        [
            ("There exist $value nodes in the $graph.", "$value"),
            ("The $graph contains $value nodes in total.", "$value"),
            ("Counting its vertices, the $graph has an order of $value.", "$value"),
            ("The order of the $graph is $value.", "$value"),
        ],
    ),
    _statement_property(
        "size",
        [
            ("Via $value links, nodes in the $graph are all connected.", "$value"),
            ("The $graph has a size of $value links.", "$value"),
            ("There are $value links in the $graph.", "$value"),
            ("The size of the $graph is $value.", "$value"),
        ],
    ),
    _statement_property(
        "density",
        [
            ("The undirected $graph has a density of $value.", "$value"),
            ("The density of the $graph is $value.", "$value"),
            ("With its links counted, the $graph reaches a density of $value.", "$value"),
            ("Relative to a complete graph, the $graph has a density of $value.", "$value"),
        ],
    ),
    _statement_property(
        "eccentricity",
        [
            ("The nodes in the $graph have eccentricity values of $value.", "$value"),
            ("Eccentricity values for the $graph are $value.", "$value"),
            ("Per node, the eccentricities of the $graph are $value.", "$value"),
            ("The eccentricity map of the $graph is $value.", "$value"),
        ],
    ),
    _statement_property(
        "eccentricity_node",
        [
            ("The eccentricity of node #$node in the $graph is $value.", "$value"),
            ("In the $graph, node #$node has an eccentricity of $value.", "$value"),
            ("Node #$node of the $graph has eccentricity $value.", "$value"),
            ("Within the $graph, the eccentricity of node #$node equals $value.", "$value"),
        ],
        extra=", node#$node",
    ),
    _statement_property(
        "radius",
        [
            ("The radius of the $graph is $value.", "$value"),
            ("The $graph has a radius of $value.", "$value"),
            ("Measured by minimum eccentricity, the radius of the $graph is $value.", "$value"),
            ("For the $graph, the graph radius equals $value.", "$value"),
        ],
    ),
    _statement_property(
        "diameter",
        [
            ("The diameter of the $graph is $value.", "$value"),
            ("The $graph has a diameter of $value.", "$value"),
            ("The longest shortest path in the $graph has length $value.", "$value"),
            ("For the $graph, the graph diameter equals $value.", "$value"),
        ],
    ),
    _statement_property(
        "center",
        [
            ("The center of the $graph includes node(s) $value.", "$value"),
            ("The $graph has a center at nodes $value.", "$value"),
            ("Nodes $value form the center of the $graph.", "$value"),
            ("The central nodes of the $graph are $value.", "$value"),
        ],
    ),
    _statement_property(
        "periphery",
        [
            ("The periphery of the $graph includes the nodes $value.", "$value"),
            ("Nodes $value form the periphery of the $graph.", "$value"),
            ("The peripheral nodes of the $graph are $value.", "$value"),
            ("The $graph has its periphery at nodes $value.", "$value"),
        ],
    ),
    _statement_property(
        "shortest_path",
        [
            ("In the $graph, the length of shortest path between node #$node1 and node #$node2 is $value.", "$value"),
            ("The shortest path between node #$node1 and node #$node2 in the $graph has length $value.", "$value"),
            ("Between node #$node1 and node #$node2, the $graph has a shortest path of length $value.", "$value"),
            ("Node #$node1 and node #$node2 of the $graph are $value hops apart.", "$value"),
        ],
        extra=', node#$node1, node#$node2',
    ),
    _statement_property(
        "avg_path_length",
        [
            ("The average length of shortest path for all nodes in the $graph is $value.", "$value"),
            ("Averaged over all nodes, shortest paths in the $graph have length $value.", "$value"),
            ("The mean shortest path length of the $graph is $value.", "$value"),
            ("In the $graph, the average shortest path length equals $value.", "$value"),
        ],
    ),
)

QA_PROPERTY_TEMPLATES = tuple(
    _qa(
        "qa_property",
        name,
        [
            f"What is the {phrase} of the $graph?",
            f"Can you tell me the {phrase} of the $graph?",
            f"Please compute the {phrase} of the $graph.",
            f"Do you know the {phrase} of the $graph?",
        ],
        answer,
    )
    for name, phrase, answer in (
        ("order", "order", 'The order of the $graph is [GR(GL("$dataset", {"$graph_id"}), "toolx:order")-->r].'),
        ("size", "size", 'The size of the $graph is [GR(GL("$dataset", {"$graph_id"}), "toolx:size")-->r].'),
        ("density", "density", 'The density of the $graph is [GR(GL("$dataset", {"$graph_id"}), "toolx:density")-->r].'),
        ("radius", "radius", 'The radius of the $graph is [GR(GL("$dataset", {"$graph_id"}), "toolx:radius")-->r].'),
        ("diameter", "diameter", 'The diameter of the $graph is [GR(GL("$dataset", {"$graph_id"}), "toolx:diameter")-->r].'),
        ("center", "center", 'The center of the $graph includes node(s) [GR(GL("$dataset", {"$graph_id"}), "toolx:center")-->r].'),
        ("periphery", "periphery", 'The periphery of the $graph includes node(s) [GR(GL("$dataset", {"$graph_id"}), "toolx:periphery")-->r].'),
    )
)

TOPIC_TEMPLATES = (
    _t(
        "topic",
        "topic",
        ("dataset", "node", "value"),
        (
            "In the $dataset bibliographic network, paper #$node focuses on the topic of $value.",
            'In the $dataset bibliographic network, paper #$node focuses on the topic of [GR(GL("$dataset"), "graph_bert:topic", paper#$node)-->r].',
        ),
        (
            "Within $dataset, paper #$node is dedicated to the study of $value.",
            'Within $dataset, paper #$node is dedicated to the study of [GR(GL("$dataset"), "graph_bert:topic", paper#$node)-->r].',
        ),
        (
            "The $dataset bibliographic network's paper #$node is concerned with the area of $value.",
            'The $dataset bibliographic network\'s paper #$node is concerned with the area of [GR(GL("$dataset"), "graph_bert:topic", paper#$node)-->r].',
        ),
        (
            "Paper #$node in the $dataset network investigates the field of $value.",
            'Paper #$node in the $dataset network investigates the field of [GR(GL("$dataset"), "graph_bert:topic", paper#$node)-->r].',
        ),
    ),
)

QA_TOPIC_TEMPLATES = (
    _qa(
        "qa_topic",
        "topic",
        [
            "What is the topic of paper #$node in the $dataset bibliographic network?",
            "Which topic does paper #$node in the $dataset bibliographic network focus on?",
            "Can you tell me the topic of paper #$node in $dataset?",
            "What subject does paper #$node in the $dataset network address?",
        ],
        'The topic of paper #$node in the $dataset bibliographic network is [GR(GL("$dataset"), "graph_bert:topic", paper#$node)-->r].',
    ),
)

MOLECULE_TEMPLATES = (
    _t(
        "molecule",
        "molecule_function",
        ("dataset", "instance", "value"),
        (
            "The molecular graph instance #$instance in the $dataset dataset has a function of $value.",
            'The molecular graph instance #$instance in the $dataset dataset has a function of [GR(GL("$dataset"), "seg_bert:molecule_function", instance#$instance)-->r].',
        ),
        (
            "In $dataset, instance #$instance of the molecular graph demonstrates a function of $value.",
            'In $dataset, instance #$instance of the molecular graph demonstrates a function of [GR(GL("$dataset"), "seg_bert:molecule_function", instance#$instance)-->r].',
        ),
        (
            "The chemical molecular graph numbered $instance in $dataset is characterized by a function of $value.",
            'The chemical molecular graph numbered $instance in $dataset is characterized by a function of [GR(GL("$dataset"), "seg_bert:molecule_function", instance#$instance)-->r].',
        ),
        (
            "For chemical molecular graph instance #$instance in $dataset, its function is $value.",
            'For chemical molecular graph instance #$instance in $dataset, its function is [GR(GL("$dataset"), "seg_bert:molecule_function", instance#$instance)-->r].',
        ),
    ),
)

QA_MOLECULE_TEMPLATES = (
    _qa(
        "qa_molecule",
        "molecule_function",
        [
            "What is the function for the chemical molecular graph #$instance in $dataset?",
            "Which function does the molecular graph instance #$instance in $dataset have?",
            "Can you tell me the function of molecular graph #$instance in $dataset?",
            "What function does instance #$instance of $dataset demonstrate?",
        ],
        'The function for the chemical molecular graph #$instance in $dataset is [GR(GL("$dataset"), "seg_bert:molecule_function", instance#$instance)-->r].',
    ),
)

RECOMMENDATION_TEMPLATES = (
    _t(
        "recommendation",
        "recommendation",
        ("dataset", "user", "item", "value"),
        (
            "The likelihood that user #$user will be interested in item #$item in $dataset is $value.",
            'The likelihood that user #$user will be interested in item #$item in $dataset is [GR(GL("$dataset"), "bpr:recommendation", user#$user, item#$item)-->r].',
        ),
        (
            "In $dataset, user #$user shows an interest of $value in item #$item.",
            'In $dataset, user #$user shows an interest of [GR(GL("$dataset"), "bpr:recommendation", user#$user, item#$item)-->r] in item #$item.',
        ),
        (
            "User #$user is likely to pick item #$item in $dataset with probability $value.",
            'User #$user is likely to pick item #$item in $dataset with probability [GR(GL("$dataset"), "bpr:recommendation", user#$user, item#$item)-->r].',
        ),
        (
            "How strongly user #$user favors item #$item in $dataset is scored at $value.",
            'How strongly user #$user favors item #$item in $dataset is scored at [GR(GL("$dataset"), "bpr:recommendation", user#$user, item#$item)-->r].',
        ),
    ),
    _t(
        "recommendation",
        "topk_recommendation",
        ("dataset", "user", "k", "value"),
        (
            "In $dataset, the top $k items that user #$user likes include $value.",
            'In $dataset, the top $k items that user #$user likes include [GR(GL("$dataset"), "bpr:topk_recommendation", user#$user, $k)-->r].',
        ),
        (
            "The $k items recommended first to user #$user in $dataset are $value.",
            'The $k items recommended first to user #$user in $dataset are [GR(GL("$dataset"), "bpr:topk_recommendation", user#$user, $k)-->r].',
        ),
        (
            "For user #$user, $dataset ranks these $k items highest: $value.",
            'For user #$user, $dataset ranks these $k items highest: [GR(GL("$dataset"), "bpr:topk_recommendation", user#$user, $k)-->r].',
        ),
        (
            "User #$user's top $k picks in $dataset are $value.",
            'User #$user\'s top $k picks in $dataset are [GR(GL("$dataset"), "bpr:topk_recommendation", user#$user, $k)-->r].',
        ),
    ),
)

QA_RECOMMENDATION_TEMPLATES = (
    _qa(
        "qa_recommendation",
        "recommendation",
        [
            "How likely will user #$user be interested in item #$item in $dataset?",
            "What is the chance that user #$user picks item #$item in $dataset?",
            "Can you estimate user #$user's interest in item #$item in $dataset?",
            "How probable is it that user #$user likes item #$item in $dataset?",
        ],
        'The likelihood that user #$user will be interested in item #$item in $dataset is [GR(GL("$dataset"), "bpr:recommendation", user#$user, item#$item)-->r].',
    ),
)

COMMUNITY_TEMPLATES = (
    _t(
        "community",
        "community",
        ("dataset", "node", "value"),
        (
            "In the online social network $dataset, user #$node is involved in the $value community formed by users.",
            'In the online social network $dataset, user #$node is involved in the [GR(GL("$dataset"), "kmeans:community", user#$node)-->r] community formed by users.',
        ),
        (
            "User #$node of $dataset belongs to the $value community.",
            'User #$node of $dataset belongs to the [GR(GL("$dataset"), "kmeans:community", user#$node)-->r] community.',
        ),
        (
            "Within $dataset, user #$node sits in the $value community.",
            'Within $dataset, user #$node sits in the [GR(GL("$dataset"), "kmeans:community", user#$node)-->r] community.',
        ),
        (
            "The community of user #$node in $dataset is the $value one.",
            'The community of user #$node in $dataset is the [GR(GL("$dataset"), "kmeans:community", user#$node)-->r] one.',
        ),
    ),
    _t(
        "community",
        "community_count",
        ("dataset", "value"),
        (
            "In the $dataset social network, there exist a number of $value local communities formed by users.",
            'In the $dataset social network, there exist a number of [GR(GL("$dataset"), "kmeans:community_count")-->r] local communities formed by users.',
        ),
        (
            "Users of $dataset form $value local communities.",
            'Users of $dataset form [GR(GL("$dataset"), "kmeans:community_count")-->r] local communities.',
        ),
        (
            "$dataset splits into $value user communities.",
            '$dataset splits into [GR(GL("$dataset"), "kmeans:community_count")-->r] user communities.',
        ),
        (
            "The number of communities detected in $dataset is $value.",
            'The number of communities detected in $dataset is [GR(GL("$dataset"), "kmeans:community_count")-->r].',
        ),
    ),
    _t(
        "community",
        "community_max_size",
        ("dataset", "value"),
        (
            "The largest user-formed local community in $dataset consists of $value users.",
            'The largest user-formed local community in $dataset consists of [GR(GL("$dataset"), "kmeans:community_max_size")-->r] users.',
        ),
        (
            "$dataset houses a biggest community of $value users.",
            '$dataset houses a biggest community of [GR(GL("$dataset"), "kmeans:community_max_size")-->r] users.',
        ),
        (
            "At most, a community in $dataset gathers $value users.",
            'At most, a community in $dataset gathers [GR(GL("$dataset"), "kmeans:community_max_size")-->r] users.',
        ),
        (
            "The max community size in $dataset is $value.",
            'The max community size in $dataset is [GR(GL("$dataset"), "kmeans:community_max_size")-->r].',
        ),
    ),
    _t(
        "community",
        "common_community_check",
        ("dataset", "node1", "node2", "value"),
        (
            "In the online social network $dataset, user #$node1 and user #$node2 belong to $value community.",
            'In the online social network $dataset, user #$node1 and user #$node2 belong to [GR(GL("$dataset"), "kmeans:common_community_check", user#$node1, user#$node2)-->r] community.',
        ),
        (
            "Users #$node1 and #$node2 of $dataset are in $value community.",
            'Users #$node1 and #$node2 of $dataset are in [GR(GL("$dataset"), "kmeans:common_community_check", user#$node1, user#$node2)-->r] community.',
        ),
        (
            "Checking $dataset, user #$node1 and user #$node2 fall into $value community.",
            'Checking $dataset, user #$node1 and user #$node2 fall into [GR(GL("$dataset"), "kmeans:common_community_check", user#$node1, user#$node2)-->r] community.',
        ),
        (
            "In $dataset, #$node1 and #$node2 land in $value community.",
            'In $dataset, #$node1 and #$node2 land in [GR(GL("$dataset"), "kmeans:common_community_check", user#$node1, user#$node2)-->r] community.',
        ),
    ),
)

QA_COMMUNITY_TEMPLATES = (
    _qa(
        "qa_community",
        "community",
        [
            "In $dataset, what is the id of user #$node's community?",
            "Which community does user #$node belong to in $dataset?",
            "Can you tell me the community of user #$node in $dataset?",
            "What community id does user #$node carry in $dataset?",
        ],
        'In $dataset, the id of user #$node\'s community is [GR(GL("$dataset"), "kmeans:community", user#$node)-->r].',
    ),
)

KG_TEMPLATES = (
    _t(
        "kg",
        "relation",
        ("dataset", "head", "tail", "value"),
        (
            "According to the $dataset knowledge graph, the relation between entity #$head and entity #$tail is $value.",
            'According to the $dataset knowledge graph, the relation between entity #$head and entity #$tail is [GR(GL("$dataset"), "transe:relation", entity#$head, entity#$tail)-->r].',
        ),
        (
            "In $dataset, entity #$head relates to entity #$tail via $value.",
            'In $dataset, entity #$head relates to entity #$tail via [GR(GL("$dataset"), "transe:relation", entity#$head, entity#$tail)-->r].',
        ),
        (
            "The $dataset knowledge graph links entity #$head to entity #$tail through the relation $value.",
            'The $dataset knowledge graph links entity #$head to entity #$tail through the relation [GR(GL("$dataset"), "transe:relation", entity#$head, entity#$tail)-->r].',
        ),
        (
            "$dataset records the relation between #$head and #$tail as $value.",
            '$dataset records the relation between #$head and #$tail as [GR(GL("$dataset"), "transe:relation", entity#$head, entity#$tail)-->r].',
        ),
    ),
    _t(
        "kg",
        "tail_entity",
        ("dataset", "head", "relation", "value"),
        (
            "According to the $dataset knowledge graph, from entity #$head, via relation #$relation, we can derive entity $value.",
            'According to the $dataset knowledge graph, from entity #$head, via relation #$relation, we can derive entity [GR(GL("$dataset"), "transe:tail_entity", entity#$head, relation#$relation)-->r].',
        ),
        (
            "In $dataset, following relation #$relation from entity #$head leads to entity $value.",
            'In $dataset, following relation #$relation from entity #$head leads to entity [GR(GL("$dataset"), "transe:tail_entity", entity#$head, relation#$relation)-->r].',
        ),
        (
            "Starting at entity #$head in $dataset, relation #$relation reaches entity $value.",
            'Starting at entity #$head in $dataset, relation #$relation reaches entity [GR(GL("$dataset"), "transe:tail_entity", entity#$head, relation#$relation)-->r].',
        ),
        (
            "$dataset derives entity $value from entity #$head via relation #$relation.",
            '$dataset derives entity [GR(GL("$dataset"), "transe:tail_entity", entity#$head, relation#$relation)-->r] from entity #$head via relation #$relation.',
        ),
    ),
    _t(
        "kg",
        "head_entity",
        ("dataset", "relation", "tail", "value"),
        (
            "According to the $dataset knowledge graph, via relation #$relation, we can obtain entity #$tail from entity $value.",
            'According to the $dataset knowledge graph, via relation #$relation, we can obtain entity #$tail from entity [GR(GL("$dataset"), "transe:head_entity", relation#$relation, entity#$tail)-->r].',
        ),
        (
            "In $dataset, entity #$tail follows from entity $value through relation #$relation.",
            'In $dataset, entity #$tail follows from entity [GR(GL("$dataset"), "transe:head_entity", relation#$relation, entity#$tail)-->r] through relation #$relation.',
        ),
        (
            "Relation #$relation in $dataset points to entity #$tail from entity $value.",
            'Relation #$relation in $dataset points to entity #$tail from entity [GR(GL("$dataset"), "transe:head_entity", relation#$relation, entity#$tail)-->r].',
        ),
        (
            "$dataset obtains #$tail via #$relation from entity $value.",
            '$dataset obtains #$tail via #$relation from entity [GR(GL("$dataset"), "transe:head_entity", relation#$relation, entity#$tail)-->r].',
        ),
    ),
)

QA_KG_TEMPLATES = (
    _qa(
        "qa_kg",
        "relation",
        [
            "According to the $dataset knowledge graph, what is the relation between entity #$head and entity #$tail?",
            "In $dataset, how are entity #$head and entity #$tail related?",
            "Which relation connects entity #$head and entity #$tail in $dataset?",
            "Can you name the relation between #$head and #$tail in $dataset?",
        ],
        'According to the $dataset knowledge graph, the relation between entity #$head and entity #$tail is [GR(GL("$dataset"), "transe:relation", entity#$head, entity#$tail)-->r].',
    ),
)

LOADING_TEMPLATES = (
    _t(
        "loading",
        "load",
        ("dataset",),
        (
            "The structure of the $dataset graph dataset can be analyzed once it is loaded.",
            'The structure of the [GL("$dataset")] $dataset graph dataset can be analyzed once it is loaded.',
        ),
        (
            "Working with the $dataset network starts by loading it.",
            'Working with the [GL("$dataset")] $dataset network starts by loading it.',
        ),
        (
            "The $dataset graph data is available for reasoning.",
            'The [GL("$dataset")] $dataset graph data is available for reasoning.',
        ),
        (
            "Analysts often explore the $dataset graph interactively.",
            'Analysts often explore the [GL("$dataset")] $dataset graph interactively.',
        ),
    ),
)

TASK_TEMPLATES = {
    "property": PROPERTY_TEMPLATES,
    "qa_property": QA_PROPERTY_TEMPLATES,
    "topic": TOPIC_TEMPLATES,
    "qa_topic": QA_TOPIC_TEMPLATES,
    "molecule": MOLECULE_TEMPLATES,
    "qa_molecule": QA_MOLECULE_TEMPLATES,
    "recommendation": RECOMMENDATION_TEMPLATES,
    "qa_recommendation": QA_RECOMMENDATION_TEMPLATES,
    "community": COMMUNITY_TEMPLATES,
    "qa_community": QA_COMMUNITY_TEMPLATES,
    "kg": KG_TEMPLATES,
    "qa_kg": QA_KG_TEMPLATES,
    "loading": LOADING_TEMPLATES,
}


def default_templates(task=None):
    if task is None:
        return tuple(t for group in TASK_TEMPLATES.values() for t in group)
    if task not in TASK_TEMPLATES:
        raise KeyError(f"no template family {task!r}; known: {sorted(TASK_TEMPLATES)}")
    return TASK_TEMPLATES[task]
