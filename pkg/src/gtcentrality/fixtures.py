"""Small reference networks and games with hand-checkable centralities."""

from __future__ import annotations

from .graph import CommunityStructure, Graph, build_graph

# 13-node sample network: two hubs v1, v2 joined through five middle nodes,
# with a pendant tree hanging off v8.
F1_EDGES = [
    ("v1", "v7"), ("v7", "v2"), ("v4", "v1"), ("v5", "v1"), ("v1", "v6"),
    ("v6", "v2"), ("v2", "v9"), ("v9", "v3"), ("v1", "v8"), ("v8", "v2"),
    ("v2", "v10"), ("v10", "v3"), ("v8", "v11"), ("v11", "v12"), ("v11", "v13"),
]


def f1() -> Graph:
    return build_graph(F1_EDGES)


def f2() -> Graph:
    """19 nodes: hub v1 with 8 leaves, hub v2 with 4 leaves bridged to hub v3
    (4 leaves), and one v1 leaf linked to one v2 leaf."""
    edges = [("v1", f"a{i}") for i in range(1, 9)]
    edges += [("v2", f"b{i}") for i in range(1, 5)]
    edges.append(("v2", "v3"))
    edges += [("v3", f"c{i}") for i in range(1, 5)]
    edges.append(("a4", "b1"))
    return build_graph(edges)


def f3() -> Graph:
    """10 nodes: hubs v2 and v3, each with 4 leaves, joined by an edge."""
    edges = [("v2", f"b{i}") for i in range(1, 5)]
    edges.append(("v2", "v3"))
    edges += [("v3", f"c{i}") for i in range(1, 5)]
    return build_graph(edges)


# Zachary's karate club, nodes labelled 1..34.
ZACHARY_EDGES = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11), (1, 12),
    (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3), (2, 4), (2, 8), (2, 14),
    (2, 18), (2, 20), (2, 22), (2, 31), (3, 4), (3, 8), (3, 9), (3, 10), (3, 14), (3, 28),
    (3, 29), (3, 33), (4, 8), (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17),
    (7, 17), (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34), (16, 33),
    (16, 34), (19, 33), (19, 34), (20, 34), (21, 33), (21, 34), (23, 33), (23, 34), (24, 26),
    (24, 28), (24, 30), (24, 33), (24, 34), (25, 26), (25, 28), (25, 32), (26, 32), (27, 30),
    (27, 34), (28, 34), (29, 32), (29, 34), (30, 33), (30, 34), (31, 33), (31, 34), (32, 33),
    (32, 34), (33, 34),
]

# The post-split faction of each member as recorded in the original field
# study: the instructor's side (node 1) and the administrator's side (node 34).
ZACHARY_INSTRUCTOR_FACTION = frozenset(
    {1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 17, 18, 20, 22}
)


def zachary() -> Graph:
    return build_graph([(str(u), str(v)) for u, v in ZACHARY_EDGES],
                       nodes=[str(i) for i in range(1, 35)])


def zachary_factions(G: Graph) -> CommunityStructure:
    return CommunityStructure.from_labels(
        G, {label: "instructor" if int(label) in ZACHARY_INSTRUCTOR_FACTION else "administrator"
            for label in G.labels}
    )


# Three apple pickers standing under trees with 20, 40 and 20 apples. A proper
# group collects ten apples per fruit of the richest tree any member reaches;
# all three together shake every tree for 600.
APPLE_TREES = (20, 40, 20)
APPLES_ALL = 600.0


def apples_value(coalition) -> float:
    members = set(coalition)
    if not members:
        return 0.0
    if len(members) == len(APPLE_TREES):
        return APPLES_ALL
    return 10.0 * max(APPLE_TREES[i] for i in members)


# Conjunctive MC-Net rules reproducing the apples game, as
# (positive players, negative players, value) with players 0..2.
APPLES_RULES = [
    ((1,), (), 400.0),
    ((0,), (1,), 200.0),
    ((2,), (0, 1), 200.0),
    ((0, 1, 2), (), 200.0),
]
