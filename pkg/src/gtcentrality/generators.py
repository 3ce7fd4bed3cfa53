"""Seeded random graph generators used by tests, benchmarks and simulations."""

from __future__ import annotations

import random

from .graph import Graph, build_graph


def preferential_attachment(n: int, k: int, seed: int, weights: tuple[float, float] | None = None) -> Graph:
    """Scale-free graph: each new node links to ``k`` distinct earlier nodes
    picked with probability proportional to their degree.

    The first ``k + 1`` nodes form a clique. ``weights=(lo, hi)`` draws
    uniform edge weights from that range.
    """
    if k < 1 or n < k + 1:
        raise ValueError("need k >= 1 and n >= k + 1")
    rng = random.Random(seed)
    edges = [(u, v) for v in range(k + 1) for u in range(v)]
    # Every edge endpoint appears once per incident edge, so uniform picks from
    # this list are degree-proportional.
    endpoints = [x for e in edges for x in e]
    for v in range(k + 1, n):
        targets: set[int] = set()
        while len(targets) < k:
            targets.add(rng.choice(endpoints))
        for u in sorted(targets):
            edges.append((u, v))
            endpoints.extend((u, v))
    return _finish(n, edges, rng, weights)


def random_graph(n: int, p: float, seed: int, weights: tuple[float, float] | None = None,
                 connected: bool = False) -> Graph:
    """Erdos-Renyi G(n, p); ``connected=True`` first lays a random spanning tree."""
    rng = random.Random(seed)
    chosen: set[tuple[int, int]] = set()
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            a, b = order[i], order[rng.randrange(i)]
            chosen.add((min(a, b), max(a, b)))
    for v in range(n):
        for u in range(v):
            if rng.random() < p:
                chosen.add((u, v))
    return _finish(n, sorted(chosen), rng, weights)


def random_tree(n: int, seed: int) -> Graph:
    rng = random.Random(seed)
    return _finish(n, [(rng.randrange(v), v) for v in range(1, n)], rng, None)


def _finish(n: int, edges, rng: random.Random, weights) -> Graph:
    labels = [str(i) for i in range(n)]
    if weights is None:
        return build_graph([(labels[u], labels[v]) for u, v in edges], nodes=labels)
    lo, hi = weights
    return build_graph([(labels[u], labels[v], rng.uniform(lo, hi)) for u, v in edges], nodes=labels)
