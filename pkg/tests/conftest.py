import random

import pytest

from gtcentrality.generators import preferential_attachment, random_graph
from gtcentrality.gmcnets import BAF, OAF, And, Not, Or, RuleSet, Xor
from gtcentrality.graph import build_graph


def path_graph(n, weights=None):
    labels = [str(i) for i in range(1, n + 1)]
    if weights is None:
        return build_graph([(labels[i], labels[i + 1]) for i in range(n - 1)])
    return build_graph([(labels[i], labels[i + 1], weights[i]) for i in range(n - 1)])


def p3(weights=None):
    if weights is None:
        return build_graph([("a", "b"), ("b", "c")])
    return build_graph([("a", "b", weights[0]), ("b", "c", weights[1])])


def triangle():
    return build_graph([("a", "b"), ("b", "c"), ("a", "c")])


def star(leaves):
    return build_graph([("c", f"l{i}") for i in range(leaves)])


def random_graphs(count, n_lo, n_hi, seed, weighted=False, connected=True):
    """Deterministic mix of sparse and dense G(n, p) graphs."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(n_lo, n_hi)
        p = rng.choice((0.2, 0.35, 0.5, 0.7))
        yield random_graph(n, p, seed * 1000 + i, weights=(0.5, 3.0) if weighted else None,
                           connected=connected)


def random_scale_free(count, n_lo, n_hi, seed):
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(n_lo, n_hi)
        yield preferential_attachment(n, rng.choice((1, 2)), seed * 1000 + i)


def random_distribution(size, rng):
    raw = [rng.random() ** 2 for _ in range(size)]
    total = sum(raw)
    return tuple(x / total for x in raw)


def max_diff(a, b):
    a, b = list(a), list(b)
    assert len(a) == len(b)
    return max((abs(x - y) for x, y in zip(a, b)), default=0.0)


def random_formula(players, rng, depth=4):
    """Random read-once formula using every name in ``players`` exactly once."""
    players = list(players)
    if depth == 0 or len(players) == 1 or rng.random() < 0.3:
        rng.shuffle(players)
        atom = BAF(tuple(players)) if rng.random() < 0.5 else OAF(tuple(players))
        return Not(atom) if rng.random() < 0.25 else atom
    rng.shuffle(players)
    cut = rng.randint(1, len(players) - 1)
    left = random_formula(players[:cut], rng, depth - 1)
    right = random_formula(players[cut:], rng, depth - 1)
    node = rng.choice((And, Or, Xor))(left, right)
    return Not(node) if rng.random() < 0.2 else node


def random_ruleset(rng, max_players=7, max_rules=4):
    names = [f"p{i}" for i in range(rng.randint(1, max_players))]
    RS = RuleSet(players=list(names))
    for _ in range(rng.randint(1, max_rules)):
        support = rng.sample(names, rng.randint(1, len(names)))
        RS.add(random_formula(support, rng), round(rng.uniform(-5, 10), 3))
    return RS


@pytest.fixture
def rng():
    return random.Random(20240607)
