"""Owen value and coalitional semivalues of the weighted group-degree game.

The game: a coalition C is worth the total node weight f of the nodes adjacent
to C but outside it. Players are split into communities; a coalitional
semivalue first draws a set R of other communities (size law ``beta``) and
then a set of the player's own community-mates (size law ``alpha_j``).

Because the draws for R and for the mates are independent, each neighbour's
chance of still being unreached factorises into a community-level term and a
within-community term, which is what makes the closed forms below polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .games import CoalitionGame, check_distribution
from .graph import CommunityStructure, Graph
from .result import CentralityResult

PRESETS = ("owen", "owen_banzhaf", "sym_banzhaf", "p_binomial")


@dataclass(frozen=True)
class CoalitionalWeights:
    """``beta`` over 0..m-1 other communities; ``alphas[j]`` over 0..|C_j|-1 mates."""

    beta: tuple[float, ...]
    alphas: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "beta", check_distribution(self.beta, len(self.beta), "beta"))
        object.__setattr__(self, "alphas", tuple(
            check_distribution(a, len(a), f"alpha[{j}]") for j, a in enumerate(self.alphas)
        ))

    def check_fits(self, CS: CommunityStructure) -> None:
        if len(self.beta) != CS.m or len(self.alphas) != CS.m:
            raise ValueError("weights do not match the number of communities")
        for j, group in enumerate(CS.members):
            if len(self.alphas[j]) != len(group):
                raise ValueError(f"alpha[{j}] does not match the size of community {j}")


def _uniform(size: int) -> tuple[float, ...]:
    return tuple([1.0 / size] * size)


def _binomial(size: int, p: float = 0.5) -> tuple[float, ...]:
    top = size - 1
    return tuple(math.comb(top, k) * p ** k * (1 - p) ** (top - k) for k in range(size))


def preset_weights(name: str, m: int, sizes: Sequence[int], p: float | None = None) -> CoalitionalWeights:
    """Standard two-level weightings.

    ``owen`` is uniform at both levels, ``owen_banzhaf`` binomial at both,
    ``sym_banzhaf`` binomial over communities and uniform inside, and
    ``p_binomial`` draws each other community independently with probability
    ``p`` (uniform inside).
    """
    if len(sizes) != m:
        raise ValueError("need one size per community")
    if name == "owen":
        return CoalitionalWeights(_uniform(m), tuple(_uniform(c) for c in sizes))
    if name == "owen_banzhaf":
        return CoalitionalWeights(_binomial(m), tuple(_binomial(c) for c in sizes))
    if name == "sym_banzhaf":
        return CoalitionalWeights(_binomial(m), tuple(_uniform(c) for c in sizes))
    if name == "p_binomial":
        if p is None or not 0.0 <= p <= 1.0:
            raise ValueError("p_binomial needs p in [0, 1]")
        return CoalitionalWeights(_binomial(m, p), tuple(_uniform(c) for c in sizes))
    raise ValueError(f"unknown preset {name!r}")


def preset_for(name: str, CS: CommunityStructure, p: float | None = None) -> CoalitionalWeights:
    return preset_weights(name, CS.m, [len(g) for g in CS.members], p)


def _comb(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def _avoid_chance(table: Sequence[float], pool: int, blocked: int, extra: int = 0) -> float:
    """Expected chance that a random subset of a ``pool``-element set, with
    size drawn from ``table``, misses ``blocked - extra`` given elements:
    ``sum_k table[k] * C(pool + extra - blocked, k) / C(pool, k)``."""
    total = 0.0
    for k, mass in enumerate(table):
        if mass:
            denom = math.comb(pool, k)
            if denom:
                total += mass * _comb(pool + extra - blocked, k) / denom
    return total


def _node_weights(G: Graph, f: Sequence[float] | None) -> list[float]:
    if f is None:
        return G.node_weights_or(1.0)
    if len(f) != G.n:
        raise ValueError("need one weight per node")
    return [float(x) for x in f]


@dataclass(frozen=True)
class _Degrees:
    deg_cs: list[int]          # adjacent communities other than the node's own
    into: list[dict[int, int]]  # neighbour count per community


def _community_degrees(G: Graph, CS: CommunityStructure) -> _Degrees:
    if len(CS.assignment) != G.n:
        raise ValueError("community structure does not cover the graph")
    into = [dict() for _ in range(G.n)]
    for u in range(G.n):
        counts = into[u]
        for w in G.adj[u]:
            c = CS.assignment[w]
            counts[c] = counts.get(c, 0) + 1
    deg_cs = [sum(1 for c in into[u] if c != CS.assignment[u]) for u in range(G.n)]
    return _Degrees(deg_cs, into)


def coalitional_semivalue_degree(G: Graph, CS: CommunityStructure, weights: CoalitionalWeights,
                                 f: Sequence[float] | None = None) -> CentralityResult:
    """Coalitional semivalue of the weighted group-degree game on an undirected graph.

    Player v in community j gains f(u) from neighbour u when neither u nor any
    of u's other neighbours is already in the coalition, and loses f(v) when
    one of its own neighbours already is.
    """
    if G.directed:
        raise ValueError("the weighted group-degree game needs an undirected graph")
    weights.check_fits(CS)
    fw = _node_weights(G, f)
    deg = _community_degrees(G, CS)
    m = CS.m
    # Community-level avoidance chance by number of blocked other communities.
    h_beta = [_avoid_chance(weights.beta, m - 1, a) for a in range(m + 1)]
    h_alpha, h_alpha_out = [], []
    for j, group in enumerate(CS.members):
        size = len(group)
        alpha = weights.alphas[j]
        h_alpha.append([_avoid_chance(alpha, size - 1, b) for b in range(size + 1)])
        h_alpha_out.append([_avoid_chance(alpha, size - 1, b, extra=1) for b in range(size + 2)])

    scores = []
    for v in range(G.n):
        j = CS.assignment[v]
        total = 0.0
        for u in G.adj[v]:
            within = deg.into[u].get(j, 0)
            if CS.assignment[u] == j:
                total += fw[u] * h_beta[deg.deg_cs[u]] * h_alpha[j][within]
            else:
                total += fw[u] * h_beta[deg.deg_cs[u]] * h_alpha_out[j][within]
        own = deg.into[v].get(j, 0)
        total += fw[v] * (h_beta[deg.deg_cs[v]] * h_alpha[j][own] - 1.0)
        scores.append(total)
    params = {"beta": list(weights.beta), "alphas": [list(a) for a in weights.alphas]}
    return CentralityResult.build("coalitional-semivalue", G.labels, scores, params)


def owen_degree(G: Graph, CS: CommunityStructure, f: Sequence[float] | None = None) -> CentralityResult:
    """Owen value of the weighted group-degree game in one edge scan.

    Uniform draws turn each avoidance chance into a reciprocal: ``1/(1+a)`` for
    a blocked communities and ``1/(1+b)`` (or ``1/b`` across communities) for b
    blocked mates.
    """
    if G.directed:
        raise ValueError("the weighted group-degree game needs an undirected graph")
    fw = _node_weights(G, f)
    deg = _community_degrees(G, CS)
    scores = []
    for v in range(G.n):
        j = CS.assignment[v]
        total = 0.0
        for u in G.adj[v]:
            within = deg.into[u].get(j, 0)
            if CS.assignment[u] == j:
                total += fw[u] / ((1 + deg.deg_cs[u]) * (1 + within))
            else:
                total += fw[u] / ((1 + deg.deg_cs[u]) * within)
        own = deg.into[v].get(j, 0)
        total += fw[v] * (1.0 / ((1 + deg.deg_cs[v]) * (1 + own)) - 1.0)
        scores.append(total)
    return CentralityResult.build("owen-degree", G.labels, scores)


def weighted_degree_game(G: Graph, f: Sequence[float] | None = None) -> CoalitionGame:
    """``nu(C)``: total weight of nodes outside C adjacent to C.

    Evaluation uses per-byte lookup tables of neighbourhood unions and weight
    sums so that exhaustive solvers stay fast on a few dozen nodes.
    """
    fw = _node_weights(G, f)
    nbr = G.neighbor_masks()
    n = G.n
    chunks = (n + 7) // 8
    reach_tables, weight_tables = [], []
    for c in range(chunks):
        reach = [0] * 256
        weight = [0.0] * 256
        for byte in range(1, 256):
            low = byte & -byte
            bit = low.bit_length() - 1
            node = 8 * c + bit
            rest = byte ^ low
            if node < n:
                reach[byte] = reach[rest] | nbr[node]
                weight[byte] = weight[rest] + fw[node]
            else:
                reach[byte] = reach[rest]
                weight[byte] = weight[rest]
        reach_tables.append(reach)
        weight_tables.append(weight)

    def value(mask: int) -> float:
        covered = 0
        for c in range(chunks):
            covered |= reach_tables[c][(mask >> (8 * c)) & 0xFF]
        outside = covered & ~mask
        total = 0.0
        for c in range(chunks):
            total += weight_tables[c][(outside >> (8 * c)) & 0xFF]
        return total

    return CoalitionGame(n, value, G.labels)
