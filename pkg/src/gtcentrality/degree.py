"""Shapley values of five degree- and closeness-style coalitional games.

A coalition C "covers" nodes and is worth the number of covered nodes:

* g1: C plus every node adjacent to C.
* g2: C plus every node with at least k(u) neighbours in C.
* g3: C plus every node u within distance cutoff(u) of C.
* g4: not a count; each node u adds f(dist(C, u)).
* g5: C plus every node u whose edge weight from C reaches W(u).

On directed graphs a coalition reaches along out-edges, so "neighbours of u"
are u's in-neighbours and degrees are in-degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Iterable, Sequence

import numpy as np

from .games import CoalitionGame
from .graph import INF, Graph, path_lengths, same_length
from .result import CentralityResult

GAMES = ("g1", "g2", "g3", "g4", "g5")


@dataclass(frozen=True)
class DegreeGameSpec:
    """Which game to play and its per-node parameters."""

    game: str
    k: tuple[int, ...] | None = None
    cutoff: tuple[float, ...] | None = None
    f: Callable[[float], float] | None = None
    w_cutoff: tuple[float, ...] | None = None

    def validate(self, G: Graph) -> None:
        if self.game not in GAMES:
            raise ValueError(f"unknown degree game {self.game!r}")
        if self.game == "g2":
            _check_thresholds(G, _require(self.k, "k", G))
        elif self.game == "g3":
            if any(not c > 0 for c in _require(self.cutoff, "cutoff", G)):
                raise ValueError("g3 cutoffs must be positive")
        elif self.game == "g4":
            if self.f is None:
                raise ValueError("g4 needs a distance function f")
        elif self.game == "g5":
            if any(not w > 0 for w in _require(self.w_cutoff, "w_cutoff", G)):
                raise ValueError("g5 thresholds must be positive")


def _require(values, name: str, G: Graph):
    if values is None or len(values) != G.n:
        raise ValueError(f"{name} needs one value per node")
    return values


def _check_thresholds(G: Graph, k: Sequence[int]) -> None:
    for v in range(G.n):
        if not 1 <= k[v] <= 1 + G.in_degree(v):
            raise ValueError(f"threshold k={k[v]} out of range for node {G.labels[v]!r}")


def _within(d: float, limit: float) -> bool:
    return d <= limit or same_length(d, limit)


def distance_matrix(G: Graph) -> list[list[float]]:
    """``D[s][t]``: weight-sum distance (edge count if unweighted)."""
    return [path_lengths(G, s, "weighted")[0] for s in range(G.n)]


def degree_game(G: Graph, spec: DegreeGameSpec) -> CoalitionGame:
    """The characteristic function of ``spec`` as a game on ``G``'s nodes."""
    spec.validate(G)
    n = G.n
    if spec.game == "g1":
        reach = [(1 << v) | sum(1 << u for u in set(G.adj[v])) for v in range(n)]

        def value(mask: int) -> float:
            covered = 0
            for v in _bits(mask):
                covered |= reach[v]
            return covered.bit_count()
    elif spec.game == "g2":
        k = spec.k

        def value(mask: int) -> float:
            total = 0
            for u in range(n):
                if mask >> u & 1 or sum(mask >> w & 1 for w in G.radj[u]) >= k[u]:
                    total += 1
            return total
    elif spec.game in ("g3", "g4"):
        D = distance_matrix(G)

        def nearest(mask: int, u: int) -> float:
            return min((D[w][u] for w in _bits(mask)), default=INF)

        if spec.game == "g3":
            cutoff = spec.cutoff

            def value(mask: int) -> float:
                return sum(1 for u in range(n) if mask >> u & 1 or _within(nearest(mask, u), cutoff[u]))
        else:
            f = _safe_f(spec.f)

            def value(mask: int) -> float:
                return sum(f(nearest(mask, u)) for u in range(n))
    else:
        W = spec.w_cutoff

        def value(mask: int) -> float:
            total = 0
            for u in range(n):
                if mask >> u & 1:
                    total += 1
                    continue
                got = sum(G.weight(w, u) for w in G.radj[u] if mask >> w & 1)
                if got >= W[u]:
                    total += 1
            return total

    return CoalitionGame(n, value, G.labels)


def nu_degree_game(G: Graph, spec: DegreeGameSpec, C: Iterable[int]) -> float:
    return degree_game(G, spec)(C)


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _safe_f(f: Callable[[float], float]) -> Callable[[float], float]:
    """Distance scaling with the unreachable convention ``f(inf) = 0``."""
    def g(d: float) -> float:
        return 0.0 if d == INF else float(f(d))
    return g


def sv_g1(G: Graph) -> CentralityResult:
    """Each node u splits one unit among itself and its in-neighbours."""
    share = [1.0 / (1 + G.in_degree(u)) for u in range(G.n)]
    scores = [share[v] + sum(share[u] for u in G.adj[v]) for v in range(G.n)]
    return CentralityResult.build("sv-g1", G.labels, scores)


def sv_g2(G: Graph, k: Sequence[int]) -> CentralityResult:
    _check_thresholds(G, k)
    scores = []
    for v in range(G.n):
        own = min(1.0, k[v] / (1 + G.in_degree(v)))
        spill = 0.0
        for u in G.adj[v]:
            du = G.in_degree(u)
            spill += max(0.0, (du - k[u] + 1) / (du * (1 + du)))
        scores.append(own + spill)
    return CentralityResult.build("sv-g2", G.labels, scores, {"k": list(k)})


def sv_g3(G: Graph, cutoff: Sequence[float]) -> CentralityResult:
    """Every node u splits one unit evenly over itself and the nodes within
    ``cutoff[u]`` of it."""
    if len(cutoff) != G.n or any(not c > 0 for c in cutoff):
        raise ValueError("g3 needs one positive cutoff per node")
    scores = [0.0] * G.n
    for u in range(G.n):
        to_u, _ = path_lengths(G, u, "weighted", reverse=True)
        near = [w for w in range(G.n) if w != u and _within(to_u[w], cutoff[u])]
        share = 1.0 / (1 + len(near))
        scores[u] += share
        for w in near:
            scores[w] += share
    return CentralityResult.build("sv-g3", G.labels, scores, {"cutoff": list(cutoff)})


def sv_g4(G: Graph, f: Callable[[float], float]) -> CentralityResult:
    """Backward sweep over each target's distance-sorted sources.

    For a target v with other nodes sorted by distance to v, the node at
    1-based position i earns ``f(D_i)/(1+i) - sum_{j>i} f(D_j)/(j(j+1))``;
    equal distances share one value, and v keeps ``f(0)`` minus the full sum.
    """
    f = _safe_f(f)
    scores = [0.0] * G.n
    for v in range(G.n):
        to_v, _ = path_lengths(G, v, "weighted", reverse=True)
        others = sorted((to_v[w], w) for w in range(G.n) if w != v)
        tail = 0.0
        prev_d = None
        prev_sv = 0.0
        for index in range(len(others), 0, -1):
            d, w = others[index - 1]
            fd = f(d)
            if prev_d is not None and same_length(d, prev_d):
                current = prev_sv
            else:
                current = fd / (1 + index) - tail
            scores[w] += current
            tail += fd / (index * (1 + index))
            prev_d, prev_sv = d, current
        scores[v] += f(0.0) - tail
    return CentralityResult.build("sv-g4", G.labels, scores)


_STD = NormalDist()


def _normal_below(x: float, mu: float, sd: float) -> float:
    """Pr{N(mu, sd^2) < x}, degrading to an indicator when sd is 0."""
    if sd <= 0:
        return 1.0 if mu < x else 0.0
    return _STD.cdf((x - mu) / sd)


def _sample_sum_moments(weights: Sequence[float], m: int) -> tuple[float, float]:
    """Mean and s.d. of the sum of a uniform m-subset (without replacement)."""
    N = len(weights)
    if N == 0 or m == 0:
        return 0.0, 0.0
    total = sum(weights)
    mean = total / N
    var = max(0.0, sum(w * w for w in weights) / N - mean * mean)
    if N == 1:
        return total * m, 0.0
    return m * mean, math.sqrt(m * var * (N - m) / (N - 1))


def _subset_sums(weights: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Sum and size of every subset of ``weights`` (2^N entries each)."""
    sums = np.zeros(1)
    sizes = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
        sizes = np.concatenate([sizes, sizes + 1])
    return sums, sizes


class _WindowProbability:
    """Pr{lo <= X_m < hi} for X_m a uniform m-subset sum of fixed weights."""

    def __init__(self, weights: Sequence[float], exact: bool):
        self.weights = list(weights)
        self.exact = exact
        if exact:
            self.sums, self.sizes = _subset_sums(self.weights)
            self.counts = [math.comb(len(self.weights), m) for m in range(len(self.weights) + 1)]

    def __call__(self, m: int, lo: float, hi: float) -> float:
        if self.exact:
            hit = (self.sizes == m) & (self.sums < hi)
            if lo > -math.inf:
                hit &= self.sums >= lo
            return float(np.count_nonzero(hit)) / self.counts[m]
        mu, sd = _sample_sum_moments(self.weights, m)
        below_hi = _normal_below(hi, mu, sd)
        below_lo = _normal_below(lo, mu, sd) if lo > -math.inf else 0.0
        return max(0.0, below_hi - below_lo)


def sv_g5_approx(G: Graph, w_cutoff: Sequence[float], exact_degree_limit: int = 20) -> CentralityResult:
    """Shapley value of the weighted-threshold game g5.

    For nodes whose relevant weight lists have at most ``exact_degree_limit``
    entries the subset-sum probabilities are enumerated exactly; longer lists
    use a normal approximation of the sum of an m-subset drawn without
    replacement. With ``exact_degree_limit=0`` every term is approximated.
    """
    if len(w_cutoff) != G.n or any(not w > 0 for w in w_cutoff):
        raise ValueError("g5 needs one positive threshold per node")
    n = G.n
    incoming = [[G.weight(w, u) for w in G.radj[u]] for u in range(n)]

    def window(weights: Sequence[float]) -> _WindowProbability:
        return _WindowProbability(weights, exact=len(weights) <= exact_degree_limit)

    scores = [0.0] * n
    for v in range(n):
        deg = len(incoming[v])
        pr = window(incoming[v])
        scores[v] += sum(pr(m, -math.inf, w_cutoff[v]) for m in range(deg + 1)) / (1 + deg)
    for u in range(n):
        deg = len(G.radj[u])
        for pos, v in enumerate(G.radj[u]):
            others = incoming[u][:pos] + incoming[u][pos + 1:]
            lam = incoming[u][pos]
            pr = window(others)
            total = 0.0
            for m in range(deg):
                z = pr(m, w_cutoff[u] - lam, w_cutoff[u])
                total += z * (deg - m) / (deg * (deg + 1))
            scores[v] += total
    params = {"w_cutoff": list(w_cutoff), "exact_degree_limit": exact_degree_limit}
    return CentralityResult.build("sv-g5", G.labels, scores, params)


def sv_degree_game(G: Graph, spec: DegreeGameSpec) -> CentralityResult:
    """Dispatch to the closed-form solver for ``spec.game``."""
    spec.validate(G)
    if spec.game == "g1":
        return sv_g1(G)
    if spec.game == "g2":
        return sv_g2(G, spec.k)
    if spec.game == "g3":
        return sv_g3(G, spec.cutoff)
    if spec.game == "g4":
        return sv_g4(G, spec.f)
    return sv_g5_approx(G, spec.w_cutoff)
