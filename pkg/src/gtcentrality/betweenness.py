"""Parameterised betweenness accumulation and its game-theoretic instances.

Every solver here is one Brandes-style sweep per source. A pair weighting
``(f, g)`` says how much a shortest s-t path through v is worth as a function
of its size (``f``) and how much v earns just for being reached from s (``g``).
In unweighted graphs the size is the node-count distance; in weighted graphs
it is the number of nodes on the particular shortest path, tracked with path
count polynomials.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .games import CoalitionGame, check_distribution
from .graph import INF, Graph, classic_centrality, group_centrality, sssp
from .result import CentralityResult

Weighting = Callable[[int], float]


@dataclass(frozen=True)
class SizeDistribution:
    """Probability that a random coalition has size k, for k = 1..n.

    ``pd[k-1]`` holds the mass of size k. A Semivalue whose weight table
    ``beta`` is indexed by the number of *other* players is the same table:
    ``pd[k-1] == beta[k-1]``.
    """

    pd: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "pd", check_distribution(self.pd, len(self.pd), "size distribution"))

    @property
    def n(self) -> int:
        return len(self.pd)

    @classmethod
    def uniform(cls, n: int) -> SizeDistribution:
        return cls(tuple([1.0 / n] * n))

    @classmethod
    def point(cls, n: int, k: int) -> SizeDistribution:
        if not 1 <= k <= n:
            raise ValueError("size out of range")
        return cls(tuple(1.0 if i == k - 1 else 0.0 for i in range(n)))


def _table(fn: Weighting, n: int) -> np.ndarray:
    """``fn`` sampled at 0..n+1 (index 0 is never used)."""
    out = np.zeros(n + 2)
    for i in range(1, n + 2):
        out[i] = fn(i)
    return out


def _pbc_shard(G: Graph, F: np.ndarray, Gt: np.ndarray, sources: Sequence[int]) -> list[float]:
    c = [0.0] * G.n
    g_scale = 1.0 if G.directed else 2.0
    for s in sources:
        r = sssp(G, s, "unweighted")
        dist, sigma = r.dist, r.sigma
        delta = [0.0] * G.n
        for w in reversed(r.order):
            coeff = (F[dist[w]] + delta[w]) / sigma[w]
            for v in r.preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                c[w] += delta[w] + g_scale * Gt[dist[w]]
                if G.directed:
                    # s is an endpoint of the ordered pair (s, w) as well.
                    c[s] += Gt[dist[w]]
    return c


def _run_sharded(worker, G: Graph, F, Gt, threads: int) -> list[float]:
    sources = list(range(G.n))
    if threads <= 1 or G.n < 2 * threads:
        return worker(G, F, Gt, sources)
    shards = [sources[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(worker, [G] * threads, [F] * threads, [Gt] * threads, shards))
    return [sum(col) for col in zip(*parts)]


def pbc(G: Graph, f: Weighting, g: Weighting, measure: str = "pbc", threads: int = 1,
        params: dict | None = None) -> CentralityResult:
    """For each v: sum over sources s of the f-weighted dependency of s on v
    plus ``g(d(s, v))``. Distances count nodes; unweighted graphs only.

    Undirected totals count every unordered pair once.
    """
    F, Gt = _table(f, G.n), _table(g, G.n)
    c = _run_sharded(_pbc_shard, G, F, Gt, threads)
    if not G.directed:
        c = [x / 2 for x in c]
    return CentralityResult.build(measure, G.labels, c, params)


def _svb_f(d: int) -> float:
    return 1.0 / d


def _svb_g(d: int) -> float:
    return (2.0 - d) / (2.0 * d)


def svb(G: Graph, threads: int = 1) -> CentralityResult:
    """Shapley value of the group-betweenness game on an unweighted graph."""
    return pbc(G, _svb_f, _svb_g, "svb", threads)


def size_weightings(n: int, k: int) -> tuple[list[float], list[float]]:
    """Tables over distance d = 0..n+1 of the coalition-size-k weighting.

    ``f_k(d) = C(n-d, k-1) / C(n-1, k-1)`` is the chance that a random
    (k-1)-set of the other players avoids the d-1 other nodes of a path, built
    as a running product; ``g_k = f_k + (k-n)/(n-1)``.
    """
    f = [0.0] * (n + 2)
    for d in range(1, n + 2):
        ratio = 1.0
        for t in range(k - 1):
            ratio *= max(0, n - d - t) / (n - 1 - t)
            if ratio == 0.0:
                break
        f[d] = ratio
    shift = (k - n) / (n - 1)
    g = [x + shift for x in f]
    g[0] = 0.0
    return f, g


def _combined_weighting(n: int, pd: SizeDistribution) -> tuple[np.ndarray, np.ndarray]:
    F = np.zeros(n + 2)
    Gt = np.zeros(n + 2)
    for k in range(1, n + 1):
        mass = pd.pd[k - 1]
        if mass:
            f, g = size_weightings(n, k)
            F += mass * np.asarray(f)
            Gt += mass * np.asarray(g)
    F[0] = Gt[0] = 0.0
    return F, Gt


def _check_pd(G: Graph, pd: SizeDistribution) -> None:
    if pd.n != G.n:
        raise ValueError(f"size distribution covers {pd.n} sizes, graph has {G.n} nodes")


def semivalue_betweenness(G: Graph, pd: SizeDistribution, method: str = "combined",
                          threads: int = 1) -> CentralityResult:
    """Semivalue of the group-betweenness game for coalition-size law ``pd``.

    The per-size accumulations are linear in the weighting, so ``combined``
    mixes all sizes into one weighting and sweeps once; ``per_size`` sweeps
    once for every size with positive mass and sums the results.
    """
    _check_pd(G, pd)
    n = G.n
    params = {"pd": list(pd.pd)}
    if n < 2:
        return CentralityResult.build("semivalue-b", G.labels, [0.0] * n, params)
    if method == "combined":
        F, Gt = _combined_weighting(n, pd)
        c = _run_sharded(_pbc_shard, G, F, Gt, threads)
    elif method == "per_size":
        c = [0.0] * n
        for k in range(1, n + 1):
            mass = pd.pd[k - 1]
            if mass:
                f, g = size_weightings(n, k)
                part = _run_sharded(_pbc_shard, G, np.asarray(f), np.asarray(g), threads)
                c = [a + mass * b for a, b in zip(c, part)]
    else:
        raise ValueError(f"unknown method {method!r}")
    if not G.directed:
        c = [x / 2 for x in c]
    return CentralityResult.build("semivalue-b", G.labels, c, params)


def _path_size_polynomials(G: Graph, r) -> list[np.ndarray]:
    """``T[v][i]``: number of shortest s-v paths with exactly i nodes."""
    n = G.n
    T = [None] * n
    for v in r.order:
        poly = np.zeros(n + 2)
        if v == r.source:
            poly[1] = 1.0
        else:
            for p in r.preds[v]:
                poly[1:] += T[p][:-1]
        T[v] = poly
    return T


def _wpbc_shard(G: Graph, F: np.ndarray, Gt: np.ndarray, sources: Sequence[int]) -> list[float]:
    n = G.n
    c = [0.0] * n
    g_scale = 1.0 if G.directed else 2.0
    F_next = F[1:]
    for s in sources:
        r = sssp(G, s, "weighted")
        T = _path_size_polynomials(G, r)
        # Y[v][i]: worth, per s-v prefix of i nodes, of all continuations of
        # that prefix to later targets, each already divided by its sigma_st.
        Y = {}
        for w in reversed(r.order):
            yw = Y.pop(w, None)
            if yw is None:
                yw = np.zeros(n + 2)
            if w != s:
                end_term = float(T[w] @ Gt) / r.sigma[w]
                c[w] += float(T[w] @ yw) + g_scale * end_term
                if G.directed:
                    c[s] += end_term
            step = F_next / r.sigma[w] + yw[1:]
            for v in r.preds[w]:
                yv = Y.get(v)
                if yv is None:
                    yv = np.zeros(n + 2)
                    Y[v] = yv
                yv[:-1] += step
    return c


def wpbc(G: Graph, f: Weighting, g: Weighting, measure: str = "wpbc", threads: int = 1,
         params: dict | None = None) -> CentralityResult:
    """Weighted-graph counterpart of :func:`pbc` where ``f`` and ``g`` take the
    number of nodes on each individual shortest path."""
    F, Gt = _table(f, G.n), _table(g, G.n)
    c = _run_sharded(_wpbc_shard, G, F, Gt, threads)
    if not G.directed:
        c = [x / 2 for x in c]
    return CentralityResult.build(measure, G.labels, c, params)


def wsvb(G: Graph, threads: int = 1) -> CentralityResult:
    """Shapley value of the group-betweenness game on a weighted graph."""
    return wpbc(G, _svb_f, _svb_g, "wsvb", threads)


def wsb(G: Graph, pd: SizeDistribution, method: str = "combined", threads: int = 1) -> CentralityResult:
    """Semivalue of the weighted group-betweenness game (see
    :func:`semivalue_betweenness` for ``method``)."""
    _check_pd(G, pd)
    n = G.n
    params = {"pd": list(pd.pd)}
    if n < 2:
        return CentralityResult.build("wsb", G.labels, [0.0] * n, params)
    if method == "combined":
        F, Gt = _combined_weighting(n, pd)
        c = _run_sharded(_wpbc_shard, G, F, Gt, threads)
    elif method == "per_size":
        c = [0.0] * n
        for k in range(1, n + 1):
            mass = pd.pd[k - 1]
            if mass:
                f, g = size_weightings(n, k)
                part = _run_sharded(_wpbc_shard, G, np.asarray(f), np.asarray(g), threads)
                c = [a + mass * b for a, b in zip(c, part)]
    else:
        raise ValueError(f"unknown method {method!r}")
    if not G.directed:
        c = [x / 2 for x in c]
    return CentralityResult.build("wsb", G.labels, c, params)


def distance_scaled_betweenness(G: Graph) -> CentralityResult:
    return pbc(G, _svb_f, lambda d: 0.0, "distance-scaled-betweenness")


def harmonic_reach(G: Graph) -> CentralityResult:
    """Sum over other nodes s of ``1/d(s, v)`` with node-count distances."""
    scores = []
    for v in range(G.n):
        r = sssp(G, v, "unweighted", reverse=True)
        scores.append(sum(1.0 / d for u, d in enumerate(r.dist) if u != v and d != INF))
    return CentralityResult.build("harmonic-reach", G.labels, scores)


def normalized_svb(G: Graph, scores: CentralityResult | None = None) -> CentralityResult:
    """Map Shapley betweenness into [0, 1] via ``phi/(2 max c_b) + 1/2``."""
    scores = scores or svb(G)
    top = max(classic_centrality(G, "betweenness").scores, default=0.0)
    if top == 0:
        return CentralityResult.build("svb-normalized", G.labels, [0.5] * G.n)
    return CentralityResult.build("svb-normalized", G.labels, [x / (2 * top) + 0.5 for x in scores.scores])


def group_betweenness_game(G: Graph) -> CoalitionGame:
    """The coalitional game whose Shapley and Semivalues these solvers compute."""
    def value(mask: int) -> float:
        members = [v for v in range(G.n) if mask >> v & 1]
        return group_centrality(G, "betweenness", members)

    return CoalitionGame(G.n, value, G.labels)
