"""Shapley value of connectivity games.

A coalition is worth ``f(C)`` when it induces a connected subgraph and 0
otherwise. Only connected coalitions carry worth, so the exact solver walks
the connected induced subgraphs instead of all 2^n coalitions: for each
connected C, members whose removal disconnects C (pivotal members) gain all of
``f(C)``, other members gain ``f(C) - f(C - i)``, and outsiders not adjacent to
C lose ``f(C)`` because joining would disconnect it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .games import CoalitionGame, ExactSum, check_limit, shapley_size_weights
from .graph import Graph, articulation_points_mask, is_connected_mask, nodes_of
from .result import CentralityResult

GENERAL_LIMIT = 22
PRESETS = ("unit", "edges_over_weight", "custom")


@dataclass(frozen=True)
class ConnectivityGame:
    """Graph plus the worth ``f`` of a connected coalition (given as a bitmask).

    ``custom`` presets take ``f(G, frozenset_of_nodes)`` and may use node
    weights; the built-in presets ignore them.
    """

    G: Graph
    preset: str = "unit"
    custom: Callable[[Graph, frozenset[int]], float] | None = None

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ValueError(f"unknown connectivity preset {self.preset!r}")
        if self.preset == "custom" and self.custom is None:
            raise ValueError("custom preset needs a callback")
        object.__setattr__(self, "_nbr", self.G.neighbor_masks())

    @property
    def n(self) -> int:
        return self.G.n

    @property
    def neighbor_masks(self) -> list[int]:
        return self._nbr

    def worth(self, mask: int) -> float:
        """f of a coalition already known to be connected."""
        if self.preset == "unit":
            return 1.0
        if self.preset == "edges_over_weight":
            edges = 0
            weight = 0.0
            for u in nodes_of(mask):
                for v, w in zip(self.G.adj[u], self.G.wadj[u]):
                    if v > u and mask >> v & 1:
                        edges += 1
                        weight += w
            return edges / weight if edges else 0.0
        return float(self.custom(self.G, frozenset(nodes_of(mask))))

    def value(self, mask: int) -> float:
        if not is_connected_mask(mask, self._nbr):
            return 0.0
        return self.worth(mask)

    def as_coalition_game(self) -> CoalitionGame:
        return CoalitionGame(self.n, self.value, self.G.labels)


def nu_connectivity(game: ConnectivityGame, C) -> float:
    mask = 0
    for v in C:
        mask |= 1 << v
    return game.value(mask)


def _result(game: ConnectivityGame, scores, measure: str, params=None, seed=None) -> CentralityResult:
    params = {"f": game.preset, **(params or {})}
    return CentralityResult.build(measure, game.G.labels, scores, params, seed)


def general_sv_connectivity(game: ConnectivityGame, limit: int = GENERAL_LIMIT) -> CentralityResult:
    """Scan every coalition C and every member i, adding the weighted gain
    ``nu(C) - nu(C - i)``; only three connectivity patterns give a non-zero
    gain (both connected, only C connected, only C - i connected)."""
    n = game.n
    check_limit(n, limit, "coalition scan")
    w = shapley_size_weights(n)
    nbr = game.neighbor_masks
    worth = [0.0] * (1 << n)
    connected = [False] * (1 << n)
    for mask in range(1, 1 << n):
        if is_connected_mask(mask, nbr):
            connected[mask] = True
            worth[mask] = game.worth(mask)
    phi = [ExactSum() for _ in range(n)]
    for mask in range(1, 1 << n):
        size_before = mask.bit_count() - 1
        weight = w[size_before]
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            without = mask ^ low
            if connected[mask]:
                gain = worth[mask] - worth[without] if connected[without] else worth[mask]
            elif connected[without]:
                gain = -worth[without]
            else:
                continue
            phi[low.bit_length() - 1].add(weight * gain)
    return _result(game, [acc.value() for acc in phi], "connectivity-sv", {"mode": "exact"})


def faster_svcg(game: ConnectivityGame, incremental: bool = True,
                visitor: Callable[[frozenset[int]], None] | None = None) -> CentralityResult:
    """Exact Shapley value touching only connected coalitions.

    Coalitions are grown from their smallest-index node by adding subsets of
    the current frontier. When every added node hangs off exactly one
    existing member and touches no other added node, no cycle appears, and the
    pivotal set is the old one plus those attachment points (none while the
    coalition has at most two nodes); otherwise it is recomputed.
    """
    n = game.n
    nbr = game.neighbor_masks
    w = shapley_size_weights(n)
    # Exact accumulation makes the result independent of visiting order, so it
    # matches the coalition scan bit for bit.
    phi = [ExactSum() for _ in range(n)]
    full = (1 << n) - 1

    def account(mask: int, pivots: int) -> None:
        if visitor is not None:
            visitor(frozenset(nodes_of(mask)))
        size = mask.bit_count()
        value = game.worth(mask)
        inside = w[size - 1]
        for i in nodes_of(mask):
            if pivots >> i & 1:
                phi[i].add(inside * value)
            else:
                without = mask ^ (1 << i)
                phi[i].add(inside * (value - (game.worth(without) if without else 0.0)))
        if size < n:
            around = 0
            for i in nodes_of(mask):
                around |= nbr[i]
            far = full & ~mask & ~around
            if far:
                loss = w[size] * value
                for i in nodes_of(far):
                    phi[i].add(-loss)

    def pivots_after(S: int, sub: int, pivots: int) -> int:
        grown = S | sub
        if grown.bit_count() <= 2:
            return 0
        if incremental:
            attach = 0
            for x in nodes_of(sub):
                touch = nbr[x] & grown
                if touch.bit_count() != 1 or not touch & S:
                    break
                attach |= touch
            else:
                return pivots | attach
        return articulation_points_mask(grown, nbr)

    def grow(S: int, around: int, forbidden: int, pivots: int) -> None:
        frontier = around & ~forbidden
        if not frontier:
            return
        deeper = forbidden | frontier
        sub = frontier
        while sub:
            extra = 0
            for x in nodes_of(sub):
                extra |= nbr[x]
            grown = S | sub
            new_pivots = pivots_after(S, sub, pivots)
            account(grown, new_pivots)
            grow(grown, (around | extra) & ~grown, deeper, new_pivots)
            sub = (sub - 1) & frontier

    for i in range(n - 1, -1, -1):
        start = 1 << i
        account(start, 0)
        grow(start, nbr[i], (start << 1) - 1, 0)
    return _result(game, [acc.value() for acc in phi], "connectivity-sv", {"mode": "faster"})


def approximate_svcg(game: ConnectivityGame, max_iter: int, seed: int) -> CentralityResult:
    """Unbiased estimate from uniformly sized random coalitions.

    Each draw picks a size k uniformly from 0..n and then a uniform k-subset,
    so C has probability ``1/((n+1) C(n,k))``; the ``(n+1)/|C|`` and
    ``(n+1)/(n-|C|)`` factors undo that bias.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    n = game.n
    nbr = game.neighbor_masks
    rng = random.Random(seed)
    full = (1 << n) - 1
    phi = [0.0] * n
    for _ in range(max_iter):
        k = rng.randint(0, n)
        if k == 0:
            continue
        members = rng.sample(range(n), k)
        mask = 0
        for v in members:
            mask |= 1 << v
        if not is_connected_mask(mask, nbr):
            continue
        value = game.worth(mask)
        pivots = articulation_points_mask(mask, nbr)
        scale_in = (n + 1) / k
        for i in members:
            if pivots >> i & 1:
                phi[i] += scale_in * value
            else:
                without = mask ^ (1 << i)
                phi[i] += scale_in * (value - (game.worth(without) if without else 0.0))
        if k < n:
            around = 0
            for i in members:
                around |= nbr[i]
            scale_out = (n + 1) / (n - k) * value
            for i in nodes_of(full & ~mask & ~around):
                phi[i] -= scale_out
    return _result(game, [x / max_iter for x in phi], "connectivity-sv",
                   {"mode": "approx", "iters": max_iter}, seed)
