"""Exhaustive reference solvers and Monte Carlo permutation sampling.

The exact solvers evaluate each solution concept straight from its defining
sum over coalitions (or ordered coalitions), so they are exponential and
guarded by a player limit. They are the ground truth every fast algorithm in
this package is tested against.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Callable, Sequence

from .degree import DegreeGameSpec, _safe_f, _within, distance_matrix
from .games import (
    CoalitionGame,
    OrderedGame,
    check_distribution,
    check_limit,
    shapley_beta,
    shapley_size_weights,
)
from .graph import INF, CommunityStructure, Graph

SUBSET_LIMIT = 12
ORDERED_LIMIT = 8


def _coalition_value(game: CoalitionGame) -> Callable[[int], float]:
    # Tabulate small games once; larger ones are evaluated lazily.
    if game.n <= 16:
        table = game.table()
        return table.__getitem__
    return game.value


def shapley_value(game: CoalitionGame, limit: int = SUBSET_LIMIT) -> list[float]:
    """Sum over coalitions S not containing i of ``|S|!(n-|S|-1)!/n! * MC``."""
    return semivalue(game, shapley_beta(game.n) if game.n else (), limit)


def semivalue(game: CoalitionGame, beta: Sequence[float], limit: int = SUBSET_LIMIT) -> list[float]:
    """Semivalue with size distribution ``beta``; a coalition of size k gets
    ``beta[k] / C(n-1, k)``."""
    n = game.n
    check_limit(n, limit, "semivalue oracle")
    if n == 0:
        return []
    beta = check_distribution(beta, n)
    if beta == shapley_beta(n):
        per_size = shapley_size_weights(n)
    else:
        per_size = [beta[k] / math.comb(n - 1, k) for k in range(n)]
    v = _coalition_value(game)
    phi = [0.0] * n
    full = (1 << n) - 1
    for i in range(n):
        bit = 1 << i
        rest = full ^ bit
        total = 0.0
        sub = rest
        while True:
            total += per_size[sub.bit_count()] * (v(sub | bit) - v(sub))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        phi[i] = total
    return phi


def permutation_shapley(game: CoalitionGame, limit: int = 8) -> list[float]:
    """Average marginal contribution over every ordering of the players."""
    n = game.n
    check_limit(n, limit, "permutation oracle")
    phi = [0.0] * n
    count = 0
    for order in itertools.permutations(range(n)):
        mask = 0
        before = 0.0
        for i in order:
            mask |= 1 << i
            after = game.value(mask)
            phi[i] += after - before
            before = after
        count += 1
    return [x / count for x in phi]


def _uniform(size: int) -> tuple[float, ...]:
    return tuple([1.0 / size] * size)


def coalitional_semivalue(
    game: CoalitionGame,
    CS: CommunityStructure,
    beta: Sequence[float],
    alphas: Sequence[Sequence[float]],
    limit: int = SUBSET_LIMIT,
) -> list[float]:
    """Two-level Semivalue for a game with a community structure.

    Player i in community j averages ``MC(Q_R + C, i)`` over sets R of other
    communities (weight ``beta[|R|]/C(m-1,|R|)``) and sets C of i's
    community-mates (weight ``alpha_j[|C|]/C(|C_j|-1,|C|)``), where ``Q_R`` is
    the union of the communities in R.
    """
    n = game.n
    check_limit(n, limit, "coalitional semivalue oracle")
    if len(CS.assignment) != n:
        raise ValueError("community structure does not cover the players")
    m = CS.m
    beta = check_distribution(beta, m, "beta")
    if len(alphas) != m:
        raise ValueError("need one alpha table per community")
    alphas = [check_distribution(a, len(CS.members[j]), f"alpha[{j}]") for j, a in enumerate(alphas)]
    v = _coalition_value(game)
    community_mask = [sum(1 << u for u in group) for group in CS.members]
    beta_w = [beta[r] / math.comb(m - 1, r) for r in range(m)]
    phi = [0.0] * n
    for i in range(n):
        j = CS.assignment[i]
        size_j = len(CS.members[j])
        alpha_w = [alphas[j][c] / math.comb(size_j - 1, c) for c in range(size_j)]
        others = [community_mask[t] for t in range(m) if t != j]
        mates = community_mask[j] & ~(1 << i)
        bit = 1 << i
        total = 0.0
        for r_bits in range(1 << len(others)):
            outer = 0
            for t, mask in enumerate(others):
                if r_bits >> t & 1:
                    outer |= mask
            wr = beta_w[r_bits.bit_count()]
            sub = mates
            inner = 0.0
            while True:
                base = outer | sub
                inner += alpha_w[sub.bit_count()] * (v(base | bit) - v(base))
                if sub == 0:
                    break
                sub = (sub - 1) & mates
            total += wr * inner
        phi[i] = total
    return phi


def owen_value(game: CoalitionGame, CS: CommunityStructure, limit: int = SUBSET_LIMIT) -> list[float]:
    return coalitional_semivalue(
        game, CS, _uniform(CS.m), [_uniform(len(group)) for group in CS.members], limit
    )


def quotient_game(game: CoalitionGame, CS: CommunityStructure) -> CoalitionGame:
    """The game played by whole communities: coalition R is worth the union."""
    community_mask = [sum(1 << u for u in group) for group in CS.members]

    def value(mask: int) -> float:
        union = 0
        for t in range(CS.m):
            if mask >> t & 1:
                union |= community_mask[t]
        return game.value(union)

    return CoalitionGame(CS.m, value)


def _ordered_marginals(game: OrderedGame, limit: int, insert_everywhere: bool) -> list[float]:
    n = game.n
    check_limit(n, limit, "ordered oracle")
    phi = [0.0] * n
    for i in range(n):
        rest = [p for p in range(n) if p != i]
        total = 0.0
        for size in range(n):
            # Probability that a uniform ordering of all players starts with a
            # given ordered coalition of this size followed by i.
            weight = math.factorial(n - size - 1) / math.factorial(n)
            for T in itertools.permutations(rest, size):
                base = game(T)
                if insert_everywhere:
                    gain = sum(game(T[:pos] + (i,) + T[pos:]) for pos in range(size + 1)) / (size + 1)
                else:
                    gain = game(T + (i,))
                total += weight * (gain - base)
        phi[i] = total
    return phi


def nowak_radzik(game: OrderedGame, limit: int = ORDERED_LIMIT) -> list[float]:
    """Expected gain of each player when it joins a random ordered coalition last."""
    return _ordered_marginals(game, limit, insert_everywhere=False)


def sanchez_bergantinos(game: OrderedGame, limit: int = ORDERED_LIMIT) -> list[float]:
    """Like :func:`nowak_radzik` but averaging over every insertion position."""
    return _ordered_marginals(game, limit, insert_everywhere=True)


def ordered_grand_average(game: OrderedGame, limit: int = ORDERED_LIMIT) -> float:
    """Mean worth of the full orderings; both ordered values distribute this."""
    check_limit(game.n, limit, "ordered oracle")
    total = 0.0
    count = 0
    for order in itertools.permutations(range(game.n)):
        total += game(order)
        count += 1
    return total / count


CONCEPTS = ("sv", "semivalue", "owen", "csemi", "nr", "sb")


def exact_solution(concept: str, game, *, beta=None, CS=None, alphas=None, limit: int | None = None) -> list[float]:
    """Dispatch to the exhaustive solver for ``concept``."""
    if concept == "sv":
        return shapley_value(game, limit or SUBSET_LIMIT)
    if concept == "semivalue":
        if beta is None:
            raise ValueError("semivalue needs beta")
        return semivalue(game, beta, limit or SUBSET_LIMIT)
    if concept == "owen":
        if CS is None:
            raise ValueError("owen needs a community structure")
        return owen_value(game, CS, limit or SUBSET_LIMIT)
    if concept == "csemi":
        if CS is None or beta is None or alphas is None:
            raise ValueError("coalitional semivalue needs CS, beta and alphas")
        return coalitional_semivalue(game, CS, beta, alphas, limit or SUBSET_LIMIT)
    if concept == "nr":
        return nowak_radzik(game, limit or ORDERED_LIMIT)
    if concept == "sb":
        return sanchez_bergantinos(game, limit or ORDERED_LIMIT)
    raise ValueError(f"unknown solution concept {concept!r}")


def monte_carlo(n: int, block: Callable[[list[int]], Sequence[float]], max_iter: int, seed: int) -> list[float]:
    """Average ``block(permutation)`` over ``max_iter`` seeded random orderings."""
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    rng = random.Random(seed)
    order = list(range(n))
    acc = [0.0] * n
    for _ in range(max_iter):
        rng.shuffle(order)
        for i, x in enumerate(block(order)):
            acc[i] += x
    return [x / max_iter for x in acc]


def prefix_marginals(game: CoalitionGame, order: Sequence[int]) -> list[float]:
    """Each player's gain when added to the players before it in ``order``."""
    out = [0.0] * game.n
    mask = 0
    before = 0.0
    for i in order:
        mask |= 1 << i
        after = game.value(mask)
        out[i] = after - before
        before = after
    return out


def monte_carlo_shapley(game: CoalitionGame, max_iter: int, seed: int) -> list[float]:
    return monte_carlo(game.n, lambda order: prefix_marginals(game, order), max_iter, seed)


class DegreeBlock:
    """One-pass marginal contributions of a permutation for games g1..g5.

    Keeps the coverage state (``counted``), per-node counts of covering
    neighbours (``edges``), accumulated covering weight (``weights``) and the
    current distance to the coalition (``dist``) so each player's gain is
    computed from its own neighbourhood instead of two full evaluations.
    """

    def __init__(self, G: Graph, spec: DegreeGameSpec):
        spec.validate(G)
        self.G = G
        self.spec = spec
        if spec.game == "g3":
            D = distance_matrix(G)
            self.reach = [
                [u for u in range(G.n) if u != v and _within(D[v][u], spec.cutoff[u])]
                for v in range(G.n)
            ]
        elif spec.game == "g4":
            self.D = distance_matrix(G)
            self.f = _safe_f(spec.f)

    def __call__(self, order: Sequence[int]) -> list[float]:
        G, spec = self.G, self.spec
        n = G.n
        out = [0.0] * n
        counted = [False] * n
        if spec.game == "g1":
            for v in order:
                gain = 0
                for u in (v, *G.adj[v]):
                    if not counted[u]:
                        counted[u] = True
                        gain += 1
                out[v] = gain
        elif spec.game == "g2":
            edges = [0] * n
            for v in order:
                gain = 0
                if not counted[v]:
                    counted[v] = True
                    gain += 1
                for u in G.adj[v]:
                    edges[u] += 1
                    if not counted[u] and edges[u] >= spec.k[u]:
                        counted[u] = True
                        gain += 1
                out[v] = gain
        elif spec.game == "g3":
            for v in order:
                gain = 0
                for u in (v, *self.reach[v]):
                    if not counted[u]:
                        counted[u] = True
                        gain += 1
                out[v] = gain
        elif spec.game == "g4":
            dist = [INF] * n
            f, D = self.f, self.D
            for v in order:
                gain = 0.0
                for u in range(n):
                    d = 0.0 if u == v else D[v][u]
                    if d < dist[u]:
                        gain += f(d) - f(dist[u])
                        dist[u] = d
                out[v] = gain
        else:
            weights = [0.0] * n
            for v in order:
                gain = 0
                if not counted[v]:
                    counted[v] = True
                    gain += 1
                for u, lam in zip(G.adj[v], G.wadj[v]):
                    weights[u] += lam
                    if not counted[u] and weights[u] >= spec.w_cutoff[u]:
                        counted[u] = True
                        gain += 1
                out[v] = gain
        return out


def monte_carlo_degree_block(G: Graph, spec: DegreeGameSpec, permutation: Sequence[int]) -> list[float]:
    return DegreeBlock(G, spec)(permutation)


def monte_carlo_degree_game(G: Graph, spec: DegreeGameSpec, max_iter: int, seed: int) -> list[float]:
    return monte_carlo(G.n, DegreeBlock(G, spec), max_iter, seed)
