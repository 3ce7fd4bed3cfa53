"""Graph representation and the shortest-path machinery shared by all solvers.

Nodes carry dense indices ``0..n-1`` assigned by first appearance, with the
original string labels kept alongside. Unweighted shortest-path distances
count *nodes* on the path (a node is at distance 1 from itself, neighbours at
distance 2); weighted distances are sums of edge weights with ``dist(s, s) = 0``.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .result import CentralityResult

INF = math.inf

# Two weighted path lengths closer than this (relative) are treated as equal.
LENGTH_RTOL = 1e-12


class GraphFormatError(ValueError):
    """Malformed graph, community, or weight input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def same_length(a: float, b: float) -> bool:
    if a == b:
        return True
    if a == INF or b == INF:
        return False
    return abs(a - b) <= LENGTH_RTOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph with optional edge and node weights.

    ``adj[v]`` lists out-neighbours and ``radj[v]`` in-neighbours; for
    undirected graphs both are the same tuple. ``wadj[v][i]`` is the weight of
    the edge ``(v, adj[v][i])`` (1.0 everywhere for unweighted graphs).
    """

    labels: tuple[str, ...]
    adj: tuple[tuple[int, ...], ...]
    radj: tuple[tuple[int, ...], ...]
    wadj: tuple[tuple[float, ...], ...]
    directed: bool = False
    weighted: bool = False
    node_weight: tuple[float, ...] | None = None
    _index: dict[str, int] = field(default_factory=dict, repr=False)
    _weights: dict[tuple[int, int], float] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        arcs = sum(len(a) for a in self.adj)
        return arcs if self.directed else arcs // 2

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown node {label!r}") from None

    def indices(self, labels: Iterable[str]) -> list[int]:
        return [self.index(x) for x in labels]

    def weight(self, u: int, v: int) -> float:
        return self._weights[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.radj[v])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Each edge once: ``u < v`` for undirected graphs."""
        for u, (nbrs, ws) in enumerate(zip(self.adj, self.wadj)):
            for v, w in zip(nbrs, ws):
                if self.directed or u < v:
                    yield u, v, w

    def undirected_neighbors(self, v: int) -> tuple[int, ...]:
        if not self.directed:
            return self.adj[v]
        return tuple(sorted(set(self.adj[v]) | set(self.radj[v])))

    def neighbor_masks(self) -> list[int]:
        """Bitmask of the (undirected) neighbourhood of every node."""
        masks = []
        for v in range(self.n):
            m = 0
            for u in self.undirected_neighbors(v):
                m |= 1 << u
            masks.append(m)
        return masks

    def node_weights_or(self, default: float = 1.0) -> list[float]:
        if self.node_weight is None:
            return [default] * self.n
        return list(self.node_weight)

    def without_nodes(self, removed: Iterable[int]) -> Graph:
        """Induced subgraph on the remaining nodes (labels and order preserved)."""
        gone = set(removed)
        keep = [v for v in range(self.n) if v not in gone]
        edges = [
            (self.labels[u], self.labels[v], w)
            for u, v, w in self.edges()
            if u not in gone and v not in gone
        ]
        weights = None
        if self.node_weight is not None:
            weights = {self.labels[v]: self.node_weight[v] for v in keep}
        return build_graph(
            edges if self.weighted else [e[:2] for e in edges],
            directed=self.directed,
            node_weights=weights,
            nodes=[self.labels[v] for v in keep],
        )


def build_graph(
    edge_list: Iterable[Sequence],
    directed: bool = False,
    node_weights: Mapping[str, float] | None = None,
    nodes: Iterable[str] = (),
    line_numbers: Sequence[int] | None = None,
) -> Graph:
    """Validate an edge list and assign dense indices by first appearance.

    Entries are ``(u, v)`` or ``(u, v, weight)``; a list must not mix both
    forms. ``nodes`` pre-registers labels (e.g. isolated nodes) before edges.
    """
    index: dict[str, int] = {}
    labels: list[str] = []

    def register(label) -> int:
        label = str(label)
        if not label:
            raise GraphFormatError("empty node label", current_line)
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    current_line: int | None = None
    for label in nodes:
        register(label)

    arcs: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    weighted: bool | None = None
    for pos, entry in enumerate(edge_list):
        current_line = line_numbers[pos] if line_numbers is not None else pos + 1
        if len(entry) not in (2, 3):
            raise GraphFormatError("expected 'u v' or 'u v weight'", current_line)
        has_weight = len(entry) == 3
        if weighted is None:
            weighted = has_weight
        elif weighted != has_weight:
            raise GraphFormatError("mixed weighted and unweighted edges", current_line)
        u, v = register(entry[0]), register(entry[1])
        w = 1.0
        if has_weight:
            try:
                w = float(entry[2])
            except (TypeError, ValueError):
                raise GraphFormatError(f"bad weight {entry[2]!r}", current_line) from None
            if not w > 0 or math.isinf(w):
                raise GraphFormatError(f"non-positive weight {entry[2]!r}", current_line)
        if u == v:
            raise GraphFormatError(f"self-loop on {labels[u]!r}", current_line)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {labels[u]!r}-{labels[v]!r}", current_line)
        seen.add(key)
        arcs.append((u, v, w))

    n = len(labels)
    out: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    inc: list[list[int]] = [[] for _ in range(n)]
    weights: dict[tuple[int, int], float] = {}
    for u, v, w in arcs:
        out[u].append((v, w))
        inc[v].append(u)
        weights[(u, v)] = w
        if not directed:
            out[v].append((u, w))
            inc[u].append(v)
            weights[(v, u)] = w
    adj = tuple(tuple(v for v, _ in row) for row in out)
    wadj = tuple(tuple(w for _, w in row) for row in out)
    radj = tuple(tuple(row) for row in inc) if directed else adj

    nw = None
    if node_weights is not None:
        unknown = set(map(str, node_weights)) - set(index)
        if unknown:
            raise GraphFormatError(f"node weights for unknown nodes {sorted(unknown)}")
        nw = tuple(float(node_weights.get(label, 0.0)) for label in labels)

    return Graph(
        labels=tuple(labels),
        adj=adj,
        radj=radj,
        wadj=wadj,
        directed=directed,
        weighted=bool(weighted),
        node_weight=nw,
        _index=index,
        _weights=weights,
    )


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def parse_edge_list(text: str, directed: bool = False,
                    node_weights: Mapping[str, float] | None = None) -> Graph:
    """Parse ``u v`` / ``u v w`` lines; ``#`` starts a comment."""
    entries, lines = [], []
    for lineno, parts in _content_lines(text):
        if len(parts) not in (2, 3):
            raise GraphFormatError("expected 'u v' or 'u v weight'", lineno)
        entries.append(tuple(parts))
        lines.append(lineno)
    return build_graph(entries, directed=directed, node_weights=node_weights, line_numbers=lines)


def parse_node_weights(text: str) -> dict[str, float]:
    """Parse ``node value`` lines."""
    weights: dict[str, float] = {}
    for lineno, parts in _content_lines(text):
        if len(parts) != 2:
            raise GraphFormatError("expected 'node value'", lineno)
        if parts[0] in weights:
            raise GraphFormatError(f"duplicate node {parts[0]!r}", lineno)
        try:
            weights[parts[0]] = float(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad value {parts[1]!r}", lineno) from None
    return weights


@dataclass(frozen=True)
class CommunityStructure:
    """A partition of the nodes; communities are numbered by first appearance."""

    assignment: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @classmethod
    def from_assignment(cls, assignment: Sequence[int]) -> CommunityStructure:
        ids: dict[int, int] = {}
        dense = []
        for c in assignment:
            dense.append(ids.setdefault(c, len(ids)))
        members: list[list[int]] = [[] for _ in ids]
        for v, c in enumerate(dense):
            members[c].append(v)
        return cls(tuple(dense), tuple(tuple(m) for m in members))

    @classmethod
    def from_groups(cls, n: int, groups: Iterable[Iterable[int]]) -> CommunityStructure:
        assignment = [-1] * n
        for j, group in enumerate(groups):
            for v in group:
                if not 0 <= v < n:
                    raise GraphFormatError(f"node index {v} out of range")
                if assignment[v] != -1:
                    raise GraphFormatError(f"node {v} assigned to two communities")
                assignment[v] = j
        missing = [v for v, c in enumerate(assignment) if c == -1]
        if missing:
            raise GraphFormatError(f"nodes without a community: {missing}")
        return cls.from_assignment(assignment)

    @classmethod
    def from_labels(cls, G: Graph, mapping: Mapping[str, str]) -> CommunityStructure:
        assignment: list[str | None] = [None] * G.n
        for label, community in mapping.items():
            assignment[G.index(label)] = community
        missing = [G.labels[v] for v, c in enumerate(assignment) if c is None]
        if missing:
            raise GraphFormatError(f"nodes without a community: {missing}")
        ids: dict[str, int] = {}
        return cls.from_assignment([ids.setdefault(c, len(ids)) for c in assignment])

    @property
    def m(self) -> int:
        return len(self.members)

    def community_of(self, v: int) -> int:
        return self.assignment[v]


def parse_communities(text: str, G: Graph) -> CommunityStructure:
    """Parse ``node community_id`` lines into a partition of ``G``'s nodes."""
    mapping: dict[str, str] = {}
    for lineno, parts in _content_lines(text):
        if len(parts) != 2:
            raise GraphFormatError("expected 'node community_id'", lineno)
        if parts[0] in mapping:
            raise GraphFormatError(f"node {parts[0]!r} assigned twice", lineno)
        if parts[0] not in G._index:
            raise GraphFormatError(f"unknown node {parts[0]!r}", lineno)
        mapping[parts[0]] = parts[1]
    return CommunityStructure.from_labels(G, mapping)


@dataclass
class SsspResult:
    source: int
    dist: list[float]
    sigma: list[int]
    preds: list[list[int]]
    order: list[int]


def _resolve_mode(G: Graph, mode: str | None) -> str:
    if mode is None or mode == "auto":
        return "weighted" if G.weighted else "unweighted"
    if mode not in ("weighted", "unweighted"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def sssp(G: Graph, s: int, mode: str | None = None, exclude: frozenset[int] | set[int] = frozenset(),
         reverse: bool = False) -> SsspResult:
    """Single-source shortest paths with path counts and predecessor lists.

    ``exclude`` hides nodes (the source must not be hidden); ``reverse``
    follows edges backwards on directed graphs.
    """
    mode = _resolve_mode(G, mode)
    n = G.n
    adj = G.radj if reverse else G.adj
    dist = [INF] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    sigma[s] = 1
    if mode == "unweighted":
        dist[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v] + 1
            for w in adj[v]:
                if w in exclude:
                    continue
                if dist[w] == INF:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        return SsspResult(s, dist, sigma, preds, order)

    wadj = G.wadj if not reverse else _reverse_weights(G)
    dist[s] = 0.0
    done = [False] * n
    heap = [(0.0, s)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        for w, lam in zip(adj[v], wadj[v]):
            if w in exclude or done[w]:
                continue
            alt = d + lam
            if same_length(alt, dist[w]):
                sigma[w] += sigma[v]
                preds[w].append(v)
            elif alt < dist[w]:
                dist[w] = alt
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (alt, w))
    return SsspResult(s, dist, sigma, preds, order)


def _reverse_weights(G: Graph) -> tuple[tuple[float, ...], ...]:
    if not G.directed:
        return G.wadj
    return tuple(tuple(G.weight(u, v) for u in G.radj[v]) for v in range(G.n))


def path_lengths(G: Graph, s: int, mode: str | None = None, exclude=frozenset(),
                 reverse: bool = False) -> tuple[list[float], list[int]]:
    """Edge-count (unweighted) or weight-sum distances from ``s`` plus path counts."""
    mode = _resolve_mode(G, mode)
    r = sssp(G, s, mode, exclude, reverse)
    if mode == "unweighted":
        return [d - 1 for d in r.dist], r.sigma
    return r.dist, r.sigma


class PathCountPolynomial:
    """Counts of shortest paths by number of nodes: ``coeffs[i]`` paths with ``i`` nodes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = list(coeffs)

    @classmethod
    def unit(cls, size: int = 1) -> PathCountPolynomial:
        return cls([0] * size + [1])

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathCountPolynomial):
            return NotImplemented
        a, b = self._trimmed(), other._trimmed()
        return a == b

    def __repr__(self) -> str:
        terms = {i: c for i, c in enumerate(self.coeffs) if c}
        return f"PathCountPolynomial({terms})"

    def _trimmed(self) -> list[int]:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return c

    def total(self) -> int:
        return sum(self.coeffs)

    def shift(self, k: int) -> PathCountPolynomial:
        """Move every coefficient ``k`` places up (negative ``k`` moves down)."""
        if k >= 0:
            return PathCountPolynomial([0] * k + self.coeffs)
        if any(self.coeffs[:-k]):
            raise ValueError("shift would drop non-zero coefficients")
        return PathCountPolynomial(self.coeffs[-k:])

    def __add__(self, other: PathCountPolynomial) -> PathCountPolynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        return PathCountPolynomial(self[i] + other[i] for i in range(size))

    def __mul__(self, other: PathCountPolynomial) -> PathCountPolynomial:
        """Plain polynomial product (indices add)."""
        if not self.coeffs or not other.coeffs:
            return PathCountPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return PathCountPolynomial(out)

    def join(self, other: PathCountPolynomial) -> PathCountPolynomial:
        """Concatenate s..v paths with v..t paths sharing the node v."""
        return self * other.shift(-1)

    def reset(self) -> None:
        self.coeffs = []


def path_count_polynomials(G: Graph, s: int) -> list[PathCountPolynomial]:
    """``T_sv`` for every node v under weighted shortest paths from ``s``."""
    r = sssp(G, s, "weighted")
    polys = [PathCountPolynomial() for _ in range(G.n)]
    polys[s] = PathCountPolynomial.unit(1)
    for v in r.order:
        if v == s:
            continue
        acc = PathCountPolynomial()
        for p in r.preds[v]:
            acc = acc + polys[p].shift(1)
        polys[v] = acc
    return polys


def _brandes_betweenness(G: Graph) -> list[float]:
    c = [0.0] * G.n
    for s in range(G.n):
        r = sssp(G, s)
        delta = [0.0] * G.n
        for w in reversed(r.order):
            for v in r.preds[w]:
                delta[v] += r.sigma[v] / r.sigma[w] * (1.0 + delta[w])
            if w != s:
                c[w] += delta[w]
    if not G.directed:
        c = [x / 2 for x in c]
    return c


def classic_centrality(G: Graph, kind: str) -> CentralityResult:
    """Degree (|N(v)|), closeness (sum of edge-count distances), or betweenness.

    Closeness ignores unreachable nodes. Betweenness sums over unordered pairs
    on undirected graphs and ordered pairs on directed ones.
    """
    if kind == "degree":
        scores = [float(G.degree(v)) for v in range(G.n)]
    elif kind == "closeness":
        scores = [0.0] * G.n
        for v in range(G.n):
            lengths, _ = path_lengths(G, v, "unweighted", reverse=True)
            scores[v] = float(sum(d for d in lengths if d != INF))
    elif kind == "betweenness":
        scores = _brandes_betweenness(G)
    else:
        raise ValueError(f"unknown centrality kind {kind!r}")
    return CentralityResult.build(kind, G.labels, scores)


def group_centrality(G: Graph, kind: str, C: Iterable[int], mode: str | None = None) -> float:
    """Group degree, closeness, or betweenness of the node set ``C``."""
    members = frozenset(C)
    if not members:
        raise ValueError("group centrality needs a non-empty group")
    outside = [v for v in range(G.n) if v not in members]
    if kind == "degree":
        reach = set()
        for v in members:
            reach.update(G.adj[v])
        return float(len(reach - members))
    if kind == "closeness":
        # Multi-source BFS from the whole group, edge-count distances.
        dist = {v: 0 for v in members}
        queue = deque(members)
        while queue:
            v = queue.popleft()
            for w in G.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return float(sum(dist[s] for s in outside if s in dist))
    if kind == "betweenness":
        total = 0.0
        for s in outside:
            full, sigma = path_lengths(G, s, mode)
            cut, sigma_cut = path_lengths(G, s, mode, exclude=members)
            for t in outside:
                if t == s or sigma[t] == 0:
                    continue
                surviving = sigma_cut[t] if same_length(cut[t], full[t]) else 0
                total += (sigma[t] - surviving) / sigma[t]
        return total if G.directed else total / 2
    raise ValueError(f"unknown centrality kind {kind!r}")


def all_pairs(G: Graph, mode: str | None = None) -> tuple[list[list[float]], list[list[int]]]:
    """Matrices of path lengths (edge counts or weight sums) and path counts."""
    lengths, counts = [], []
    for s in range(G.n):
        d, c = path_lengths(G, s, mode)
        lengths.append(d)
        counts.append(c)
    return lengths, counts


def _ordered_path_count(L, S, seq: Sequence[int]) -> int:
    total = 0.0
    count = 1
    for a, b in zip(seq, seq[1:]):
        if L[a][b] == INF:
            return 0
        total += L[a][b]
        count *= S[a][b]
    return count if same_length(total, L[seq[0]][seq[-1]]) else 0


def path_betweenness(G: Graph, T: Sequence[int], mode: str | None = None,
                     tables: tuple | None = None) -> float:
    """Share of geodesics that visit the node sequence ``T`` in order.

    Undirected graphs sum over unordered pairs and accept either traversal
    direction; directed graphs sum over ordered pairs.
    """
    if len(set(T)) != len(T):
        raise ValueError("path betweenness sequence repeats a node")
    L, S = tables if tables is not None else all_pairs(G, mode)
    inside = set(T)
    rev = list(reversed(T))
    total = 0.0
    for s in range(G.n):
        if s in inside:
            continue
        for t in range(G.n):
            if t == s or t in inside or S[s][t] == 0:
                continue
            if not G.directed and t < s:
                continue
            hits = _ordered_path_count(L, S, [s, *T, t])
            if not G.directed and len(T) > 1:
                hits += _ordered_path_count(L, S, [s, *rev, t])
            total += hits / S[s][t]
    return total


def modularity(G: Graph, CS: CommunityStructure) -> float:
    m = G.num_edges
    if m == 0:
        raise ValueError("modularity is undefined on a graph without edges")
    q = 0.0
    for group in CS.members:
        inside = set(group)
        internal = sum(1 for u, v, _ in G.edges() if u in inside and v in inside)
        degree_sum = sum(G.degree(v) for v in group)
        q += internal / m - (degree_sum / (2 * m)) ** 2
    return q


def is_connected_mask(mask: int, nbr: Sequence[int]) -> bool:
    """True when the nodes in ``mask`` induce a connected subgraph (empty is not)."""
    if not mask:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            grow |= nbr[low.bit_length() - 1]
            frontier ^= low
        grow &= mask & ~seen
        seen |= grow
        frontier = grow
    return seen == mask


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def nodes_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def articulation_points_mask(mask: int, nbr: Sequence[int]) -> int:
    """Cut vertices of the connected induced subgraph on ``mask`` (as a bitmask)."""
    members = nodes_of(mask)
    if len(members) <= 2:
        return 0
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut = 0
    root = members[0]
    disc[root] = low[root] = 0
    counter = 1
    root_children = 0
    # Iterative DFS: stack of (node, parent, remaining neighbour mask).
    stack = [(root, -1, nbr[root] & mask)]
    while stack:
        v, parent, pending = stack[-1]
        if pending:
            bit = pending & -pending
            stack[-1] = (v, parent, pending ^ bit)
            w = bit.bit_length() - 1
            if w == parent:
                continue
            if w in disc:
                low[v] = min(low[v], disc[w])
            else:
                disc[w] = low[w] = counter
                counter += 1
                if v == root:
                    root_children += 1
                stack.append((w, v, nbr[w] & mask))
        else:
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut |= 1 << parent
    if len(disc) != len(members):
        raise ValueError("articulation points need a connected node set")
    if root_children > 1:
        cut |= 1 << root
    return cut


def articulation_points(G: Graph, C: Iterable[int]) -> set[int]:
    """Members of ``C`` whose removal disconnects the subgraph induced by ``C``."""
    nbr = G.neighbor_masks()
    mask = mask_of(C)
    if mask and not is_connected_mask(mask, nbr):
        raise ValueError("articulation points need a connected node set")
    return set(nodes_of(articulation_points_mask(mask, nbr)))


def iter_connected_masks(nbr: Sequence[int]) -> Iterator[int]:
    """Every connected induced node set exactly once, as bitmasks.

    Each set is generated from its smallest-index node, extending only by
    neighbours not yet forbidden, so no set is produced twice.
    """
    n = len(nbr)

    def grow(S: int, around: int, forbidden: int) -> Iterator[int]:
        frontier = around & ~forbidden
        if not frontier:
            return
        deeper = forbidden | frontier
        sub = frontier
        while sub:
            extra = 0
            rest = sub
            while rest:
                low = rest & -rest
                extra |= nbr[low.bit_length() - 1]
                rest ^= low
            grown = S | sub
            yield grown
            yield from grow(grown, (around | extra) & ~grown, deeper)
            sub = (sub - 1) & frontier

    for i in range(n - 1, -1, -1):
        start = 1 << i
        yield start
        yield from grow(start, nbr[i], (start << 1) - 1)


def connected_induced_subgraphs(G: Graph, visitor: Callable[[frozenset[int]], None] | None = None) -> int:
    """Visit each connected induced subgraph (as a node-index set); return the count."""
    count = 0
    for mask in iter_connected_masks(G.neighbor_masks()):
        count += 1
        if visitor is not None:
            visitor(frozenset(nodes_of(mask)))
    return count
