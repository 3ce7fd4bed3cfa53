"""Generalized read-once marginal-contribution networks.

A rule pairs a boolean formula with a value. Atoms are basic (``{a,b}``: all
listed players present) or ordered (``<a,b>``: the players appear in this
order, not necessarily adjacently). An ordered coalition is worth the sum of
the values of the rules it satisfies.

Both ordered solution concepts only look at how a rule's own players are
arranged: restricting a uniformly random ordering of everyone to the rule's r
players gives a uniformly random ordering of those r players, and the same
holds for the random insertion slot used by the averaged-position value. So
each rule is solved on its own players with the weights ``(r-k-1)!/r!``,
from counts of ordered coalitions that a player switches on or off. Those
counts follow the formula structure: interleaving two disjoint ordered
coalitions of sizes k1 and k2 can be done in ``C(k1+k2, k1)`` ways.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .games import OrderedGame
from .graph import Graph, all_pairs, path_betweenness, sssp
from .result import CentralityResult


class RuleFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class BAF:
    members: tuple[str, ...]


@dataclass(frozen=True)
class OAF:
    sequence: tuple[str, ...]


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


Formula = Union[BAF, OAF, Not, And, Or, Xor]
BINARY = (And, Or, Xor)


def players_of(F: Formula) -> list[str]:
    """Players in order of appearance (duplicates kept, to detect reuse)."""
    if isinstance(F, BAF):
        return list(F.members)
    if isinstance(F, OAF):
        return list(F.sequence)
    if isinstance(F, Not):
        return players_of(F.child)
    return players_of(F.left) + players_of(F.right)


def check_read_once(F: Formula, line: int | None = None) -> None:
    seen = set()
    for p in players_of(F):
        if p in seen:
            raise RuleFormatError(f"player {p!r} repeated within a rule", line)
        seen.add(p)


def _combine(F: Formula, a: bool, b: bool) -> bool:
    if isinstance(F, And):
        return a and b
    if isinstance(F, Or):
        return a or b
    return a != b


def satisfies(T: Sequence[str], F: Formula) -> bool:
    """Does the ordered coalition ``T`` (distinct players) meet ``F``?"""
    position = {p: i for i, p in enumerate(T)}
    return _sat(position, F)


def _sat(position: dict[str, int], F: Formula) -> bool:
    if isinstance(F, BAF):
        return all(p in position for p in F.members)
    if isinstance(F, OAF):
        last = -1
        for p in F.sequence:
            at = position.get(p)
            if at is None or at < last:
                return False
            last = at
        return True
    if isinstance(F, Not):
        return not _sat(position, F.child)
    return _combine(F, _sat(position, F.left), _sat(position, F.right))


@dataclass
class RuleSet:
    players: list[str] = field(default_factory=list)
    rules: list[tuple[Formula, float]] = field(default_factory=list)

    def add(self, F: Formula, value: float) -> None:
        check_read_once(F)
        for p in players_of(F):
            if p not in self.players:
                self.players.append(p)
        self.rules.append((F, float(value)))


_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_.:\-]+)|(.))")


def _tokenize(text: str, line: int | None) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        word, sym = m.groups()
        if word is not None:
            tokens.append(word)
        elif sym is not None and not sym.isspace():
            if sym not in "{}<>,!&|^()":
                raise RuleFormatError(f"unexpected character {sym!r}", line)
            tokens.append(sym)
        pos = m.end()
    return tokens


class _Parser:
    # Binding strength: "!" above "&" above "^" above "|".
    LEVELS = (("|", Or), ("^", Xor), ("&", And))

    def __init__(self, tokens: list[str], line: int | None):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise RuleFormatError("unexpected end of formula", self.line)
        if expected is not None and tok != expected:
            raise RuleFormatError(f"expected {expected!r}, found {tok!r}", self.line)
        self.pos += 1
        return tok

    def formula(self, level: int = 0) -> Formula:
        if level == len(self.LEVELS):
            return self.unary()
        symbol, node = self.LEVELS[level]
        left = self.formula(level + 1)
        while self.peek() == symbol:
            self.take()
            left = node(left, self.formula(level + 1))
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        if tok in ("{", "<"):
            close = "}" if tok == "{" else ">"
            self.take()
            names = []
            while True:
                name = self.take()
                if name in "{}<>,!&|^()":
                    raise RuleFormatError("empty or malformed atomic formula", self.line)
                names.append(name)
                sep = self.take()
                if sep == close:
                    break
                if sep != ",":
                    raise RuleFormatError(f"expected ',' or {close!r}, found {sep!r}", self.line)
            return BAF(tuple(names)) if tok == "{" else OAF(tuple(names))
        raise RuleFormatError(f"unexpected token {tok!r}", self.line)


def parse_formula(text: str, line: int | None = None) -> Formula:
    parser = _Parser(_tokenize(text, line), line)
    F = parser.formula()
    if parser.peek() is not None:
        raise RuleFormatError(f"unexpected token {parser.peek()!r}", line)
    check_read_once(F, line)
    return F


def parse_rules(text: str) -> RuleSet:
    """One ``FORMULA -> NUMBER`` rule per line; ``players: a,b`` declares
    extra (possibly null) players; ``#`` starts a comment."""
    RS = RuleSet()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("players:"):
            for name in body[len("players:"):].split(","):
                name = name.strip()
                if not name:
                    raise RuleFormatError("empty player name", lineno)
                if name not in RS.players:
                    RS.players.append(name)
            continue
        if "->" not in body:
            raise RuleFormatError("expected 'FORMULA -> VALUE'", lineno)
        formula_text, value_text = body.rsplit("->", 1)
        try:
            value = float(value_text)
        except ValueError:
            raise RuleFormatError(f"bad rule value {value_text.strip()!r}", lineno) from None
        F = parse_formula(formula_text, lineno)
        RS.add(F, value)
    return RS


def evaluate_ruleset(RS: RuleSet, T: Sequence[str]) -> float:
    """Sum of the values of the rules ``T`` meets; the empty coalition is worth 0."""
    known = set(RS.players)
    for p in T:
        if p not in known:
            raise KeyError(f"unknown player {p!r}")
    if not T:
        return 0.0
    position = {p: i for i, p in enumerate(T)}
    return sum(value for F, value in RS.rules if _sat(position, F))


def ruleset_game(RS: RuleSet) -> OrderedGame:
    """The ordered game of ``RS`` over player indices ``0..len(players)-1``."""
    labels = tuple(RS.players)
    compiled = [(F, v) for F, v in RS.rules]

    def value(seq: tuple[int, ...]) -> float:
        if not seq:
            return 0.0
        position = {labels[i]: k for k, i in enumerate(seq)}
        return sum(v for F, v in compiled if _sat(position, F))

    return OrderedGame(len(labels), value, labels)


def classic_rule(positive: Iterable[str], negative: Iterable[str] = ()) -> Formula:
    """Conjunction of literals as a formula of single-player basic atoms."""
    literals: list[Formula] = [BAF((p,)) for p in positive]
    literals += [Not(BAF((p,))) for p in negative]
    if not literals:
        raise ValueError("a rule needs at least one literal")
    F = literals[0]
    for lit in literals[1:]:
        F = And(F, lit)
    check_read_once(F)
    return F


def classic_mcnet_rule_sv(positive: Sequence, negative: Sequence, value: float,
                          players: Sequence) -> list[float]:
    """Shapley value of a single conjunctive rule over ``players``.

    Each of the p positive players gets ``V/(p C(p+n, n))`` and each of the n
    negative players ``-V/(n C(p+n, p))``; everyone else gets 0.
    """
    p, q = len(positive), len(negative)
    if p == 0:
        raise ValueError("a rule without positive literals would value the empty coalition")
    if set(positive) & set(negative):
        raise ValueError("a player cannot be both positive and negative")
    phi = []
    for x in players:
        if x in positive:
            phi.append(value / (p * math.comb(p + q, q)))
        elif x in negative:
            phi.append(-value / (q * math.comb(p + q, p)))
        else:
            phi.append(0.0)
    return phi


def _perm(r: int, k: int) -> int:
    return math.perm(r, k) if 0 <= k <= r else 0


@dataclass
class QuantityTables:
    """Counts for one formula and one of its players i.

    ``T[k]``/``F[k]``: ordered coalitions of size k over all the formula's
    players that satisfy / fail it. ``T_rest``/``F_rest``: the same over the
    players other than i. ``A[k]``/``B[k]``: ordered coalitions of the other
    players that i switches on / off by joining; in ``"sb"`` mode these are
    lists over the insertion slot ``l = 0..k`` (``"nr"`` always appends).
    """

    mode: str
    r: int
    T: list[int]
    F: list[int]
    T_rest: list[int]
    F_rest: list[int]
    A: list
    B: list


def _truth_counts(F: Formula) -> tuple[int, list[int]]:
    """``(r, T)``: player count and satisfying-coalition counts by size."""
    if isinstance(F, (BAF, OAF)):
        atoms = F.members if isinstance(F, BAF) else F.sequence
        r = len(atoms)
        T = [0] * (r + 1)
        T[r] = math.factorial(r) if isinstance(F, BAF) else 1
        return r, T
    if isinstance(F, Not):
        r, T = _truth_counts(F.child)
        return r, [_perm(r, k) - T[k] for k in range(r + 1)]
    r1, T1 = _truth_counts(F.left)
    r2, T2 = _truth_counts(F.right)
    F1 = [_perm(r1, k) - T1[k] for k in range(r1 + 1)]
    F2 = [_perm(r2, k) - T2[k] for k in range(r2 + 1)]
    r = r1 + r2
    T = [0] * (r + 1)
    for k1 in range(r1 + 1):
        for k2 in range(r2 + 1):
            sat = 0
            for a, ca in ((True, T1[k1]), (False, F1[k1])):
                for b, cb in ((True, T2[k2]), (False, F2[k2])):
                    if ca and cb and _combine(F, a, b):
                        sat += ca * cb
            T[k1 + k2] += math.comb(k1 + k2, k1) * sat
    return r, T


def _contains(F: Formula, player: str) -> bool:
    return player in players_of(F)


def quantity_tables(F: Formula, player: str, mode: str = "nr") -> QuantityTables:
    if mode not in ("nr", "sb"):
        raise ValueError(f"unknown mode {mode!r}")
    if not _contains(F, player):
        raise ValueError(f"player {player!r} does not occur in the formula")
    r, T = _truth_counts(F)
    Fc = [_perm(r, k) - T[k] for k in range(r + 1)]
    T_rest, A, B = _switch_counts(F, player, mode)
    F_rest = [_perm(r - 1, k) - T_rest[k] for k in range(r)]
    return QuantityTables(mode, r, T, Fc, T_rest, F_rest, A, B)


def _switch_counts(F: Formula, player: str, mode: str):
    """``(T_rest, A, B)`` for ``player`` inside ``F`` (see QuantityTables)."""
    sb = mode == "sb"
    if isinstance(F, (BAF, OAF)):
        atoms = F.members if isinstance(F, BAF) else F.sequence
        r = len(atoms)
        T_rest = [0] * r
        A = [[0] * (k + 1) if sb else 0 for k in range(r)]
        B = [[0] * (k + 1) if sb else 0 for k in range(r)]
        last = r - 1
        if isinstance(F, BAF):
            # Only the full set of others, in any order, is switched on.
            if sb:
                A[last] = [math.factorial(last)] * r
            else:
                A[last] = math.factorial(last)
        else:
            slot = atoms.index(player)
            if sb:
                A[last][slot] = 1
            elif slot == last:
                A[last] = 1
        return T_rest, A, B
    if isinstance(F, Not):
        T_rest, A, B = _switch_counts(F.child, player, mode)
        r_rest = len(T_rest) - 1
        return [_perm(r_rest, k) - T_rest[k] for k in range(r_rest + 1)], B, A

    inner, other = (F.left, F.right) if _contains(F.left, player) else (F.right, F.left)
    T1, A1, B1 = _switch_counts(inner, player, mode)
    r1 = len(T1) - 1  # players of the inner operand other than ``player``
    r2, T2 = _truth_counts(other)
    F2 = [_perm(r2, k) - T2[k] for k in range(r2 + 1)]
    size = r1 + r2
    T_rest = [0] * (size + 1)
    A = [[0] * (k + 1) if sb else 0 for k in range(size + 1)]
    B = [[0] * (k + 1) if sb else 0 for k in range(size + 1)]

    # Outcomes of the whole formula for each (inner before, inner after, other).
    def classes(k1: int, count_on, count_off):
        t1 = T1[k1]
        f1 = _perm(r1, k1) - t1
        return (
            (False, True, count_on),            # switched on
            (True, False, count_off),           # switched off
            (True, True, t1 - count_off),       # stays true
            (False, False, f1 - count_on),      # stays false
        )

    for k1 in range(r1 + 1):
        t1 = T1[k1]
        f1 = _perm(r1, k1) - t1
        for k2 in range(r2 + 1):
            k = k1 + k2
            weave = math.comb(k, k1)
            sat_before = 0
            for b1, c1 in ((True, t1), (False, f1)):
                for b2, c2 in ((True, T2[k2]), (False, F2[k2])):
                    if c1 and c2 and _combine(F, b1, b2):
                        sat_before += c1 * c2
            T_rest[k] += weave * sat_before
            if sb:
                for l1 in range(k1 + 1):
                    on, off = _gain_loss(F, classes(k1, A1[k1][l1], B1[k1][l1]), T2[k2], F2[k2])
                    if not on and not off:
                        continue
                    # Slots l of the merged coalition with exactly l1 inner
                    # players before them: choose which of the first l places
                    # hold inner players, then the rest.
                    for l in range(l1, l1 + k2 + 1):
                        ways = math.comb(l, l1) * math.comb(k - l, k1 - l1)
                        A[k][l] += ways * on
                        B[k][l] += ways * off
            else:
                on, off = _gain_loss(F, classes(k1, A1[k1], B1[k1]), T2[k2], F2[k2])
                A[k] += weave * on
                B[k] += weave * off
    return T_rest, A, B


def _gain_loss(F: Formula, inner_classes, t2: int, f2: int) -> tuple[int, int]:
    on = off = 0
    for before1, after1, c1 in inner_classes:
        if not c1:
            continue
        for b2, c2 in ((True, t2), (False, f2)):
            if not c2:
                continue
            before = _combine(F, before1, b2)
            after = _combine(F, after1, b2)
            if after and not before:
                on += c1 * c2
            elif before and not after:
                off += c1 * c2
    return on, off


def rule_values(F: Formula, value: float, mode: str) -> dict[str, float]:
    """Ordered value of every player of a single rule ``F -> value``."""
    members = players_of(F)
    r = len(members)
    out = {}
    for p in members:
        Q = quantity_tables(F, p, mode)
        total = Fraction(0)
        for k in range(r):
            weight = Fraction(math.factorial(r - k - 1), math.factorial(r))
            if mode == "nr":
                net = Q.A[k] - Q.B[k]
            else:
                net = Fraction(sum(Q.A[k]) - sum(Q.B[k]), k + 1)
            total += weight * net
        out[p] = float(total) * value
    return out


def _solve(RS: RuleSet, mode: str, measure: str) -> CentralityResult:
    scores = {p: 0.0 for p in RS.players}
    # Rules met by the empty coalition would give it a worth; the game pins
    # that worth to 0, which hands each player an equal 1/n share of it back
    # as the first joiner's gain.
    empty_worth = 0.0
    for F, value in RS.rules:
        if value == 0:
            continue
        if _sat({}, F):
            empty_worth += value
        for p, x in rule_values(F, value, mode).items():
            scores[p] += x
    if empty_worth and RS.players:
        share = empty_worth / len(RS.players)
        for p in scores:
            scores[p] += share
    return CentralityResult.build(measure, RS.players, [scores[p] for p in RS.players])


def comp_nr(RS: RuleSet) -> CentralityResult:
    """Value when each player joins a random ordered coalition last."""
    return _solve(RS, "nr", "nr")


def comp_sb(RS: RuleSet) -> CentralityResult:
    """Value averaging each player's gain over every insertion slot."""
    return _solve(RS, "sb", "sb")


def all_shortest_paths(G: Graph, mode: str | None = None) -> list[tuple[int, ...]]:
    """Every shortest path between distinct ordered pairs, as node sequences."""
    paths = []
    for s in range(G.n):
        r = sssp(G, s, mode)

        def back(v: int, suffix: tuple[int, ...]):
            if v == s:
                paths.append((s,) + suffix)
                return
            for p in r.preds[v]:
                back(p, (v,) + suffix)

        for t in r.order:
            if t != s:
                back(t, ())
    return paths


def generalized_betweenness_rules(G: Graph, mode: str | None = None, keep_zero: bool = False) -> RuleSet:
    """One rule per shortest path p: "exactly the nodes of p, in p's order"
    is worth the path betweenness of p."""
    tables = all_pairs(G, mode)
    RS = RuleSet(players=list(G.labels))
    everyone = set(range(G.n))
    for p in all_shortest_paths(G, mode):
        worth = path_betweenness(G, p, mode, tables)
        if worth == 0 and not keep_zero:
            continue
        F: Formula = OAF(tuple(G.labels[v] for v in p))
        outside = sorted(everyone - set(p))
        if outside:
            F = And(F, Not(BAF(tuple(G.labels[v] for v in outside))))
        RS.add(F, worth)
    return RS


def generalized_betweenness(G: Graph, solution: str = "nr", mode: str | None = None) -> CentralityResult:
    if solution not in ("nr", "sb"):
        raise ValueError(f"unknown solution {solution!r}")
    RS = generalized_betweenness_rules(G, mode)
    solved = comp_nr(RS) if solution == "nr" else comp_sb(RS)
    return CentralityResult.build(f"generalized-betweenness-{solution}", G.labels,
                                  [solved[label] for label in G.labels], {"solution": solution})


def path_betweenness_game(G: Graph, mode: str | None = None) -> OrderedGame:
    """Ordered game whose worth is the path betweenness of the sequence."""
    tables = all_pairs(G, mode)
    return OrderedGame(G.n, lambda seq: path_betweenness(G, seq, mode, tables), G.labels)


def ordered_coalitions(players: Sequence[str], k: int) -> Iterable[tuple[str, ...]]:
    return itertools.permutations(players, k)
