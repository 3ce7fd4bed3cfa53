"""Coalitional and ordered games, plus the size-weight tables that
parameterise Semivalues."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

WEIGHT_TOL = 1e-12


class SizeLimitError(ValueError):
    """An exhaustive solver was asked for more players than its limit allows."""


def check_limit(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeLimitError(f"{what} limited to {limit} players, got {n} (raise the limit to override)")


def check_distribution(table: Sequence[float], size: int, name: str = "beta") -> tuple[float, ...]:
    """Validate a probability table over ``0..size-1`` and return it as a tuple."""
    values = tuple(float(x) for x in table)
    if len(values) != size:
        raise ValueError(f"{name} needs {size} entries, got {len(values)}")
    if any(x < 0 for x in values):
        raise ValueError(f"{name} has negative entries")
    if abs(sum(values) - 1.0) > WEIGHT_TOL * max(1, size):
        raise ValueError(f"{name} sums to {sum(values)!r}, not 1")
    return values


class ExactSum:
    """Running float sum that is correctly rounded whatever the order of the
    terms: the exact total is kept as non-overlapping partials and rounded
    once by ``math.fsum``."""

    __slots__ = ("partials",)

    def __init__(self):
        self.partials: list[float] = []

    def add(self, x: float) -> None:
        kept = 0
        for y in self.partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                self.partials[kept] = lo
                kept += 1
            x = hi
        self.partials[kept:] = [x]

    def value(self) -> float:
        return math.fsum(self.partials)


def shapley_size_weights(n: int) -> list[float]:
    """``k!(n-k-1)!/n!`` for ``k = 0..n-1``, built by running products."""
    if n == 0:
        return []
    w = [1.0 / n]
    for k in range(1, n):
        w.append(w[-1] * k / (n - k))
    return w


def shapley_beta(n: int) -> tuple[float, ...]:
    """The size distribution that turns a Semivalue into the Shapley value."""
    return tuple([1.0 / n] * n)


def banzhaf_beta(n: int) -> tuple[float, ...]:
    return tuple(math.comb(n - 1, k) / 2 ** (n - 1) for k in range(n))


@dataclass
class CoalitionGame:
    """A transferable-utility game on players ``0..n-1``.

    ``mask_value`` maps a bitmask coalition to its worth. Worth of the empty
    coalition is taken to be 0 whatever the callback says.
    """

    n: int
    mask_value: Callable[[int], float]
    labels: tuple[str, ...] | None = None
    _table: list[float] | None = field(default=None, repr=False)

    @classmethod
    def from_sets(cls, n: int, value: Callable[[frozenset[int]], float], labels=None) -> CoalitionGame:
        def by_mask(mask: int) -> float:
            return value(frozenset(i for i in range(n) if mask >> i & 1))
        return cls(n, by_mask, labels)

    def __call__(self, coalition: Iterable[int]) -> float:
        mask = 0
        for i in coalition:
            mask |= 1 << i
        return self.value(mask)

    def value(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        if self._table is not None:
            return self._table[mask]
        return float(self.mask_value(mask))

    def table(self) -> list[float]:
        """Worth of every coalition indexed by bitmask (cached)."""
        if self._table is None:
            t = [0.0] * (1 << self.n)
            for mask in range(1, 1 << self.n):
                t[mask] = float(self.mask_value(mask))
            self._table = t
        return self._table

    def grand(self) -> float:
        return self.value((1 << self.n) - 1)


@dataclass
class OrderedGame:
    """A game whose worth depends on the order in which players join.

    ``value`` receives a tuple of distinct players; the empty tuple is worth 0.
    """

    n: int
    sequence_value: Callable[[tuple[int, ...]], float]
    labels: tuple[str, ...] | None = None
    _memo: dict[tuple[int, ...], float] = field(default_factory=dict, repr=False)

    @classmethod
    def from_set_game(cls, game: CoalitionGame) -> OrderedGame:
        """Order-blind ordered game induced by a set game."""
        return cls(game.n, lambda seq: game(seq), game.labels)

    def __call__(self, sequence: Sequence[int]) -> float:
        key = tuple(sequence)
        if not key:
            return 0.0
        hit = self._memo.get(key)
        if hit is None:
            hit = float(self.sequence_value(key))
            self._memo[key] = hit
        return hit
