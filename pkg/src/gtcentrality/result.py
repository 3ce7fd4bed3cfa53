"""Container for per-node scores produced by every solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence


@dataclass(frozen=True)
class CentralityResult:
    """Scores indexed by dense node index, plus provenance metadata."""

    measure: str
    labels: tuple[str, ...]
    scores: tuple[float, ...]
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int | None = None

    @classmethod
    def build(
        cls,
        measure: str,
        labels: Sequence[str],
        scores: Sequence[float],
        params: Mapping[str, Any] | None = None,
        seed: int | None = None,
    ) -> CentralityResult:
        if len(labels) != len(scores):
            raise ValueError("labels and scores differ in length")
        return cls(measure, tuple(labels), tuple(float(x) for x in scores), dict(params or {}), seed)

    def __len__(self) -> int:
        return len(self.scores)

    def __getitem__(self, label: str) -> float:
        return self.scores[self.labels.index(label)]

    def __iter__(self) -> Iterator[tuple[str, float]]:
        return iter(zip(self.labels, self.scores))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.scores))

    def ranking(self) -> list[tuple[str, float]]:
        """Rows sorted by descending score, ties broken by label."""
        return sorted(zip(self.labels, self.scores), key=lambda row: (-row[1], row[0]))

    def ranks(self) -> list[int]:
        """1-based rank per node index; ties broken by node index."""
        order = sorted(range(len(self.scores)), key=lambda i: (-self.scores[i], i))
        ranks = [0] * len(order)
        for position, node in enumerate(order, start=1):
            ranks[node] = position
        return ranks
