"""Reference Huffman construction, used to check optimality of the remainder code."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "DiscreteDistribution",
    "huffman_code_lengths",
    "huffman_expected_length",
    "remainder_distribution",
]


@dataclass(frozen=True)
class DiscreteDistribution:
    probs: tuple

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probs)
        if any(not x > 0 for x in probs):
            raise ValueError("all probabilities must be positive")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def normalized(cls, weights: Sequence[float]) -> "DiscreteDistribution":
        total = math.fsum(weights)
        return cls(tuple(w / total for w in weights))

    def __len__(self):
        return len(self.probs)


def remainder_distribution(p: float, m: int) -> DiscreteDistribution:
    """Geometric distribution restricted to ``0..m-1`` and renormalized.

    ``Pr[R = r] = p (1-p)**r / (1 - (1-p)**m)``
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p!r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    log_keep = math.log1p(-p)
    norm = -math.expm1(m * log_keep)
    return DiscreteDistribution(tuple(p * math.exp(r * log_keep) / norm for r in range(m)))


def huffman_code_lengths(dist) -> list[int]:
    """Codeword length of every symbol in a Huffman code for ``dist``.

    Equal weights are merged in insertion order (leaves first, then
    internal nodes in creation order).
    """
    probs = dist.probs if isinstance(dist, DiscreteDistribution) else tuple(dist)
    n = len(probs)
    if n == 0:
        raise ValueError("cannot build a Huffman code for an empty distribution")
    if n == 1:
        return [0]

    parent = [-1] * (2 * n - 1)
    heap = [(w, i) for i, w in enumerate(probs)]
    heapq.heapify(heap)
    nxt = n
    while len(heap) > 1:
        wa, a = heapq.heappop(heap)
        wb, b = heapq.heappop(heap)
        parent[a] = parent[b] = nxt
        heapq.heappush(heap, (wa + wb, nxt))
        nxt += 1

    # internal nodes are created after their children, so walk top-down
    depth = [0] * (2 * n - 1)
    for node in range(2 * n - 3, -1, -1):
        depth[node] = depth[parent[node]] + 1
    return depth[:n]


def huffman_expected_length(dist) -> float:
    probs = dist.probs if isinstance(dist, DiscreteDistribution) else tuple(dist)
    lengths = huffman_code_lengths(probs)
    return math.fsum(p * n for p, n in zip(probs, lengths))
