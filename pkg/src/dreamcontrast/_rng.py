"""Seeded randomness shared by every sampling step.

All randomness goes through a PCG64 generator seeded with a small integer
sequence, and permutations use an explicit Fisher-Yates loop over
``Generator.integers`` so the algorithm is fixed rather than left to a
library's internal shuffle.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for ``seed`` and an optional sub-stream key."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.PCG64([seed, *stream]))


def permutation(n: int, rng: np.random.Generator) -> list[int]:
    """Uniform random permutation of ``range(n)`` (Fisher-Yates, high to low)."""
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        order[i], order[j] = order[j], order[i]
    return order


def shuffled(items: Sequence[T], rng: np.random.Generator) -> list[T]:
    return [items[i] for i in permutation(len(items), rng)]
