"""Log-likelihood (G) comparison of topic frequencies between two samples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection, Mapping, Sequence

from scipy.stats import chi2

CRITICAL_05 = 3.841


def critical_value(p: float) -> float:
    """Chi-square (1 df) critical value; exactly 3.841 for p = 0.05."""
    if p == 0.05:
        return CRITICAL_05
    return float(chi2.isf(p, 1))


def _term(obs: float, exp: float) -> float:
    return obs * math.log(obs / exp) if obs > 0 else 0.0


def g_test(count_a: int, count_b: int, n_a: int, n_b: int, p: float = 0.05) -> tuple[float, bool]:
    """Two-cell corpus-comparison log-likelihood statistic.

    ``E_a = n_a * (a + b) / (n_a + n_b)`` (and likewise ``E_b``);
    ``G = 2 * (a ln(a / E_a) + b ln(b / E_b))`` with ``0 ln 0 = 0``.

    >>> round(g_test(30, 10, 100, 100)[0], 4)
    10.465
    """
    if n_a <= 0 or n_b <= 0:
        raise ValueError("sample sizes must be positive")
    if not (0 <= count_a <= n_a and 0 <= count_b <= n_b):
        raise ValueError("counts must lie between 0 and their sample size")
    if count_a * n_b == count_b * n_a:
        return 0.0, False
    pooled = (count_a + count_b) / (n_a + n_b)
    G = 2.0 * (_term(count_a, n_a * pooled) + _term(count_b, n_b * pooled))
    G = max(G, 0.0)
    return G, G > critical_value(p)


@dataclass(frozen=True)
class ContrastResult:
    topic: int
    count_a: int
    count_b: int
    n_a: int
    n_b: int
    G: float
    significant: bool
    direction: str  # "a", "b" or "none"


def contrast_samples(annotations: Mapping[str, Collection[int]], sample_a: Sequence[str],
                     sample_b: Sequence[str], T: int, p: float = 0.05) -> list[ContrastResult]:
    """Per-topic G-test on the number of documents annotated with each topic.

    ``annotations`` maps a document id to its topic ids (a
    :class:`~dreamcontrast.topics.lda.TopicAnnotation` works too).  Results
    come sorted by G, largest first, then by topic id.
    """
    if not sample_a or not sample_b:
        raise ValueError("both samples must be non-empty")
    overlap = set(sample_a) & set(sample_b)
    if overlap:
        raise ValueError(f"samples overlap in {len(overlap)} document(s)")

    def topics_of(doc_id):
        if doc_id not in annotations:
            raise KeyError(f"document {doc_id!r} has no topic annotation")
        ann = annotations[doc_id]
        return set(getattr(ann, "topics", ann))

    count_a = [0] * T
    count_b = [0] * T
    for d in sample_a:
        for t in topics_of(d):
            count_a[t] += 1
    for d in sample_b:
        for t in topics_of(d):
            count_b[t] += 1
    n_a, n_b = len(sample_a), len(sample_b)
    out = []
    for t in range(T):
        G, sig = g_test(count_a[t], count_b[t], n_a, n_b, p)
        ra, rb = count_a[t] * n_b, count_b[t] * n_a
        direction = "a" if ra > rb else "b" if rb > ra else "none"
        out.append(ContrastResult(t, count_a[t], count_b[t], n_a, n_b, G, sig, direction))
    out.sort(key=lambda r: (-r.G, r.topic))
    return out
