"""Multinomial Naive Bayes over binary presence events.

Every active feature of a training document counts once for its class, and
a test document contributes ``log P(f|c)`` once per active feature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..features import FeatureVector
from ._common import TrainingSet, check_vector, frozen, infer_width, two_labels


TIE_EPS = 1e-12


@dataclass(frozen=True)
class NaiveBayesModel:
    labels: tuple[str, str]
    positive: str
    log_prior: np.ndarray = field(repr=False)
    log_likelihood: np.ndarray = field(repr=False)  # (2, V)
    smoothing: float = 1.0

    @property
    def n_features(self) -> int:
        return self.log_likelihood.shape[1]

    def joint_log(self, fv: FeatureVector) -> np.ndarray:
        """``log P(c) + sum_f log P(f|c)`` for both classes."""
        check_vector(fv, self.n_features)
        idx = list(fv.active)
        return self.log_prior + self.log_likelihood[:, idx].sum(axis=1)

    def posterior(self, fv: FeatureVector) -> np.ndarray:
        j = self.joint_log(fv)
        j = j - np.logaddexp(j[0], j[1])
        return np.exp(j)

    def predict(self, fv: FeatureVector) -> tuple[str, float]:
        j = self.joint_log(fv)
        p = self.labels.index(self.positive)
        diff = float(j[p] - j[1 - p])
        # equal products reached through different summation orders can
        # differ in the last bits; treat those as the tie they are
        if abs(diff) <= TIE_EPS * max(1.0, float(np.abs(j).max())):
            return self.labels[0], 0.0
        return self.labels[1] if j[1] > j[0] else self.labels[0], diff


def train_nb(train: TrainingSet, smoothing: float = 1.0, *, n_features: int | None = None,
             positive: str | None = None) -> NaiveBayesModel:
    """``P(f|c) = (count(f,c) + s) / (total(c) + s*V)``; priors are document shares."""
    if smoothing < 0:
        raise ValueError(f"smoothing must be >= 0, got {smoothing}")
    labels = two_labels(train)
    positive = labels[0] if positive is None else positive
    if positive not in labels:
        raise ValueError(f"positive label {positive!r} not among {labels}")
    V = infer_width(train, n_features)
    counts = np.zeros((2, V))
    docs = np.zeros(2)
    for fv, lab in train:
        c = labels.index(lab)
        docs[c] += 1
        counts[c, list(fv.active)] += 1
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore"):
        loglik = np.log(counts + smoothing) - np.log(totals + smoothing * V)
        log_prior = np.log(docs / docs.sum())
    return NaiveBayesModel(labels, positive, frozen(log_prior), frozen(loglik), smoothing)
