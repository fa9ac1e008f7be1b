"""Balanced Winnow with thick thresholds.

Each class keeps a positive and a negative weight per feature.  A class's
score for a document is the mean of ``w_pos - w_neg`` over the document's
active features, so the thresholds do not depend on document length.
Weights start at ``(2.0, 1.0)``, i.e. a net weight of 1.0, the first time a
feature is seen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._backend import kernels
from ..features import FeatureVector
from ._common import TrainingSet, check_vector, frozen, infer_width, to_csr, two_labels

INIT_POS = 2.0
INIT_NEG = 1.0


@dataclass(frozen=True)
class WinnowModel:
    labels: tuple[str, str]
    positive: str
    w_pos: np.ndarray = field(repr=False)
    w_neg: np.ndarray = field(repr=False)
    touched: np.ndarray = field(repr=False)
    alpha: float = 1.05
    beta: float = 0.95
    theta_plus: float = 2.5
    theta_minus: float = 0.5
    iterations: int = 1
    n_updates: int = 0

    @property
    def n_features(self) -> int:
        return self.w_pos.shape[1]

    def class_scores(self, fv: FeatureVector) -> np.ndarray:
        check_vector(fv, self.n_features)
        if not fv.active:
            return np.zeros(2)
        idx = np.asarray(fv.active)
        return np.array([
            sum((self.w_pos[c, idx] - self.w_neg[c, idx]).tolist()) / len(idx)
            for c in (0, 1)
        ])

    def predict(self, fv: FeatureVector) -> tuple[str, float]:
        s = self.class_scores(fv)
        label = self.labels[1] if s[1] > s[0] else self.labels[0]
        p = self.labels.index(self.positive)
        return label, float(s[p] - s[1 - p])

    def net_weights(self, label: str) -> np.ndarray:
        c = self.labels.index(label)
        return self.w_pos[c] - self.w_neg[c]


def train_winnow(train: TrainingSet, *, alpha: float = 1.05, beta: float = 0.95,
                 theta_plus: float = 2.5, theta_minus: float = 0.5, iterations: int = 1,
                 n_features: int | None = None, positive: str | None = None) -> WinnowModel:
    """Mistake-driven multiplicative training, documents in input order.

    A document of class ``c`` whose score for ``c`` is below
    ``theta_plus`` promotes its active features for ``c``
    (``w_pos *= alpha``, ``w_neg *= beta``); a document of the other class
    whose score for ``c`` exceeds ``theta_minus`` demotes them
    (``w_pos *= beta``, ``w_neg *= alpha``).
    """
    labels = two_labels(train)
    if not alpha > 1.0 or not 0.0 < beta < 1.0:
        raise ValueError("need alpha > 1 and 0 < beta < 1")
    if theta_minus > theta_plus:
        raise ValueError("theta_minus must not exceed theta_plus")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    positive = labels[0] if positive is None else positive
    if positive not in labels:
        raise ValueError(f"positive label {positive!r} not among {labels}")
    width = infer_width(train, n_features)
    indptr, indices = to_csr([fv for fv, _ in train])
    y = np.array([labels.index(lab) for _, lab in train], dtype=np.int8)
    w_pos = np.full((2, width), INIT_POS)
    w_neg = np.full((2, width), INIT_NEG)
    touched = np.zeros((2, width), dtype=np.uint8)
    updates = 0
    for _ in range(iterations):
        updates += kernels.winnow_pass(indptr, indices, y, w_pos, w_neg, touched,
                                       alpha, beta, theta_plus, theta_minus)
    return WinnowModel(labels, positive, frozen(w_pos), frozen(w_neg),
                       frozen(touched.astype(bool)), alpha, beta, theta_plus,
                       theta_minus, iterations, int(updates))


def top_features(model: WinnowModel, n: int = 30, vocab=None) -> dict[str, list[tuple[int, object, float]]]:
    """Per class, the ``n`` touched features with the largest net weight.

    Entries are ``(rank, feature, net_weight)`` with 1-based ranks; the
    feature is an n-gram string when ``vocab`` is given, else its index.
    Equal net weights keep index order.
    """
    from ..features import ngram_str

    out = {}
    for c, label in enumerate(model.labels):
        net = model.w_pos[c] - model.w_neg[c]
        idx = np.flatnonzero(model.touched[c])
        order = idx[np.lexsort((idx, -net[idx]))][:n]
        out[label] = [
            (rank, ngram_str(vocab.ngrams[f]) if vocab is not None else int(f), float(net[f]))
            for rank, f in enumerate(order, start=1)
        ]
    return out
