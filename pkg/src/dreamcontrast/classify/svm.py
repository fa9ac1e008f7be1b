"""Soft-margin linear SVM trained in the dual by SMO.

Primal problem::

    minimise  0.5 * ||w||^2 + C * sum_i max(0, 1 - y_i (w . x_i + b))

with an unregularised bias.  The solver works on the dual
``min 0.5 a'Qa - sum(a)``, ``0 <= a_i <= C``, ``sum_i y_i a_i = 0`` and
stops once the maximal KKT violation drops below ``tol``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .._backend import kernels
from ..features import FeatureVector
from ._common import ModelError, TrainingSet, check_vector, frozen, infer_width, to_csr, two_labels

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SvmModel:
    labels: tuple[str, str]
    positive: str
    w: np.ndarray = field(repr=False)
    b: float = 0.0
    C: float = 1.0
    tol: float = 1e-3
    iterations: int = 0
    converged: bool = True
    dual_trace: tuple[float, ...] = field(default=(), repr=False)

    @property
    def n_features(self) -> int:
        return self.w.shape[0]

    def decision(self, fv: FeatureVector) -> float:
        check_vector(fv, self.n_features)
        return float(self.w[list(fv.active)].sum() + self.b)

    def predict(self, fv: FeatureVector) -> tuple[str, float]:
        d = self.decision(fv)
        negative = self.labels[1] if self.positive == self.labels[0] else self.labels[0]
        if d > 0:
            label = self.positive
        elif d < 0:
            label = negative
        else:
            label = self.labels[0]
        return label, d


def primal_objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, C: float) -> float:
    margins = y * (X @ w + b)
    return 0.5 * float(w @ w) + C * float(np.maximum(0.0, 1.0 - margins).sum())


def _bias(a: np.ndarray, G: np.ndarray, y: np.ndarray, C: float) -> float:
    yG = y * G
    at_upper = a >= C
    at_lower = a <= 0
    free = ~(at_upper | at_lower)
    if free.any():
        rho = float(yG[free].mean())
    else:
        ub_mask = (at_upper & (y < 0)) | (at_lower & (y > 0))
        lb_mask = (at_upper & (y > 0)) | (at_lower & (y < 0))
        ub = yG[ub_mask].min() if ub_mask.any() else np.inf
        lb = yG[lb_mask].max() if lb_mask.any() else -np.inf
        rho = float((ub + lb) / 2)
    return -rho


def train_svm(train: TrainingSet, C: float = 1.0, *, tol: float = 1e-3,
              max_epochs: int | None = None, n_features: int | None = None,
              positive: str | None = None) -> SvmModel:
    """Fit the soft-margin SVM; an epoch is ``len(train)`` pair updates.

    The default cap is ``10 * len(train)`` epochs; hitting it is logged and
    recorded as ``converged=False``.
    """
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    try:
        labels = two_labels(train)
    except ModelError as exc:
        raise ModelError(f"SVM needs both classes in training data: {exc}") from None
    positive = labels[0] if positive is None else positive
    if positive not in labels:
        raise ValueError(f"positive label {positive!r} not among {labels}")
    width = infer_width(train, n_features)
    n = len(train)
    indptr, indices = to_csr([fv for fv, _ in train])
    y = np.array([1.0 if lab == positive else -1.0 for _, lab in train])
    epochs = 10 * n if max_epochs is None else max_epochs
    a, G, iters, trace = kernels.smo_solve(indptr, indices, y, float(C), float(tol),
                                           int(epochs) * n, n)
    a = np.asarray(a)
    converged = iters < epochs * n
    if not converged:
        log.warning("SMO stopped at the iteration cap (%d) before reaching tol=%g", iters, tol)
    w = np.zeros(width)
    coef = a * y
    for r in range(n):
        w[indices[indptr[r]:indptr[r + 1]]] += coef[r]
    b = _bias(a, np.asarray(G), y, C)
    return SvmModel(labels, positive, frozen(w), b, C, tol, int(iters), converged, tuple(trace))
