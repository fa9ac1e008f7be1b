from __future__ import annotations

from typing import Sequence

import numpy as np

from ..features import FeatureVector

TrainingSet = Sequence[tuple[FeatureVector, str]]


class ModelError(ValueError):
    pass


def two_labels(train: TrainingSet) -> tuple[str, str]:
    labels = sorted({lab for _, lab in train})
    if len(labels) != 2:
        raise ModelError(f"binary task needs exactly two labels, got {labels}")
    return labels[0], labels[1]


def infer_width(train: TrainingSet, n_features: int | None) -> int:
    top = max((fv.active[-1] for fv, _ in train if fv.active), default=-1) + 1
    if n_features is None:
        return max(top, 1)
    if top > n_features:
        raise ModelError(f"feature index {top - 1} outside vocabulary of size {n_features}")
    return n_features


def to_csr(vectors: Sequence[FeatureVector]) -> tuple[np.ndarray, np.ndarray]:
    """``(indptr, indices)`` for a list of binary vectors."""
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for r, fv in enumerate(vectors):
        indptr[r + 1] = indptr[r] + len(fv.active)
    indices = np.fromiter((f for fv in vectors for f in fv.active), dtype=np.int32,
                          count=int(indptr[-1]))
    return indptr, indices


def check_vector(fv: FeatureVector, n_features: int) -> None:
    if fv.active and (fv.active[-1] >= n_features or fv.active[0] < 0):
        raise ModelError(f"vector {fv.doc_id!r} has indices outside the model vocabulary "
                         f"(size {n_features})")


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr
