"""Flat-file model serialisation.

Layout (UTF-8, tab-separated)::

    #dreamcontrast-model<TAB>1
    algorithm<TAB>winnow|nb|svm
    labels<TAB><label0><TAB><label1>
    positive<TAB><label>
    n_features<TAB><V>
    vocab_sha256<TAB><hex digest or "none">
    param<TAB><name><TAB><value>        (zero or more)
    end_header
    <records>

Records are per algorithm:

* winnow: ``index  w_pos[0]  w_neg[0]  w_pos[1]  w_neg[1]`` for features
  touched in training (untouched ones keep the initial weights);
* nb: ``prior  logp[0]  logp[1]`` once, then ``index  loglik[0]  loglik[1]``;
* svm: ``bias  b`` once, then ``index  w`` for non-zero weights.

Floats are written with ``repr`` so they reload bit-for-bit.
"""

from __future__ import annotations

import hashlib
from typing import IO

import numpy as np

from ..features import Vocabulary, ngram_str
from .naive_bayes import NaiveBayesModel
from .svm import SvmModel
from .winnow import INIT_NEG, INIT_POS, WinnowModel

MAGIC = "#dreamcontrast-model"
VERSION = 1


def vocab_digest(vocab: Vocabulary | None) -> str:
    if vocab is None:
        return "none"
    h = hashlib.sha256()
    for g in vocab.ngrams:
        h.update(ngram_str(g).encode("utf-8") + b"\n")
    return h.hexdigest()


def _algorithm(model) -> str:
    if isinstance(model, WinnowModel):
        return "winnow"
    if isinstance(model, NaiveBayesModel):
        return "nb"
    if isinstance(model, SvmModel):
        return "svm"
    raise TypeError(f"cannot serialise {type(model).__name__}")


def save_model(model, fh: IO[str], vocab: Vocabulary | None = None) -> None:
    alg = _algorithm(model)
    fh.write(f"{MAGIC}\t{VERSION}\n")
    fh.write(f"algorithm\t{alg}\n")
    fh.write("labels\t" + "\t".join(model.labels) + "\n")
    fh.write(f"positive\t{model.positive}\n")
    fh.write(f"n_features\t{model.n_features}\n")
    fh.write(f"vocab_sha256\t{vocab_digest(vocab)}\n")
    if alg == "winnow":
        params = dict(alpha=model.alpha, beta=model.beta, theta_plus=model.theta_plus,
                      theta_minus=model.theta_minus, iterations=model.iterations,
                      n_updates=model.n_updates)
    elif alg == "nb":
        params = dict(smoothing=model.smoothing)
    else:
        params = dict(C=model.C, tol=model.tol, iterations=model.iterations,
                      converged=int(model.converged))
    for k, v in params.items():
        fh.write(f"param\t{k}\t{v!r}\n")
    fh.write("end_header\n")
    if alg == "winnow":
        for f in np.flatnonzero(model.touched.any(axis=0)):
            vals = (model.w_pos[0, f], model.w_neg[0, f], model.w_pos[1, f], model.w_neg[1, f])
            fh.write(f"{f}\t" + "\t".join(repr(float(v)) for v in vals) + "\n")
    elif alg == "nb":
        fh.write("prior\t" + "\t".join(repr(float(v)) for v in model.log_prior) + "\n")
        for f in range(model.n_features):
            fh.write(f"{f}\t{float(model.log_likelihood[0, f])!r}\t{float(model.log_likelihood[1, f])!r}\n")
    else:
        fh.write(f"bias\t{model.b!r}\n")
        for f in np.flatnonzero(model.w):
            fh.write(f"{f}\t{float(model.w[f])!r}\n")


def _num(s: str):
    return int(s) if s.lstrip("-").isdigit() else float(s)


def load_model(fh: IO[str]):
    lines = iter(fh.read().splitlines())
    magic, version = next(lines).split("\t")
    if magic != MAGIC or int(version) != VERSION:
        raise ValueError(f"not a version-{VERSION} model file")
    header: dict = {"param": {}}
    for line in lines:
        if line == "end_header":
            break
        key, *vals = line.split("\t")
        if key == "param":
            header["param"][vals[0]] = _num(vals[1])
        else:
            header[key] = vals
    alg = header["algorithm"][0]
    labels = tuple(header["labels"])
    positive = header["positive"][0]
    V = int(header["n_features"][0])
    p = header["param"]
    rows = [line.split("\t") for line in lines if line]
    if alg == "winnow":
        w_pos = np.full((2, V), INIT_POS)
        w_neg = np.full((2, V), INIT_NEG)
        touched = np.zeros((2, V), dtype=bool)
        for r in rows:
            f = int(r[0])
            w_pos[0, f], w_neg[0, f], w_pos[1, f], w_neg[1, f] = map(float, r[1:])
            touched[:, f] = True
        return WinnowModel(labels, positive, w_pos, w_neg, touched, float(p["alpha"]),
                           float(p["beta"]), float(p["theta_plus"]), float(p["theta_minus"]),
                           int(p["iterations"]), int(p["n_updates"]))
    if alg == "nb":
        prior = np.array([float(v) for v in rows[0][1:]])
        loglik = np.zeros((2, V))
        for r in rows[1:]:
            f = int(r[0])
            loglik[:, f] = [float(r[1]), float(r[2])]
        return NaiveBayesModel(labels, positive, prior, loglik, float(p["smoothing"]))
    if alg == "svm":
        b = float(rows[0][1])
        w = np.zeros(V)
        for r in rows[1:]:
            w[int(r[0])] = float(r[1])
        return SvmModel(labels, positive, w, b, float(p["C"]), float(p["tol"]),
                        int(p["iterations"]), bool(p["converged"]))
    raise ValueError(f"unknown algorithm {alg!r}")
