"""Experiment configuration (TOML).

Every default below is the published protocol's value, so a config that
only names its corpora reproduces that protocol.
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field, fields, is_dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .classify import ALGORITHMS
from .topics import MODES


class ConfigError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass
class Sampling:
    english_threshold: float = 0.15
    dedup: bool = True
    per_author_cap: int = 100
    # "balance" downsamples every label to the smallest label's token count;
    # an integer is an explicit per-label budget; 0 disables downsampling.
    token_budget: int | str = "balance"


@dataclass
class WinnowParams:
    alpha: float = 1.05
    beta: float = 0.95
    theta_plus: float = 2.5
    theta_minus: float = 0.5
    iterations: int = 1


@dataclass
class NbParams:
    smoothing: float = 1.0


@dataclass
class SvmParams:
    C: float = 1.0
    tol: float = 1e-3


@dataclass
class Classification:
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    k_features: int = 7500
    folds: int = 10
    n_max: int = 3
    positive: str = ""  # empty: alphabetically first label
    frequency: str = "corpus"
    top_n: int = 30
    blocklist: str = ""  # empty: bundled dream-word list
    winnow: WinnowParams = field(default_factory=WinnowParams)
    nb: NbParams = field(default_factory=NbParams)
    svm: SvmParams = field(default_factory=SvmParams)


@dataclass
class Topics:
    T: int = 50
    iterations: int = 2000
    alpha: float = 0.1
    beta: float = 0.01
    threshold: float = 0.10
    filter: str = "stoplist"
    top_words: int = 10


@dataclass
class Contrast:
    label_a: str = ""  # empty: first / second label alphabetically
    label_b: str = ""
    sample_size: int = 2000
    p: float = 0.05


@dataclass
class Coherence:
    lexicon: str = ""  # empty: bundled connective list
    h: int = 2
    smoothing: float = 1.0
    n_perm: int = 20
    # "heldout": train on a seeded half of each corpus and test on the other
    # half; a label name: train on that whole corpus and test every corpus.
    train_on: str = "heldout"


@dataclass
class ExperimentConfig:
    corpora: dict = field(default_factory=dict)  # label -> JSONL path
    seed: int = 0
    out: str = "out"
    sampling: Sampling = field(default_factory=Sampling)
    classification: Classification = field(default_factory=Classification)
    topics: Topics = field(default_factory=Topics)
    contrast: Contrast = field(default_factory=Contrast)
    coherence: Coherence = field(default_factory=Coherence)
    base_dir: str = field(default=".", compare=False)

    def path(self, p: str) -> Path:
        q = Path(p)
        return q if q.is_absolute() else Path(self.base_dir) / q

    def digest(self) -> str:
        d = asdict(self)
        d.pop("base_dir")
        d.pop("out")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]


def _build(cls, data: dict, where: str, problems: list[str]):
    kwargs = {}
    known = {f.name: f for f in fields(cls)}
    for key, value in data.items():
        if key not in known or key == "base_dir":
            problems.append(f"unknown key {where}{key}")
            continue
        default = known[key].default_factory() if callable(known[key].default_factory) else None
        if is_dataclass(default):
            if not isinstance(value, dict):
                problems.append(f"{where}{key} must be a table")
                continue
            kwargs[key] = _build(type(default), value, f"{where}{key}.", problems)
        else:
            kwargs[key] = value
    return cls(**kwargs)


def config_from_dict(data: dict, base_dir: str | Path = ".") -> ExperimentConfig:
    problems: list[str] = []
    cfg = _build(ExperimentConfig, data, "", problems)
    cfg.base_dir = str(base_dir)
    if problems:
        raise ConfigError(problems)
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError([f"config file not found: {path}"]) from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"config file {path} is not valid TOML: {exc}"]) from None
    return config_from_dict(data, path.parent)


def _check_number(problems, name, value, kind, lo=None, hi=None, lo_open=False):
    if isinstance(value, bool) or not isinstance(value, kind):
        problems.append(f"{name} must be a {'integer' if kind is int else 'number'}, got {value!r}")
        return
    if lo is not None and (value <= lo if lo_open else value < lo):
        problems.append(f"{name} must be {'>' if lo_open else '>='} {lo}, got {value}")
    if hi is not None and value > hi:
        problems.append(f"{name} must be <= {hi}, got {value}")


def static_violations(cfg: ExperimentConfig) -> list[str]:
    """Checks that need no file access."""
    p: list[str] = []
    num = (int, float)
    _check_number(p, "seed", cfg.seed, int, 0)
    if not isinstance(cfg.corpora, dict) or len(cfg.corpora) != 2:
        p.append("corpora must map exactly two labels to JSONL paths")
    s = cfg.sampling
    _check_number(p, "sampling.english_threshold", s.english_threshold, num, 0, 1)
    _check_number(p, "sampling.per_author_cap", s.per_author_cap, int, 1)
    if s.token_budget != "balance":
        _check_number(p, "sampling.token_budget", s.token_budget, int, 0)
    c = cfg.classification
    bad = [a for a in c.algorithms if a not in ALGORITHMS]
    if bad or not c.algorithms:
        p.append(f"classification.algorithms must be a non-empty subset of {list(ALGORITHMS)}")
    _check_number(p, "classification.k_features", c.k_features, int, 1)
    _check_number(p, "classification.folds", c.folds, int, 2)
    _check_number(p, "classification.n_max", c.n_max, int, 1)
    _check_number(p, "classification.top_n", c.top_n, int, 1)
    if c.frequency not in ("corpus", "document"):
        p.append("classification.frequency must be 'corpus' or 'document'")
    if c.positive and isinstance(cfg.corpora, dict) and c.positive not in cfg.corpora:
        p.append(f"classification.positive {c.positive!r} is not a corpus label")
    _check_number(p, "classification.winnow.alpha", c.winnow.alpha, num, 1, lo_open=True)
    _check_number(p, "classification.winnow.beta", c.winnow.beta, num, 0, 1, lo_open=True)
    _check_number(p, "classification.winnow.iterations", c.winnow.iterations, int, 1)
    _check_number(p, "classification.nb.smoothing", c.nb.smoothing, num, 0)
    _check_number(p, "classification.svm.C", c.svm.C, num, 0, lo_open=True)
    _check_number(p, "classification.svm.tol", c.svm.tol, num, 0, lo_open=True)
    t = cfg.topics
    _check_number(p, "topics.T", t.T, int, 1)
    _check_number(p, "topics.iterations", t.iterations, int, 0)
    _check_number(p, "topics.alpha", t.alpha, num, 0, lo_open=True)
    _check_number(p, "topics.beta", t.beta, num, 0, lo_open=True)
    _check_number(p, "topics.threshold", t.threshold, num, 0, 1)
    _check_number(p, "topics.top_words", t.top_words, int, 1)
    if t.filter not in MODES:
        p.append(f"topics.filter must be one of {list(MODES)}")
    k = cfg.contrast
    _check_number(p, "contrast.sample_size", k.sample_size, int, 1)
    _check_number(p, "contrast.p", k.p, num, 0, 1, lo_open=True)
    for lab in (k.label_a, k.label_b):
        if lab and isinstance(cfg.corpora, dict) and lab not in cfg.corpora:
            p.append(f"contrast label {lab!r} is not a corpus label")
    if k.label_a and k.label_a == k.label_b:
        p.append("contrast.label_a and contrast.label_b must differ")
    h = cfg.coherence
    _check_number(p, "coherence.h", h.h, int, 1)
    _check_number(p, "coherence.smoothing", h.smoothing, num, 0, lo_open=True)
    _check_number(p, "coherence.n_perm", h.n_perm, int, 1)
    if h.train_on != "heldout" and isinstance(cfg.corpora, dict) and h.train_on not in cfg.corpora:
        p.append("coherence.train_on must be 'heldout' or a corpus label")
    for name, value in (("classification.blocklist", c.blocklist), ("coherence.lexicon", h.lexicon)):
        if value and not cfg.path(value).is_file():
            p.append(f"{name} file not found: {cfg.path(value)}")
    if isinstance(cfg.corpora, dict):
        for label, path in cfg.corpora.items():
            if not isinstance(path, str) or not cfg.path(path).is_file():
                p.append(f"corpus file for {label!r} not found: {cfg.path(str(path))}")
    return p
