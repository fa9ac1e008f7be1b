"""End-to-end experiment stages driven by an :class:`ExperimentConfig`."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import _rng
from .classify import cross_validate_many, make_author_folds, top_features, train_winnow
from .coherence import build_entity_grid, evaluate_corpus, load_lexicon, count_markers, train_egrid
from .config import ConfigError, ExperimentConfig, static_violations
from .corpus import (Corpus, cap_per_author, corpus_stats, dedup_exact, downsample_to_tokens,
                     filter_english, read_jsonl, write_jsonl)
from .features import load_blocklist, ngram_str, select_top_k, vectorize
from .reports import write_report
from .topics import (annotate_all, content_filter, contrast_samples, fit_lda, save_topic_model,
                     top_words)

log = logging.getLogger(__name__)

STAGES = ("stats", "classify", "topics", "contrast", "markers", "egrid")
REPORTS = {
    "stats": "stats.tsv",
    "classify": "classification.tsv",
    "topics": "topics.tsv",
    "contrast": "contrast.tsv",
    "markers": "markers.tsv",
    "egrid": "egrid.tsv",
}


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


def _ingest(cfg: ExperimentConfig):
    return {label: read_jsonl(cfg.path(path)) for label, path in sorted(cfg.corpora.items())}


def validate(cfg: ExperimentConfig) -> list[str]:
    """Every configuration problem that would make a run fail; empty if none."""
    problems = static_violations(cfg)
    if problems:
        return problems
    authors: set[str] = set()
    for label, res in _ingest(cfg).items():
        wrong = sum(1 for d in res.corpus if d.label != label)
        if wrong:
            problems.append(f"corpus {label!r}: {wrong} record(s) carry a different label")
        if len(res.corpus) == 0:
            problems.append(f"corpus {label!r} has no usable records")
        authors |= {d.author_id for d in res.corpus}
    if len(authors) < cfg.classification.folds:
        problems.append(f"classification.folds = {cfg.classification.folds} exceeds the number of "
                        f"authors ({len(authors)})")
    return problems


def prepare(cfg: ExperimentConfig, raw: dict[str, Corpus]) -> tuple[dict[str, Corpus], list[str]]:
    """Language filter, de-duplication, per-author cap, token balancing."""
    s = cfg.sampling
    notes = []
    out = {}
    for label, corpus in raw.items():
        c, dropped = filter_english(corpus, s.english_threshold)
        notes.append(f"{label}: {dropped} document(s) failed the language filter")
        if s.dedup:
            c, dups = dedup_exact(c)
            notes.append(f"{label}: {dups} duplicate(s) removed")
        out[label] = cap_per_author(c, s.per_author_cap, cfg.seed)
    budget = s.token_budget
    if budget == "balance":
        budget = min(c.total_tokens for c in out.values())
    if budget:
        out = {label: downsample_to_tokens(c, budget, cfg.seed) if c.total_tokens > budget else c
               for label, c in out.items()}
        notes.append(f"token budget per label: {budget}")
    return out, notes


@dataclass
class Experiment:
    cfg: ExperimentConfig
    out: Path
    corpora: dict[str, Corpus] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    _combined: Corpus | None = None
    _topic_model: object = None

    @classmethod
    def load(cls, cfg: ExperimentConfig, out: str | Path | None = None) -> "Experiment":
        raw = {label: res.corpus for label, res in _ingest(cfg).items()}
        corpora, notes = prepare(cfg, raw)
        return cls(cfg, Path(out if out is not None else cfg.path(cfg.out)), corpora, notes)

    @property
    def labels(self) -> list[str]:
        return sorted(self.corpora)

    @property
    def combined(self) -> Corpus:
        """All labels merged, in one seeded random order (the training order)."""
        if self._combined is None:
            docs = [d for label in self.labels for d in self.corpora[label]]
            self._combined = Corpus(tuple(_rng.shuffled(docs, _rng.make_rng(self.cfg.seed, 1))))
        return self._combined

    def header(self, stage: str, **extra) -> dict:
        h = {"stage": stage, "config": self.cfg.digest(), "seed": self.cfg.seed}
        h.update(extra)
        return h

    # ------------------------------------------------------------- stages

    def stage_ingest(self) -> Path:
        path = self.out / "corpus.jsonl"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for label in self.labels:
                write_jsonl(self.corpora[label], fh)
        return path

    def stage_stats(self) -> Path:
        rows = []
        for label in self.labels:
            st = corpus_stats(self.corpora[label])
            rows.append((label, st.doc_count, st.total_tokens, st.mean_doc_len, st.pop_stddev_doc_len))
        return write_report(self.out / REPORTS["stats"], self.header("stats"),
                            ("label", "doc_count", "total_tokens", "mean_len", "pop_stddev"), rows)

    def stage_classify(self) -> Path:
        c = self.cfg.classification
        corpus = self.combined
        blocklist = load_blocklist(self.cfg.path(c.blocklist) if c.blocklist else None)
        positive = c.positive or self.labels[0]
        plan = make_author_folds(corpus, c.folds, self.cfg.seed)
        params = {"winnow": vars(c.winnow), "nb": vars(c.nb), "svm": vars(c.svm)}
        reports = cross_validate_many(corpus, c.algorithms, plan, k_features=c.k_features,
                                      n_max=c.n_max, blocklist=blocklist, positive=positive,
                                      frequency=c.frequency, params=params)
        rows = [(alg, r.precision, r.recall, r.f1, r.tpr, r.fpr, r.auc, r.n_correct)
                for alg, r in reports.items()]
        skipped = sorted({f for r in reports.values() for f in r.skipped_folds})
        path = write_report(
            self.out / REPORTS["classify"],
            self.header("classify", positive=positive, folds=c.folds, k_features=c.k_features,
                        documents=len(corpus), skipped_folds=skipped or "none"),
            ("algorithm", "precision", "recall", "f1", "tpr", "fpr", "auc", "n_correct"), rows)
        vocab = select_top_k(corpus, c.k_features, c.n_max, blocklist, c.frequency)
        train = [(vectorize(d, vocab), d.label) for d in corpus]
        model = train_winnow(train, n_features=len(vocab), positive=positive, **vars(c.winnow))
        top = top_features(model, c.top_n, vocab)
        write_report(self.out / "top_features.tsv", self.header("classify", model="winnow"),
                     ("class", "rank", "ngram", "net_weight"),
                     [(label, rank, g, w) for label in model.labels for rank, g, w in top[label]])
        return path

    def topic_model(self):
        if self._topic_model is None:
            t = self.cfg.topics
            docs = {d.id: content_filter(d, t.filter) for d in self.combined}
            self._topic_model = fit_lda(docs, t.T, t.iterations, t.alpha, t.beta, self.cfg.seed)
        return self._topic_model

    def stage_topics(self) -> Path:
        t = self.cfg.topics
        model = self.topic_model()
        phi = model.phi()
        rows = []
        for k in range(model.T):
            for rank, w in enumerate(top_words(model, k, t.top_words), start=1):
                rows.append((k, rank, w, float(phi[k, model.vocab.index(w)])))
        hdr = self.header("topics", filter=t.filter, T=t.T, iterations=t.iterations,
                          alpha=t.alpha, beta=t.beta)
        path = write_report(self.out / REPORTS["topics"], hdr, ("topic_id", "rank", "word", "phi"), rows)
        theta = model.theta()
        ann = annotate_all(model, t.threshold)
        arows = [(d, k, float(theta[i, k])) for i, d in enumerate(model.doc_ids)
                 for k in ann[d].topics]
        write_report(self.out / "annotations.tsv", dict(hdr, threshold=t.threshold),
                     ("doc_id", "topic_id", "theta"), arows)
        with open(self.out / "topic_model.json", "w", encoding="utf-8") as fh:
            save_topic_model(model, fh)
        return path

    def stage_contrast(self) -> Path:
        k = self.cfg.contrast
        t = self.cfg.topics
        label_a = k.label_a or self.labels[0]
        label_b = k.label_b or next(lab for lab in self.labels if lab != label_a)
        model = self.topic_model()
        ann = annotate_all(model, t.threshold)
        rng = _rng.make_rng(self.cfg.seed, 2)

        def sample(label):
            ids = [d.id for d in self.corpora[label]]
            return _rng.shuffled(ids, rng)[:min(k.sample_size, len(ids))]

        a, b = sample(label_a), sample(label_b)
        results = contrast_samples(ann, a, b, model.T, k.p)
        rows = [(r.topic, r.count_a, r.count_b, r.n_a, r.n_b, r.G, r.significant,
                 {"a": label_a, "b": label_b}.get(r.direction, "none"),
                 "_".join(top_words(model, r.topic, t.top_words))) for r in results]
        n_sig = sum(r.significant for r in results)
        return write_report(
            self.out / REPORTS["contrast"],
            self.header("contrast", sample_a=label_a, sample_b=label_b, p=k.p, filter=t.filter,
                        threshold=t.threshold, significant_topics=f"{n_sig}/{model.T}"),
            ("topic_id", "count_a", "count_b", "n_a", "n_b", "G", "significant", "direction",
             "top_words"), rows)

    def stage_markers(self) -> Path:
        h = self.cfg.coherence
        lexicon = load_lexicon(self.cfg.path(h.lexicon) if h.lexicon else None)
        rows = []
        for label in self.labels:
            prof = count_markers(self.corpora[label], lexicon, label)
            for conn in lexicon.connectives:
                rows.append((label, " ".join(conn), prof.counts[conn], prof.rate_per_10k(conn)))
        top = ",".join(" ".join(c) for c in lexicon.connectives if c in lexicon.top)
        return write_report(self.out / REPORTS["markers"],
                            self.header("markers", lexicon_size=len(lexicon), top=top),
                            ("corpus", "connective", "count", "rate_per_10k"), rows)

    def stage_egrid(self) -> Path:
        h = self.cfg.coherence
        rows = []
        for pos, label in enumerate(self.labels):
            docs = list(self.corpora[label].documents)
            if h.train_on == "heldout":
                order = _rng.permutation(len(docs), _rng.make_rng(self.cfg.seed, 3, pos))
                half = len(docs) // 2
                train = [docs[i] for i in order[:half]]
                test = [docs[i] for i in order[half:]]
            else:
                train = list(self.corpora[h.train_on].documents)
                test = docs
            model = train_egrid((build_entity_grid(d) for d in train), h.h, h.smoothing)
            rep, _ = evaluate_corpus(model, test, h.n_perm, self.cfg.seed)
            rows.append((label, rep.docs, rep.pairs, rep.wins, rep.ties, rep.losses,
                         rep.accuracy, rep.f_score))
        return write_report(self.out / REPORTS["egrid"],
                            self.header("egrid", h=h.h, smoothing=h.smoothing, n_perm=h.n_perm,
                                        train_on=h.train_on),
                            ("corpus", "docs", "pairs", "wins", "ties", "losses", "accuracy",
                             "f_score"), rows)


def run(cfg: ExperimentConfig, stages: Iterable[str], out: str | Path | None = None) -> list[Path]:
    """Run ``stages`` in pipeline order; raises ConfigError or StageError."""
    stages = set(stages)
    unknown = stages - set(STAGES) - {"ingest"}
    if unknown:
        raise ConfigError([f"unknown stage(s): {', '.join(sorted(unknown))}"])
    problems = validate(cfg)
    if problems:
        raise ConfigError(problems)
    exp = Experiment.load(cfg, out)
    written = []
    for stage in ("ingest",) + STAGES:
        if stage not in stages:
            continue
        try:
            written.append(getattr(exp, f"stage_{stage}")())
        except Exception as exc:
            raise StageError(stage, exc) from exc
        log.info("stage %s done", stage)
    return written
