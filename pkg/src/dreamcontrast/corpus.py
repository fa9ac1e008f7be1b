"""Ingestion, cleaning and sampling of labelled narrative collections.

A :class:`Document` is one narrative (a dream report, a diary post, ...)
stored as lowercased token lists, one per sentence.  Every corpus-level
operation returns a new :class:`Corpus` whose documents are a subset, in
input order, of the documents it was given.
"""

from __future__ import annotations

import json
import logging
import math
import re
import string
from collections import defaultdict
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Sequence

from . import _rng
from ._data import bundled_wordset

log = logging.getLogger(__name__)

EMOTICONS = (":)", ":(", ":d", ";)", ":p")
_MULTI_PUNCT = ("...", "``", "''", "--", "…")
_PUNCT = set(string.punctuation) | set("“”‘’…«»–—")
_DECIMAL = re.compile(r"^\d+[.,]\d+$")
_SENTENCE_END = re.compile(r"(?<=[.?!])\s+")
REQUIRED_FIELDS = ("id", "author", "label", "source", "text")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Document:
    id: str
    author_id: str
    label: str
    source: str
    raw_text: str
    sentences: tuple[tuple[str, ...], ...]

    @property
    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    @property
    def tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...] = ()

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(d.label for d in self.documents)

    @property
    def total_tokens(self) -> int:
        return sum(d.token_count for d in self.documents)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def with_label(self, label: str) -> "Corpus":
        return Corpus(tuple(d for d in self.documents if d.label == label))

    def subset(self, keep: Iterable[str]) -> "Corpus":
        keep = set(keep)
        return Corpus(tuple(d for d in self.documents if d.id in keep))

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus(self.documents + other.documents)


@dataclass(frozen=True)
class CorpusStats:
    doc_count: int
    total_tokens: int
    mean_doc_len: float
    pop_stddev_doc_len: float


@dataclass(frozen=True)
class RecordError:
    line: int
    message: str
    kind: str = "schema"

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


@dataclass
class IngestResult:
    corpus: Corpus
    errors: list[RecordError] = field(default_factory=list)


# ---------------------------------------------------------------- tokenizing


def _split_chunk(chunk: str) -> list[str]:
    if chunk in EMOTICONS or _DECIMAL.match(chunk):
        return [chunk]
    lead: list[str] = []
    trail: list[str] = []
    while chunk:
        if chunk in EMOTICONS:
            break
        unit = next((m for m in _MULTI_PUNCT if chunk.startswith(m)), None)
        if unit is None and chunk[0] in _PUNCT:
            unit = chunk[0]
        if unit is None:
            break
        if unit == "..." or unit == "…":
            run = len(chunk) - len(chunk.lstrip(".…"))
            unit = chunk[:run]
        lead.append(unit)
        chunk = chunk[len(unit):]
    while chunk:
        emo = next((e for e in EMOTICONS if chunk.endswith(e)), None)
        if emo is not None:
            if len(chunk) > len(emo):
                trail.append(emo)
                chunk = chunk[: -len(emo)]
                continue
            break
        unit = next((m for m in _MULTI_PUNCT if chunk.endswith(m)), None)
        if unit is None and chunk[-1] in _PUNCT:
            unit = chunk[-1]
        if unit is None:
            break
        if unit in (".", "...", "…") and chunk.endswith(".."):
            run = len(chunk) - len(chunk.rstrip(".…"))
            unit = chunk[-run:]
        if _DECIMAL.match(chunk):
            break
        trail.append(unit)
        chunk = chunk[: -len(unit)]
    out = lead
    if chunk:
        out.append(chunk)
    out.extend(reversed(trail))
    return out


def tokenize(text: str) -> list[str]:
    """Lowercase, whitespace-split tokens with edge punctuation detached.

    Emoticons from :data:`EMOTICONS`, dot runs ("...") and decimal numbers
    survive as single tokens; word-internal punctuation (``it's``,
    ``e-mail``) is left alone.

    >>> tokenize("I was late :)")
    ['i', 'was', 'late', ':)']
    """
    tokens: list[str] = []
    for chunk in text.lower().split():
        tokens.extend(_split_chunk(chunk))
    return tokens


def split_sentences(text: str) -> list[str]:
    """Newline-separated sentences; falls back to ``[.?!]`` + whitespace."""
    if "\n" in text:
        parts = text.split("\n")
    else:
        parts = _SENTENCE_END.split(text)
    return [p for p in parts if p.strip()]


def make_document(id: str, author: str, label: str, source: str, text: str) -> Document:
    sentences = tuple(tuple(toks) for toks in map(tokenize, split_sentences(text)) if toks)
    return Document(str(id), str(author), str(label), str(source), text, sentences)


# ----------------------------------------------------------------- ingestion


def ingest_jsonl(stream: Iterable[str] | IO[str], strict: bool = False) -> IngestResult:
    """Parse line-delimited JSON records into a :class:`Corpus`.

    Bad lines are collected in ``IngestResult.errors`` (1-based line
    numbers) instead of being dropped silently; with ``strict=True`` the
    first one is raised as :class:`CorpusError`.  A record whose id was
    already seen is rejected and logged as a warning.
    """
    docs: list[Document] = []
    errors: list[RecordError] = []
    seen: set[str] = set()

    def fail(err: RecordError):
        if strict:
            raise CorpusError(str(err))
        errors.append(err)

    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            fail(RecordError(lineno, f"malformed JSON: {exc.msg}", "parse"))
            continue
        if not isinstance(rec, dict):
            fail(RecordError(lineno, "record is not a JSON object", "parse"))
            continue
        missing = [f for f in REQUIRED_FIELDS if f not in rec]
        if missing:
            fail(RecordError(lineno, f"missing field(s): {', '.join(missing)}"))
            continue
        bad = [f for f in REQUIRED_FIELDS if not isinstance(rec[f], str)]
        if bad:
            fail(RecordError(lineno, f"field(s) must be strings: {', '.join(bad)}"))
            continue
        if rec["id"] in seen:
            log.warning("line %d: duplicate id %r rejected", lineno, rec["id"])
            fail(RecordError(lineno, f"duplicate id {rec['id']!r}", "duplicate"))
            continue
        doc = make_document(rec["id"], rec["author"], rec["label"], rec["source"], rec["text"])
        if not doc.sentences:
            fail(RecordError(lineno, "text contains no tokens", "empty"))
            continue
        seen.add(doc.id)
        docs.append(doc)
    return IngestResult(Corpus(tuple(docs)), errors)


def read_jsonl(path, strict: bool = False) -> IngestResult:
    with open(path, encoding="utf-8") as fh:
        return ingest_jsonl(fh, strict=strict)


def to_records(corpus: Corpus) -> Iterator[dict]:
    for d in corpus:
        yield {"id": d.id, "author": d.author_id, "label": d.label,
               "source": d.source, "text": d.raw_text}


def write_jsonl(corpus: Corpus, fh: IO[str]) -> None:
    for rec in to_records(corpus):
        fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


# ------------------------------------------------------------------ cleaning


def stopword_ratio(doc: Document, stopwords: frozenset[str]) -> float:
    toks = doc.tokens
    if not toks:
        return 0.0
    return sum(t in stopwords for t in toks) / len(toks)


def filter_english(corpus: Corpus, threshold: float = 0.15,
                   stopwords: frozenset[str] | None = None) -> tuple[Corpus, int]:
    """Keep documents whose share of English stopword tokens is >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    if stopwords is None:
        stopwords = bundled_wordset("english_stopwords.txt")
    kept = []
    for doc in corpus:
        if doc.token_count == 0:
            log.warning("document %s has no tokens; removed", doc.id)
            continue
        if stopword_ratio(doc, stopwords) >= threshold:
            kept.append(doc)
    return Corpus(tuple(kept)), len(corpus) - len(kept)


def dedup_exact(corpus: Corpus) -> tuple[Corpus, int]:
    """Drop later documents whose token sequence repeats an earlier one."""
    seen = set()
    kept = []
    for doc in corpus:
        key = doc.sentences
        if key in seen:
            continue
        seen.add(key)
        kept.append(doc)
    return Corpus(tuple(kept)), len(corpus) - len(kept)


# ------------------------------------------------------------------ sampling


def cap_per_author(corpus: Corpus, n: int, seed: int) -> Corpus:
    """At most ``n`` documents per author, chosen uniformly at random.

    Authors are visited in sorted order and only those above the cap draw
    from the generator, so the result depends on (corpus, n, seed) alone.
    """
    if n < 1:
        raise ValueError(f"per-author cap must be >= 1, got {n}")
    by_author: dict[str, list[int]] = defaultdict(list)
    for i, doc in enumerate(corpus.documents):
        by_author[doc.author_id].append(i)
    rng = _rng.make_rng(seed)
    keep: set[int] = set()
    for author in sorted(by_author):
        idx = by_author[author]
        if len(idx) <= n:
            keep.update(idx)
        else:
            keep.update(_rng.shuffled(idx, rng)[:n])
    return Corpus(tuple(d for i, d in enumerate(corpus.documents) if i in keep))


def greedy_fill(sizes: Sequence[int], budget: int) -> list[int]:
    """Positions of the longest prefix of ``sizes`` whose sum fits ``budget``."""
    taken, total = [], 0
    for pos, size in enumerate(sizes):
        if total + size > budget:
            break
        total += size
        taken.append(pos)
    return taken


def downsample_to_tokens(corpus: Corpus, budget: int, seed: int) -> Corpus:
    """Whole documents in seeded random order until the next would overflow.

    The surviving documents keep their original relative order.
    """
    if budget < 1:
        raise ValueError(f"token budget must be >= 1, got {budget}")
    order = _rng.permutation(len(corpus), _rng.make_rng(seed))
    sizes = [corpus.documents[i].token_count for i in order]
    chosen = {order[p] for p in greedy_fill(sizes, budget)}
    if corpus.documents and not chosen:
        log.warning("token budget %d admits no document; result is empty", budget)
    return Corpus(tuple(d for i, d in enumerate(corpus.documents) if i in chosen))


# --------------------------------------------------------------- statistics


def corpus_stats(corpus: Corpus) -> CorpusStats:
    lengths = [d.token_count for d in corpus]
    n = len(lengths)
    if n == 0:
        return CorpusStats(0, 0, 0.0, 0.0)
    mean = math.fsum(lengths) / n
    var = math.fsum((x - mean) ** 2 for x in lengths) / n
    return CorpusStats(n, sum(lengths), mean, math.sqrt(var))


def stats_rows(corpus: Corpus) -> list[tuple[str, CorpusStats]]:
    """Per-label statistics in label order, for the stats report."""
    return [(label, corpus_stats(corpus.with_label(label))) for label in sorted(corpus.labels)]
