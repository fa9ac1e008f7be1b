"""Generators for corpora with known, planted structure.

Used by the test-suite and to produce the small bundled demo corpora in
``data/synthetic``.  Each generator is deterministic in its seed.
"""

from __future__ import annotations

import numpy as np

from . import _rng
from .corpus import Corpus, make_document

UNCERTAINTY = ("somebody", "someone", "somehow", "somewhere", "apparently", "seemed",
               "suddenly", "maybe", "unclear", "strange")
DATES = ("today", "yesterday", "tonight", "tomorrow", "monday", "friday", "weekend",
         "january", "2015", "o'clock")
FILLER = ("i", "we", "the", "a", "was", "went", "to", "with", "my", "friend", "house", "car",
          "saw", "had", "some", "food", "it", "in", "at", "on", "school", "work", "walked",
          "talked", "about", "of", "big", "little", "back", "out", "home", "door", "then",
          "there", "people", "room", "water", "dog", "but", "when", "after", "so")
NAMES = ("anna", "bruno", "carla", "dmitri", "elena", "farid", "greta", "hugo", "ines",
         "jonas", "kira", "lars", "mona", "nils", "olga", "pavel")
OBJECTS = ("lamp", "door", "letter", "window", "table", "bicycle", "garden", "box", "kettle",
           "ladder", "bottle", "coat", "piano", "blanket", "basket", "mirror", "ticket", "shelf",
           "candle", "bucket", "clock", "carpet", "bench", "jacket", "pillow", "rope", "spoon",
           "wallet", "tray", "map", "hammer", "violin", "ball", "book", "cup", "key", "hat",
           "boat", "fence", "stove")
VERBS = ("saw", "found", "took", "opened", "carried", "fixed", "painted", "moved", "grabbed",
         "cleaned", "pushed", "pulled", "dropped", "watched", "touched", "checked", "held",
         "lifted", "kicked", "washed")


def planted_genre_corpus(n_per_genre: int = 400, n_authors: int = 20, seed: int = 0,
                         labels: tuple[str, str] = ("dream", "story")) -> Corpus:
    """Two genres sharing filler text; genre 0 carries uncertainty words, genre 1 dates."""
    rng = _rng.make_rng(seed)
    markers = {labels[0]: UNCERTAINTY, labels[1]: DATES}
    docs = []
    for label in labels:
        for i in range(n_per_genre):
            author = f"{label}-a{i % n_authors:02d}"
            sents = []
            for _ in range(int(rng.integers(3, 6))):
                words = [FILLER[int(k)] for k in rng.integers(0, len(FILLER), int(rng.integers(5, 10)))]
                if rng.random() < 0.8:
                    pos = int(rng.integers(0, len(words) + 1))
                    words.insert(pos, markers[label][int(rng.integers(0, 10))])
                sents.append(" ".join(words) + " .")
            docs.append(make_document(f"{label}-{i:04d}", author, label, "synthetic", "\n".join(sents)))
    order = _rng.permutation(len(docs), rng)
    return Corpus(tuple(docs[i] for i in order))


def planted_topic_corpus(n_docs: int = 300, n_tokens: int = 50, n_topics: int = 3,
                         words_per_topic: int = 20, concentration: float = 0.2,
                         decay: float = 0.8, seed: int = 0) -> tuple[dict, list[list[str]]]:
    """Documents drawn from topics over disjoint vocabularies.

    Within a topic, word ``r`` has weight ``decay**r``, so each topic has a
    well-defined top-10.  Returns ``(doc_id -> tokens, true top words per
    topic ordered by weight)``.
    """
    rng = _rng.make_rng(seed)
    vocabs = [[f"t{k}w{r:02d}" for r in range(words_per_topic)] for k in range(n_topics)]
    weights = decay ** np.arange(words_per_topic)
    weights /= weights.sum()
    docs = {}
    for d in range(n_docs):
        theta = rng.dirichlet([concentration] * n_topics)
        topics = rng.choice(n_topics, size=n_tokens, p=theta)
        docs[f"doc{d:04d}"] = [vocabs[k][int(rng.choice(words_per_topic, p=weights))] for k in topics]
    return docs, vocabs


def coherent_text(rng: np.random.Generator, n_sentences: int = 8) -> str:
    """Sentences in subject chains: each run keeps one subject, and the
    next run's subject is introduced as the last object of the previous one.
    """
    names = _rng.shuffled(NAMES, rng)
    sents = []
    run = 0
    while len(sents) < n_sentences:
        length = min(int(rng.integers(2, 5)), n_sentences - len(sents))
        subj = names[run]
        for k in range(length):
            verb = VERBS[int(rng.integers(0, len(VERBS)))]
            if k == length - 1 and len(sents) + 1 < n_sentences:
                obj = names[run + 1]
                sents.append(f"{subj} {verb} {obj} .")
            else:
                obj = OBJECTS[int(rng.integers(0, len(OBJECTS)))]
                sents.append(f"{subj} {verb} the {obj} .")
        run += 1
    return "\n".join(sents)


def coherent_corpus(n_docs: int = 100, n_sentences: int = 8, seed: int = 0,
                    label: str = "story", scrambled: bool = False) -> Corpus:
    rng = _rng.make_rng(seed)
    docs = []
    for i in range(n_docs):
        text = coherent_text(rng, n_sentences)
        if scrambled:
            lines = text.split("\n")
            text = "\n".join(_rng.shuffled(lines, rng))
        docs.append(make_document(f"{label}-c{i:04d}", f"{label}-a{i % 20:02d}", label,
                                  "synthetic", text))
    return Corpus(tuple(docs))


def demo_records(label: str, n_docs: int = 120, n_authors: int = 12, seed: int = 0,
                 coherent: bool = True) -> list[dict]:
    """JSONL-ready records for the bundled demo corpora.

    Each text is an entity-chain narrative (scrambled when ``coherent`` is
    false) followed by a sentence carrying genre-specific words and a
    connective.
    """
    rng = _rng.make_rng(seed)
    markers = UNCERTAINTY if label == "dream" else DATES
    links = ("then", "but", "when", "after", "because", "so", "while", "although")
    recs = []
    for i in range(n_docs):
        lines = coherent_text(rng, int(rng.integers(5, 9))).split("\n")
        if not coherent:
            lines = _rng.shuffled(lines, rng)
        extra = [markers[int(k)] for k in rng.integers(0, len(markers), 2)]
        link = links[int(rng.integers(0, len(links)))]
        filler = [FILLER[int(k)] for k in rng.integers(0, len(FILLER), 6)]
        lines.append(" ".join([link, extra[0]] + filler[:3] + [extra[1]] + filler[3:]) + " .")
        recs.append({"id": f"{label}-{i:04d}", "author": f"{label}-author{i % n_authors:02d}",
                     "label": label, "source": "synthetic", "text": "\n".join(lines)})
    return recs
