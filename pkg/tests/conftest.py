import pytest

from dreamcontrast.corpus import Corpus, make_document


def doc(id, text, label="dream", author=None, source="test"):
    return make_document(id, author or f"au-{id}", label, source, text)


def corpus_of(*docs):
    return Corpus(tuple(docs))


@pytest.fixture
def mkdoc():
    return doc
