import pytest

from support import BAD, CORPUS, build


@pytest.fixture(scope="session")
def corpus():
    return build(CORPUS)


@pytest.fixture(scope="session")
def bad():
    return build(CORPUS, BAD)


@pytest.fixture(scope="session")
def g(corpus):
    return corpus.graph
