import pathlib

import pytest

from tagmend.corpus import Taxonomy

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def taxonomy() -> Taxonomy:
    return Taxonomy.default()


@pytest.fixture(scope="session")
def sample_corpus_path() -> pathlib.Path:
    return FIXTURES / "sample.corpus"


@pytest.fixture(scope="session")
def malformed_corpus_path() -> pathlib.Path:
    return FIXTURES / "malformed.corpus"
