import pytest

from jmorph.lexicon import seed_lexicon
from jmorph.verbs import compile_grammar


@pytest.fixture(scope="session")
def lex():
    return seed_lexicon()


@pytest.fixture(scope="session")
def grammar(lex):
    return compile_grammar(lex)
