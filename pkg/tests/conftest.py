import sys
from pathlib import Path

import pytest

from emlex.corpus import load_document, tokenize
from emlex.lexicon import bundled, merge

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def base():
    return bundled("base")


@pytest.fixture(scope="session")
def overlay():
    return bundled("xvii")


@pytest.fixture(scope="session")
def contractions():
    return bundled("contractions")


@pytest.fixture(scope="session")
def lex(base, overlay, contractions):
    """Base + overlay + contractions, as the cascade sees them."""
    return merge(merge(base, overlay), contractions)


@pytest.fixture(scope="session")
def excerpt():
    return load_document(FIXTURES / "proposal_excerpt.txt")


@pytest.fixture(scope="session")
def excerpt_tokens(excerpt, contractions):
    return tokenize(excerpt, contractions)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
