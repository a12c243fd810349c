import sys

import pytest

from helpers import GOLDEN_VOCAB
from morphpara.morphology import LEMMATIZER, STEMMER, MorphAnalyzer


@pytest.fixture(scope="session")
def analyzer():
    return MorphAnalyzer.with_vocab(GOLDEN_VOCAB, (LEMMATIZER, STEMMER))


@pytest.fixture(scope="session")
def lemmatizer_cfg():
    return LEMMATIZER.with_vocab(GOLDEN_VOCAB)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        passed, detail = results[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if passed else 'FAIL'}  {detail}")
