import functools

import pytest

from sset_workbench.fixtures import CORPUS_DIR, corpus, load_fixture

# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def fixture_map(name):
    return load_fixture(name)


@pytest.fixture(scope="session")
def specs():
    return corpus()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
