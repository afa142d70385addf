import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blrings.harness import CorpusSpec, ProfileCache, SuiteConfig, generate_corpus, run_theorem_suite  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def default_corpus():
    return generate_corpus(CorpusSpec())


@pytest.fixture(scope="session")
def profile_cache():
    return ProfileCache()


@pytest.fixture(scope="session")
def default_runs(default_corpus, profile_cache):
    runs = run_theorem_suite(default_corpus, config=SuiteConfig(threads=4), cache=profile_cache)
    return {r.prop: r for r in runs}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":").rstrip("b"))):
            terminalreporter.write_line(line)
