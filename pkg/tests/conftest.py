from pathlib import Path

import pytest

from comptrans import load_grammar_file, load_pair

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# acceptance criterion results, printed after the terminal summary
ACCEPTANCE_RESULTS: list[tuple[int, str, str, float]] = []


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def paper_grammar():
    return load_grammar_file(FIXTURES / "paper-example.cg")


@pytest.fixture(scope="session")
def identity():
    return load_pair(FIXTURES / "identity.cgp")


@pytest.fixture(scope="session")
def enfr():
    return load_pair(FIXTURES / "enfr-np.cgp")


@pytest.fixture(scope="session")
def enfr_broken():
    return load_pair(FIXTURES / "enfr-np-broken.cgp")


@pytest.fixture(scope="session")
def enfr_masc():
    return load_pair(FIXTURES / "enfr-np-masc.cgp")


@pytest.fixture(scope="session")
def enfr_homviol():
    return load_pair(FIXTURES / "enfr-np-homviol.cgp")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, outcome, elapsed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number} ({name}): {outcome} [{elapsed:.2f}s]")
