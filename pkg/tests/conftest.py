from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from fpverify.pipeline import Context, Manifest, bundled_manifest_path
from fpverify.presentation import WordTable, parse_presentation, read_word_file

DATA = Path(str(resources.files("fpverify") / "data"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def gamma_bar():
    return parse_presentation((DATA / "gamma_bar.fp").read_text())


@pytest.fixture(scope="session")
def lattice_words(gamma_bar):
    table = WordTable(gamma_bar)
    pi = read_word_file((DATA / "pi.words").read_text(), table)
    sigma = read_word_file((DATA / "sigma.words").read_text(), table)
    return pi, sigma


@pytest.fixture(scope="session")
def lattice():
    """Shared pipeline context over the bundled data; caches tables."""
    return Context(Manifest.load(bundled_manifest_path()))


@pytest.fixture
def data_copy(tmp_path) -> Path:
    """A writable copy of the bundled data directory."""
    for f in DATA.iterdir():
        if f.is_file():
            (tmp_path / f.name).write_bytes(f.read_bytes())
    return tmp_path


@pytest.fixture(scope="session")
def bundled_report():
    from fpverify.pipeline import run_manifest
    return run_manifest(Manifest.load(bundled_manifest_path()))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
