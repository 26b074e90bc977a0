from functools import lru_cache

import pytest

from permutrees import enumerate_lattice, normalize_decoration

# criterion number -> (passed, note); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@lru_cache(maxsize=None)
def lattice_of(word: str):
    delta, _ = normalize_decoration(word)
    return enumerate_lattice(delta)


def delta_of(word: str):
    return normalize_decoration(word)[0]


@pytest.fixture
def lattice():
    return lattice_of


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}")
