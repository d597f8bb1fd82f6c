from __future__ import annotations

import random

import pytest

from dquant.checks import DEFAULT_SEED

_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def criterion():
    """Record an acceptance verdict; the test still asserts it."""

    def record(number: int, title: str, ok: bool) -> bool:
        _CRITERIA[number] = (title, bool(ok))
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}")
    passed = sum(ok for _, ok in _CRITERIA.values())
    terminalreporter.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")
