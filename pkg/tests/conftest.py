from __future__ import annotations

import contextlib

import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # Keep test runs from touching the user's cache directory.
    monkeypatch.setenv("ZETAFORGE_CACHE", str(tmp_path / "cache"))


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion as PASS or FAIL."""
    lines = request.config._acceptance_lines

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException as exc:
            line = f"[FAIL] criterion {number}: {title} ({type(exc).__name__})"
            lines.append(line)
            print(line)
            raise
        line = f"[PASS] criterion {number}: {title}"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
