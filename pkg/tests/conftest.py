import sys
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

DATA = HERE / "data"
GOLDEN = HERE / "golden"

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture
def fixture_corpus_path():
    return DATA / "fixture.jsonl"


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    holder = {}

    def record(number: int, title: str):
        holder["key"] = f"{number}. {title}"

    yield record
    if "key" in holder:
        rep = getattr(request.node, "rep_call", None)
        passed = rep is not None and rep.passed
        prev = _ACCEPTANCE.get(holder["key"], ("PASS", ""))[0]
        status = "PASS" if passed and prev == "PASS" else "FAIL"
        _ACCEPTANCE[holder["key"]] = (status, request.node.name)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
        status, _ = _ACCEPTANCE[key]
        terminalreporter.write_line(f"[{status}] criterion {key}")
