import json

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def write_jsonl(tmp_path):
    """Write dicts (or raw strings) as lines of a JSONL file and return its path."""

    def _write(rows, name="corpus.jsonl"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(row if isinstance(row, str) else json.dumps(row, ensure_ascii=False))
                fh.write("\n")
        return path

    return _write


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary."""

    def _record(name, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
