import json
import subprocess
import sys
from pathlib import Path

import pytest

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "bestworst" / "schemas"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "bestworst", *args],
        capture_output=True,
        text=True,
        check=False,
    )


@pytest.fixture(scope="session")
def schemas() -> dict:
    return {p.stem: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.json")}


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
