import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"
ACCEPTANCE = []


@pytest.fixture
def sample_tract_text():
    return (DATA / "sample_tracts.csv").read_text()


@pytest.fixture
def acceptance():
    """Record a one-line verdict per acceptance criterion; ``ok=None``
    marks a criterion that could not be run."""
    def record(criterion, ok, detail=""):
        ACCEPTANCE.append((criterion, None if ok is None else bool(ok), detail))
        return ok
    return record


@pytest.fixture(scope="session")
def tracts2000():
    path = os.environ.get("HUBLOC_TRACTS2000")
    if not path:
        pytest.skip("set HUBLOC_TRACTS2000 to the 2000 census tract file")
    from hubloc.census import read_tract_file
    return read_tract_file(path, strict=False)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE:
        mark = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"[{mark}] {criterion}" + (f" -- {detail}" if detail else ""))
