import json
import math
import pathlib

import pytest

from bicover.geom import validate_polygon

ROOT = pathlib.Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "testdata" / "golden"
POLYGONS = ROOT / "testdata" / "polygons"


def load_named():
    recs = json.loads((GOLDEN / "named.json").read_text())
    return {r["name"]: r for r in recs}


def load_acceptance():
    return json.loads((GOLDEN / "acceptance.json").read_text())


@pytest.fixture(scope="session")
def named():
    return load_named()


@pytest.fixture(scope="session")
def square():
    return validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)], allow_cocircular=True)


@pytest.fixture(scope="session")
def rect14():
    return validate_polygon([(0, 0), (4, 0), (4, 1), (0, 1)], allow_cocircular=True)


@pytest.fixture(scope="session")
def triangle():
    return validate_polygon([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])


#: One line per acceptance criterion, echoed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
