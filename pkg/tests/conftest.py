import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shadowhom.fixtures import data_path  # noqa: E402
from shadowhom.diagram import read_pd  # noqa: E402
from shadowhom.quandle import conjugation, dihedral, trivial  # noqa: E402
from shadowhom.wirtinger import default_test_quandles  # noqa: E402

DIAGRAMS = ["unknot", "trefoil", "trefoil_mirror", "trefoil_r1", "trefoil_r2",
            "figure8", "hopf", "knot_9_37", "knot_10_59"]


def load(name):
    return read_pd(data_path(f"{name}.pd"))


@pytest.fixture(scope="session")
def Z3():
    return dihedral(3)


@pytest.fixture(scope="session")
def Z5():
    return dihedral(5)


@pytest.fixture(scope="session")
def S3():
    return default_test_quandles()[2]


@pytest.fixture(scope="session")
def diagrams():
    return {n: load(n) for n in DIAGRAMS}


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.outcome != "passed":
            _ACCEPTANCE[int(name.rsplit("_", 1)[1])] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        status = "PASS" if _ACCEPTANCE[k] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {CRITERIA[k]}")
