import re
from pathlib import Path

import pytest

from indexcode.instance import load_instance

FIXTURES = Path(__file__).parent / "fixtures"

_criteria = {}


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


@pytest.fixture(params=list("abcde"))
def any_fixture(request):
    return FIXTURES / f"instance_{request.param}.txt"


@pytest.fixture
def inst_a():
    return load_instance(FIXTURES / "instance_a.txt")


@pytest.fixture
def inst_b():
    return load_instance(FIXTURES / "instance_b.txt")


@pytest.fixture
def inst_c():
    return load_instance(FIXTURES / "instance_c.txt")


@pytest.fixture
def inst_d():
    return load_instance(FIXTURES / "instance_d.txt")


@pytest.fixture
def inst_e():
    return load_instance(FIXTURES / "instance_e.txt")


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    name = m.group(2).replace("_", " ")
    failed = report.failed or (report.when == "call" and report.skipped)
    prev = _criteria.get(key, (name, True))
    _criteria[key] = (name, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        name, ok = _criteria[key]
        terminalreporter.write_line(f"criterion {key:2d} {'PASS' if ok else 'FAIL'}  {name}")
