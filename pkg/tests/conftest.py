import pytest

from citenorm import EvaluationSet, load_appendix_fixture, make_record

TABLE1_ROWS = [  # (citations, JCS, FCS)
    (17, 16.9, 23.7),
    (4, 3.1, 3.0),
    (6, 4.8, 4.1),
    (8, 4.8, 4.1),
]


@pytest.fixture
def table1_set():
    records = [make_record(id=roman, citations=c, jcs=j, fcs=f)
               for roman, (c, j, f) in zip(["I", "II", "III", "IV"], TABLE1_ROWS)]
    return EvaluationSet("demo", records)


@pytest.fixture(scope="session")
def appendix():
    return load_appendix_fixture()


# -- acceptance summary: one line per criterion ----------------------------

_criteria = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_"):]
        details = [ln for ln in report.capstdout.splitlines() if ln.startswith("FAIL")]
        _criteria.append((name, report.outcome, details))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, details in sorted(_criteria, key=lambda c: int(c[0].split("_")[1])):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
        for line in details:
            terminalreporter.write_line(f"        {line}")
