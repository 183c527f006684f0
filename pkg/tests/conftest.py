import pytest

from imilnor.cli import catalog_specs
from imilnor.parse import parse_polynomial


def P(text, variables=None):
    return parse_polynomial(text, variables)


@pytest.fixture(scope="session")
def catalog():
    return {spec.name: spec for _, spec in catalog_specs()}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, _ in CRITERIA:
        if label in RESULTS:
            terminalreporter.write_line(format_line(label, *RESULTS[label]))
        else:
            terminalreporter.write_line(f"[FAIL] criterion {label}: did not complete")
