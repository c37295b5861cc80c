from pathlib import Path

import pytest

from signedtri.graph import generate_er_signed
from signedtri.stream import make_stream, parse_stream, to_stream

DATA = Path(__file__).parent / "data"

_acceptance_lines: list = []


def record_acceptance(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fixture_stream():
    """Stored 30-vertex graph with counts (215, 676, 557, 147)."""
    return parse_stream((DATA / "balance_fixture.txt").read_bytes())


@pytest.fixture
def single_t1():
    # one triangle, one positive edge, closing edge positive
    return make_stream(3, [(0, 1, -1), (0, 2, -1), (1, 2, 1)])


@pytest.fixture(scope="session")
def small_streams():
    single = make_stream(3, [(0, 1, -1), (0, 2, -1), (1, 2, 1)])
    er10 = to_stream(generate_er_signed(10, 0.5, 0.5, 10), 11)
    er12 = to_stream(generate_er_signed(12, 0.5, 0.25, 12), 13)
    return {"single": single, "er10": er10, "er12": er12}
