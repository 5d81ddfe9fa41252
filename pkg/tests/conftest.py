from __future__ import annotations

import pytest
from hypothesis import strategies as st

from grassmann_aut.fieldlin import GF, Q
from grassmann_aut.grassmann import Multivector

FIELDS = [Q, GF(3), GF(5)]

ACCEPTANCE_LINES: list[str] = []


def multivectors(n, field=Q, max_terms=4):
    """Sparse random elements with small coefficients."""
    coeff = st.integers(-3, 3) if field is Q else st.integers(0, field.characteristic - 1)
    terms = st.dictionaries(st.integers(0, (1 << n) - 1), coeff, max_size=max_terms)
    return terms.map(lambda t: Multivector(n, t, field))


@pytest.fixture
def record():
    def emit(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
