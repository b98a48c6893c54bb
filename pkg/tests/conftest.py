import pytest
from hypothesis import strategies as st

from algcalc import FiniteAlgebra, Signature
from algcalc import catalog

ACCEPTANCE_LINES = []


@pytest.fixture
def b2():
    return catalog.boolean()


@pytest.fixture
def lattice2():
    return catalog.lattice()


@pytest.fixture
def set3():
    return catalog.empty_set(3)


@pytest.fixture
def cycle3():
    return catalog.cycle3()


@st.composite
def algebras(draw, max_size=4, max_ops=3, arities=(0, 1, 2)):
    n = draw(st.integers(1, max_size))
    ks = draw(st.lists(st.sampled_from(arities), max_size=max_ops))
    tables = [draw(st.lists(st.integers(0, n - 1), min_size=n**k, max_size=n**k)) for k in ks]
    sig = Signature(tuple((f"f{i}", k) for i, k in enumerate(ks)))
    return FiniteAlgebra(n, sig, tables)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
