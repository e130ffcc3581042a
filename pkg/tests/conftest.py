from __future__ import annotations

from fractions import Fraction

import pytest

from _instances import EXPANDERS, load_expander
from expander_lp import ExpansionParams, build_graph


@pytest.fixture
def cycle_graph():
    """Three variables, three checks, each check joining two neighbors: the repetition code."""
    return build_graph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])


@pytest.fixture
def single_check():
    """Four variables on one check: the even-weight code of length 4."""
    return build_graph(4, 1, [(i, 0) for i in range(4)])


@pytest.fixture(params=sorted(EXPANDERS))
def expander(request):
    g = load_expander(request.param)
    return g, ExpansionParams(Fraction(3, 4), Fraction(3, g.n), 4)


@pytest.fixture
def small_expander():
    g = load_expander("n14_s2")
    return g, ExpansionParams(Fraction(3, 4), Fraction(3, 14), 4)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
