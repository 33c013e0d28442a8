from fractions import Fraction

import pytest

from famalg.algebra import AlgebraPresentation, FamilyProduct, OperatorFamily
from famalg.fields import Q
from famalg.semigroup import trivial_semigroup

ACCEPTANCE_LINES: list[str] = []


def e1_algebra(name="dot"):
    """e0 e0 = e0, e0 e1 = e1 e0 = e1, e1 e1 = 0 over Q."""
    entries = {((), 0, 0, 0): 1, ((), 0, 1, 1): 1, ((), 1, 0, 1): 1}
    return AlgebraPresentation(Q, trivial_semigroup(), 2, {name: FamilyProduct(name, 0, 2, entries)})


def e1_rb():
    # R(e0) = e1, R(e1) = 0
    return OperatorFamily(Q, trivial_semigroup(), ([[0, 0], [1, 0]],))


def e1_dendriform():
    prods = {nm: FamilyProduct(nm, 0, 2, {((), 0, 0, 1): Fraction(1)}) for nm in ("prec", "succ")}
    return AlgebraPresentation(Q, trivial_semigroup(), 2, prods)


@pytest.fixture
def e1():
    return e1_algebra()


@pytest.fixture
def rb():
    return e1_rb()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
