import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from weylkit.poly import BiPoly
from weylkit.torsion import set_row_hook
from weylkit.weyl import WeylOp

settings.register_profile("weylkit", max_examples=60, deadline=None)
settings.load_profile("weylkit")

FAMILY = ["y^2 - x^3", "y^2 - x^5", "y^3 - x^4", "y^3 - x^5"]
CUSP = "y^2 - x^3"

small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def bipolys(draw, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(0, max_degree))
        i = draw(st.integers(0, d))
        terms[(i, d - i)] = Fraction(draw(small_ints))
    return BiPoly(terms)


@st.composite
def weylops(draw, max_degree=3, max_terms=4):
    coeffs = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(0, max_degree))
        parts = sorted(draw(st.integers(0, d)) for _ in range(3))
        m = (parts[0], parts[1] - parts[0], parts[2] - parts[1], d - parts[2])
        coeffs[m] = Fraction(draw(small_ints))
    return WeylOp.from_monomials(coeffs)


def random_weyl(rng: random.Random, max_degree=4, max_terms=5) -> WeylOp:
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, d) for _ in range(3))
        m = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], d - cuts[2])
        coeffs[m] = Fraction(rng.randint(-4, 4))
    return WeylOp.from_monomials(coeffs)


def random_poly(rng: random.Random, max_degree=4, max_terms=4) -> BiPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.randint(-4, 4))
    return BiPoly(terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def corrupt_rows():
    """Install a row hook that overwrites Phi_10 with a copy of Phi_00, then remove it.

    The duplicated row breaks independence and the leading-term shift.
    """

    def hook(i, j, n, row):
        if (i, j) == (1, 0):
            f_row = {}
            for (p, q), v in row.items():
                f_row[(p - 1, q)] = v * Fraction(1, p)
            return f_row
        return row

    set_row_hook(hook)
    yield hook
    set_row_hook(None)


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
