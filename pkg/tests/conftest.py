from fractions import Fraction
import random

import pytest

import afasim.automaton_text
from afasim.model import AfA, PFA


@pytest.fixture(scope="session")
def halving_pfa():
    return afasim.automaton_text.load_bundled("halving_pfa")


@pytest.fixture(scope="session")
def two_thirds_afa():
    return afasim.automaton_text.load_bundled("two_thirds_afa")


@pytest.fixture(scope="session")
def three_state_pfa():
    return afasim.automaton_text.load_bundled("three_state_pfa")


@pytest.fixture(scope="session")
def unary_afa():
    return afasim.automaton_text.load_bundled("unary_afa")


@pytest.fixture
def swap_afa():
    """x = (1, 0), M_a with columns (2, -1) and (-1, 2), F = diag(1, 0)."""
    return AfA(
        alphabet="a",
        x=("1", "0"),
        matrices={"a": (("2", "-1"), ("-1", "2"))},
        flags=(1, 0),
    )


@pytest.fixture
def half_pfa():
    """f(w) = 1/2 for every word."""
    half = Fraction(1, 2)
    return PFA(
        alphabet="ab",
        x=(half, half),
        matrices={"a": ((1, 0), (0, 1)), "b": ((0, 1), (1, 0))},
        flags=(1, 0),
    )


@pytest.fixture
def rng():
    return random.Random(0x5eed)
