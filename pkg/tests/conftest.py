import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from perfcert.game_core import Game, pure_profile
from perfcert.lps import LpsProfile

FIXTURES = Path(__file__).parent / "fixtures"


def selten_game():
    return Game.from_function([["T", "B"], ["L", "R"]],
                              lambda p: (1, 1) if p == (0, 0) else (0, 0), ["Row", "Column"])


@pytest.fixture
def selten():
    return selten_game()


@pytest.fixture
def tl(selten):
    return pure_profile(selten, (0, 0))


@pytest.fixture
def br(selten):
    return pure_profile(selten, (1, 1))


def random_game(rng, shape, lo=-5, hi=5, den=4):
    labels = [[f"s{n}{i}" for i in range(k)] for n, k in enumerate(shape)]
    return Game.from_function(labels, lambda p: [Fraction(rng.randint(lo, hi), den)
                                                 for _ in shape])


def random_prob(rng, k, positive=False, sparse=False):
    w = [rng.randint(1 if positive else 0, 6) for _ in range(k)]
    if sparse and not positive:
        keep = rng.randrange(k)
        w = [v if (i == keep or rng.random() < 0.4) else 0 for i, v in enumerate(w)]
    if sum(w) == 0:
        w[rng.randrange(k)] = 1
    t = sum(w)
    return tuple(Fraction(v, t) for v in w)


def random_full_support_lps(rng, shape, K):
    """Random LPS profile of order K with full support (sparse levels)."""
    levels = []
    for k in shape:
        while True:
            lv = [random_prob(rng, k, sparse=True) for _ in range(K + 1)]
            if all(any(l[s] > 0 for l in lv) for s in range(k)):
                break
        levels.append(lv)
    return LpsProfile.from_levels(levels)


def random_vector(rng, k, lo=-4, hi=4, den=3):
    return tuple(Fraction(rng.randint(lo, hi), den) for _ in range(k))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def games(draw, max_players=3, max_strats=3, min_players=1):
    n = draw(st.integers(min_players, max_players))
    shape = [draw(st.integers(1, max_strats)) for _ in range(n)]
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_game(random.Random(seed), shape)


@st.composite
def prob_vectors(draw, k, positive=False):
    w = draw(st.lists(st.integers(1 if positive else 0, 5), min_size=k, max_size=k))
    if sum(w) == 0:
        w[draw(st.integers(0, k - 1))] = 1
    t = sum(w)
    return tuple(Fraction(v, t) for v in w)
