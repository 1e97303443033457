import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_full_support_lps, random_game, random_prob
from perfcert.errors import InvalidInput, LevelOutOfRange, NotFullSupport, SinglePlayer
from perfcert.game_core import best_reply_set, pure_vector
from perfcert.lps import (LpsProfile, belief_payoffs, composition_count, compositions,
                          induced_belief, lex_best_reply, lex_compare_levels, support_level)

H = Fraction(1, 2)
UNIFORM = (H, H)
D0, D1 = pure_vector(2, 0), pure_vector(2, 1)


def brute_count(total, parts, cap):
    return sum(1 for v in itertools.product(range(cap + 1), repeat=parts) if sum(v) == total)


def test_support_level_examples():
    assert support_level(LpsProfile.from_levels([[UNIFORM], [UNIFORM]])) == 0
    assert support_level(LpsProfile.from_levels([[D0, D1], [D0, D1]])) == 1
    rho = LpsProfile.from_levels([
        [D0, D1, D1, D1],
        [pure_vector(3, 0), pure_vector(3, 0), pure_vector(3, 1), pure_vector(3, 2)],
    ])
    assert support_level(rho) == 3


def test_support_level_missing_strategy():
    with pytest.raises(NotFullSupport) as exc:
        support_level(LpsProfile.from_levels([[D0, D0], [D0, D1]]))
    assert (exc.value.player, exc.value.strategy) == (0, 1)


def test_lps_validation():
    with pytest.raises(InvalidInput):
        LpsProfile.from_levels([[(H, Fraction(1, 3))]])
    with pytest.raises(InvalidInput):
        LpsProfile.from_levels([[D0], [D0, D1]])


def test_induced_belief_level_zero_is_product():
    rho = LpsProfile.from_levels([[(Fraction(1, 3), Fraction(2, 3)), D1]] * 3)
    mu = induced_belief(rho, 1, 0)
    assert mu.normalizer == 1
    assert mu.distribution == (Fraction(1, 9), Fraction(2, 9), Fraction(2, 9), Fraction(4, 9))


def test_induced_belief_two_compositions():
    rho = LpsProfile.from_levels([[D0, D1], [UNIFORM, UNIFORM], [D0, D1]])
    mu = induced_belief(rho, 1, 1)
    # opponents (0, 2): compositions (0,1) -> (s0, s1) and (1,0) -> (s1, s0)
    assert mu.normalizer == H
    assert mu.distribution == (0, H, H, 0)
    mu2 = induced_belief(rho, 1, 2)
    assert mu2.normalizer == 1
    assert mu2.distribution == (0, 0, 0, 1)


def test_induced_belief_errors():
    rho = LpsProfile.from_levels([[D0, D1], [D0, D1]])
    with pytest.raises(LevelOutOfRange):
        induced_belief(rho, 0, 2)
    with pytest.raises(SinglePlayer):
        induced_belief(LpsProfile.from_levels([[D0]]), 0, 0)


def test_lex_best_reply_examples(selten):
    rho = LpsProfile.from_levels([[D0, UNIFORM], [D0, UNIFORM]])
    assert lex_best_reply(selten, rho, 0, D0, 1)

    rho = LpsProfile.from_levels([[D1, UNIFORM], [D1, UNIFORM]])
    reply = lex_best_reply(selten, rho, 0, D1, 1)
    assert not reply
    assert (reply.strategy, reply.level) == (0, 1)
    # level 0 alone is a tie
    assert lex_best_reply(selten, rho, 0, D1, 0)


def test_single_player_degenerates_to_payoff_comparison():
    from perfcert.game_core import Game
    g = Game.from_function([["a", "b", "c"]], lambda p: (p[0] % 2,))
    rho = LpsProfile.from_levels([[(0, 1, 0)]])
    assert lex_best_reply(g, rho, 0, pure_vector(3, 1), 0)
    assert not lex_best_reply(g, rho, 0, pure_vector(3, 0), 0)


def test_composition_enumeration_matches_brute_force():
    for parts in range(0, 4):
        for cap in range(0, 4):
            for total in range(0, parts * cap + 2):
                comps = list(compositions(total, parts, cap))
                assert len(comps) == brute_count(total, parts, cap)
                assert comps == sorted(comps)
                assert composition_count(total, parts, cap) == len(comps)


def test_belief_payoffs_match_materialised_belief():
    rng = random.Random(3)
    for _ in range(30):
        shape = [rng.randint(1, 3) for _ in range(3)]
        g = random_game(rng, shape)
        K = rng.randint(0, 2)
        rho = random_full_support_lps(rng, shape, K)
        for n in range(3):
            for k in range(2 * K + 1):
                mu = induced_belief(rho, n, k)
                others = mu.opponents
                expect = []
                for s in range(shape[n]):
                    v = Fraction(0)
                    for idx, prof in enumerate(itertools.product(*(range(shape[m]) for m in others))):
                        full = [None] * 3
                        full[n] = s
                        for m, sm in zip(others, prof):
                            full[m] = sm
                        v += mu.distribution[idx] * g.payoff(n, full)
                    expect.append(v)
                assert belief_payoffs(g, rho, n, k) == expect


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 2 ** 31))
def test_normalization_exact(N, K, seed):
    rng = random.Random(seed)
    shape = [rng.randint(1, 3) for _ in range(N)]
    rho = random_full_support_lps(rng, shape, K)
    n = rng.randrange(N)
    k = rng.randint(0, K * (N - 1))
    mu = induced_belief(rho, n, k)
    assert sum(mu.distribution) == 1
    assert 1 / mu.normalizer == brute_count(k, N - 1, K)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 31), st.lists(st.fractions(min_value=Fraction(1, 9), max_value=9),
                                         min_size=4, max_size=4))
def test_verdict_invariant_under_level_rescaling(seed, scales):
    rng = random.Random(seed)
    N = rng.randint(2, 3)
    shape = [rng.randint(2, 3) for _ in range(N)]
    g = random_game(rng, shape, lo=-2, hi=2, den=1)
    K = rng.randint(1, 2)
    rho = random_full_support_lps(rng, shape, K)
    n = rng.randrange(N)
    k = min(3, K * (N - 1))
    tau = random_prob(rng, shape[n], sparse=True)
    levels = [belief_payoffs(g, rho, n, j) for j in range(k + 1)]
    scaled = [[c * v for v in lv] for c, lv in zip(scales, levels)]
    assert lex_compare_levels(levels, tau, n) == lex_compare_levels(scaled, tau, n)
    assert lex_compare_levels(levels, tau, n) == lex_best_reply(g, rho, n, tau, k)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 31), st.fractions(min_value=0, max_value=1))
def test_mixture_closure(seed, a):
    rng = random.Random(seed)
    N = rng.randint(2, 3)
    shape = [rng.randint(2, 3) for _ in range(N)]
    g = random_game(rng, shape, lo=-1, hi=1, den=1)
    rho = random_full_support_lps(rng, shape, 1)
    n = rng.randrange(N)
    k = N - 1
    passing = [pure_vector(shape[n], s) for s in range(shape[n])
               if lex_best_reply(g, rho, n, pure_vector(shape[n], s), k)]
    for t1, t2 in itertools.product(passing, repeat=2):
        mix = tuple(a * u + (1 - a) * v for u, v in zip(t1, t2))
        assert lex_best_reply(g, rho, n, mix, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_order_zero_is_one_shot_best_reply(seed):
    rng = random.Random(seed)
    shape = [rng.randint(1, 3) for _ in range(3)]
    g = random_game(rng, shape, lo=-1, hi=1, den=1)
    rho = random_full_support_lps(rng, shape, 1)
    level0 = rho.level(0)
    for n in range(3):
        br = best_reply_set(g, n, level0)
        for s in range(shape[n]):
            assert bool(lex_best_reply(g, rho, n, pure_vector(shape[n], s), 0)) == (s in br)
