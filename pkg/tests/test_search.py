import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_game
from perfcert.bounds import GENERAL, TWO_PLAYER, compute_bounds
from perfcert.certify import verify_lps_certificate, verify_poly_certificate
from perfcert.errors import BudgetExceeded, WrongPlayerCount
from perfcert.game_core import Game, is_nash, pure_nash_profiles, pure_profile
from perfcert.search import (CERTIFICATE_FOUND, CERTIFIED_IMPERFECT, INCONCLUSIVE,
                             exhaustive_small_search, find_linear_certificate_2p,
                             grid_tremble_oracle, heuristic_linear_certificate,
                             in_perturbation_set, simplex_grid)

H = Fraction(1, 2)


def selten_with_dummy():
    # third player has one strategy and no influence
    return Game.from_function([["T", "B"], ["L", "R"], ["x"]],
                              lambda p: (1, 1, 0) if p[:2] == (0, 0) else (0, 0, 0))


def test_selten_2p(selten, tl, br):
    out = find_linear_certificate_2p(selten, tl)
    assert out.status == CERTIFICATE_FOUND
    assert out.interior.tau_star.vectors == ((H, H), (H, H)) and out.interior.margin == H
    b = compute_bounds(selten, TWO_PLAYER)
    assert verify_poly_certificate(selten, tl, out.poly, b).accepted
    assert verify_lps_certificate(selten, tl, out.lps, b).accepted

    out = find_linear_certificate_2p(selten, br)
    assert out.status == CERTIFIED_IMPERFECT
    assert out.evidence["reason"] == "empty_interior"
    assert out.evidence["lp"][-1]["delta_star"] == "0"


def test_2p_non_nash_and_mixed(selten):
    out = find_linear_certificate_2p(selten, pure_profile(selten, (0, 1)))
    assert out.status == CERTIFIED_IMPERFECT and out.evidence["reason"] == "not_nash"
    mp = Game.from_function([["H", "T"], ["H", "T"]],
                            lambda p: (1, -1) if p[0] == p[1] else (-1, 1))
    out = find_linear_certificate_2p(mp, [(H, H), (H, H)])
    assert out.status == CERTIFICATE_FOUND and out.interior.tau_star.vectors == ((H, H), (H, H))


def test_2p_rejects_other_player_counts():
    with pytest.raises(WrongPlayerCount):
        find_linear_certificate_2p(selten_with_dummy(), [(1, 0), (1, 0), (1,)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_2p_decisions_are_sound(seed):
    rng = random.Random(seed)
    g = random_game(rng, [rng.randint(2, 3), rng.randint(2, 3)], lo=-2, hi=2, den=1)
    for prof in pure_nash_profiles(g):
        sigma = pure_profile(g, prof)
        out = find_linear_certificate_2p(g, sigma)
        if out.status == CERTIFICATE_FOUND:
            tau = out.interior.tau_star
            assert tau.is_completely_mixed() and in_perturbation_set(g, sigma, tau)
            # every point of the open segment stays in the perturbation set
            for r in (Fraction(1, 7), H, 1):
                mid = [tuple((1 - r) * a + r * b for a, b in zip(s, t)) for s, t in zip(sigma, tau)]
                assert in_perturbation_set(g, sigma, mid)
        else:
            assert out.status == CERTIFIED_IMPERFECT
            # no small-grid interior point lies in the perturbation set
            assert not any(grid_tremble_oracle(g, sigma, [1], 12)[0][1:])


def test_heuristic(selten, tl, br):
    out = heuristic_linear_certificate(selten, tl, samples=20, seed=3)
    assert out.status == CERTIFICATE_FOUND
    assert verify_poly_certificate(selten, tl, out.poly, compute_bounds(selten)).accepted
    again = heuristic_linear_certificate(selten, tl, samples=20, seed=3)
    assert again.poly == out.poly and again.evidence == out.evidence
    out = heuristic_linear_certificate(selten, br, samples=20)
    assert out.status == INCONCLUSIVE


def test_exhaustive(selten, tl, br):
    out = exhaustive_small_search(selten, tl, 1, 2)
    assert out.status == CERTIFICATE_FOUND
    assert verify_lps_certificate(selten, tl, out.lps, compute_bounds(selten, GENERAL)).accepted
    out = exhaustive_small_search(selten, br, 1, 8)
    assert out.status == INCONCLUSIVE and out.evidence["candidates"] == 64


def test_three_player_imperfect_embedding_stays_inconclusive():
    g = selten_with_dummy()
    sigma = pure_profile(g, (1, 1, 0))
    assert is_nash(g, sigma)
    assert heuristic_linear_certificate(g, sigma, samples=30).status == INCONCLUSIVE
    assert exhaustive_small_search(g, sigma, 1, 4).status == INCONCLUSIVE
    tl = pure_profile(g, (0, 0, 0))
    out = exhaustive_small_search(g, tl, 1, 2)
    assert out.status == CERTIFICATE_FOUND


def test_budget_exceeded(selten, tl):
    with pytest.raises(BudgetExceeded) as exc:
        exhaustive_small_search(selten, tl, 2, 8, cap=100)
    assert exc.value.cap == 100
    with pytest.raises(ValueError):
        exhaustive_small_search(selten, tl, 3, 2)


def test_jobs_do_not_change_result():
    g = selten_with_dummy()
    sigma = pure_profile(g, (0, 0, 0))
    serial = exhaustive_small_search(g, sigma, 1, 4)
    parallel = exhaustive_small_search(g, sigma, 1, 4, jobs=3)
    assert serial.status == parallel.status == CERTIFICATE_FOUND
    assert serial.evidence == parallel.evidence and serial.lps == parallel.lps


def test_simplex_grid_counts():
    assert len(list(simplex_grid(3, 4))) == 15
    assert len(list(simplex_grid(3, 4, positive=True))) == 3
    assert all(sum(p) == 1 for p in simplex_grid(4, 5))


def test_oracle_examples(selten, tl, br):
    eps = [H, Fraction(1, 4), Fraction(1, 8)]
    assert [ok for _, ok in grid_tremble_oracle(selten, tl, eps, 16)] == [True] * 3
    assert [ok for _, ok in grid_tremble_oracle(selten, br, eps, 16)] == [False] * 3
    g = selten_with_dummy()
    assert grid_tremble_oracle(g, pure_profile(g, (0, 0, 0)), eps, 8)[0][1]
