"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the report lines are
printed even when pytest captures output.
"""

import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import FIXTURES, random_full_support_lps, random_game
from perfcert.bounds import GENERAL, compute_bounds, crude_bounds, ell_constant, loj_constant
from perfcert.certify import verify_lps_certificate, verify_poly_certificate
from perfcert.cli import main as cli_main
from perfcert.fileio import read_game, read_profile
from perfcert.game_core import is_nash
from perfcert.lps import induced_belief, support_level
from perfcert.polyform import lps_to_poly, map_order
from perfcert.search import CERTIFICATE_FOUND, exhaustive_small_search, heuristic_linear_certificate

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "scripts"))
import oracle_agreement  # noqa: E402

# independently evaluated with sympy for N = 3, |S_n| = 2 and frozen here
FROZEN = {
    "Z": "590490",
    "D": "147622500",
    "loj_L": "62762119218",
    "ell": "17947480086459962361578227500000000",
    "K": "1126421884849081105321165536988126095000000000",
}

_ACCEPTED = {}  # criterion -> list of (game, sigma) with an accepted certificate


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def test_criterion_1_two_player_selten(capsys, tmp_path):
    game = str(FIXTURES / "selten.game")
    t0 = time.perf_counter()
    codes, docs = [], []
    for prof in ("tl", "br"):
        out = tmp_path / f"{prof}.json"
        codes.append(cli_main(["certify-2p", "--game", game,
                               "--sigma", str(FIXTURES / f"{prof}.profile"), "--output", str(out)]))
        docs.append(out.read_text())
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    tl, br = (json.loads(d) for d in docs)
    g = read_game(FIXTURES / "selten.game")
    sigma = read_profile(FIXTURES / "tl.profile", g)
    _ACCEPTED["1"] = [(g, sigma)] if tl["status"] == CERTIFICATE_FOUND else []
    ok = (codes == [0, 1] and tl["status"] == "certificate_found" and len(tl["lps"][0]) == 2
          and br["status"] == "certified_imperfect" and elapsed < 1.0)
    report(capsys, 1, ok, f"(T,L) {tl['status']} order {len(tl['lps'][0]) - 1}, "
                          f"(B,R) {br['status']}, {elapsed:.3f}s")


def test_criterion_2_bound_formulas(capsys):
    t0 = time.perf_counter()
    code = cli_main(["bounds", "--game", str(FIXTURES / "g3x2.game"), "--mode", "general"])
    doc = json.loads(capsys.readouterr().out)
    digits = all(doc["bounds"][k] == v for k, v in FROZEN.items())
    dominated = []
    for N in (3, 4, 5):
        for a in (2, 3):
            kappa, d = N * a, N - 1
            ell_bar, K_bar = crude_bounds(N, a)
            ell = ell_constant(kappa, d)
            dominated.append(ell <= ell_bar and loj_constant(kappa, d) * ell <= K_bar)
    elapsed = time.perf_counter() - t0
    ok = code == 0 and digits and all(dominated) and elapsed < 1.0
    report(capsys, 2, ok, f"digits match={digits}, crude dominance {sum(dominated)}/6, "
                          f"K has {len(doc['bounds']['K'])} digits, {elapsed:.3f}s")


def test_criterion_3_formulation_equivalence(capsys):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    agree = orders = 0
    accepted = []
    for _ in range(500):
        N = rng.choice((2, 3))
        shape = [rng.randint(1, 3) for _ in range(N)]
        g = random_game(rng, shape, lo=-2, hi=2, den=1)
        rho = random_full_support_lps(rng, shape, rng.randint(0, 2))
        sigma = rho.level(0)
        b = compute_bounds(g, GENERAL)
        v_lps = verify_lps_certificate(g, sigma, rho, b)
        eta = lps_to_poly(rho)
        v_poly = verify_poly_certificate(g, sigma, eta, b)
        agree += v_lps.conditions["best_reply"] == v_poly.conditions["best_reply"]
        orders += map_order(eta) == support_level(rho)
        if v_lps.accepted:
            accepted.append((g, sigma))
    elapsed = time.perf_counter() - t0
    _ACCEPTED["3"] = accepted
    ok = agree == 500 and orders == 500 and elapsed < 30
    report(capsys, 3, ok, f"best-reply agreement {agree}/500, order identity {orders}/500, "
                          f"{len(accepted)} accepted, {elapsed:.2f}s")


def _enumerated_count(k, parts, K):
    return sum(1 for c in itertools.product(range(K + 1), repeat=parts) if sum(c) == k)


def test_criterion_4_belief_normalization(capsys):
    rng = random.Random(77)
    t0 = time.perf_counter()
    good = 0
    for _ in range(1000):
        N = rng.choice((3, 4))
        K = rng.choice((1, 2, 3))
        shape = [rng.randint(1, 3) for _ in range(N)]
        rho = random_full_support_lps(rng, shape, K)
        n = rng.randrange(N)
        k = rng.randint(0, K * (N - 1))
        mu = induced_belief(rho, n, k)
        good += sum(mu.distribution) == 1 and mu.normalizer == Fraction(
            1, _enumerated_count(k, N - 1, K))
    elapsed = time.perf_counter() - t0
    ok = good == 1000 and elapsed < 30
    report(capsys, 4, ok, f"{good}/1000 exact sums and normalizers, {elapsed:.2f}s")


def test_criterion_5_oracle_agreement(capsys):
    t0 = time.perf_counter()
    games = 300
    cases = oracle_agreement.run(games, seed=0)
    s = oracle_agreement.summarize(cases)
    elapsed = time.perf_counter() - t0
    _ACCEPTED["5"] = [(c["game"], c["sigma"]) for c in cases if c["lp_perfect"]]
    stable = s["agree"] + s["grid_artifact"] + s["disagree"]
    ok = s["disagree"] == 0 and games >= 200 and stable > 0 and elapsed < 300
    report(capsys, 5, ok, f"{games} games, {s['cases']} profiles, {stable} grid-stable: "
                          f"{s['agree']} agree outright, {s['grid_artifact']} resolved by grid "
                          f"refinement with exact witness check, {s['disagree']} disagree "
                          f"({s['unstable']} unstable excluded), {elapsed:.1f}s")


def test_criterion_6_nash_necessity(capsys):
    missing = [k for k in ("1", "3", "5") if k not in _ACCEPTED]
    if missing:
        pytest.skip(f"suites {missing} did not run")
    pool = [pair for k in ("1", "3", "5") for pair in _ACCEPTED[k]]
    nash = sum(bool(is_nash(g, s)) for g, s in pool)
    report(capsys, 6, nash == len(pool) and len(pool) > 0,
           f"is_nash holds for {nash}/{len(pool)} accepted certificates")


def test_criterion_7_not_reproducible_statement_and_soundness(capsys):
    b = compute_bounds(read_game(FIXTURES / "g3x2.game"))
    statement = (f"NOT REPRODUCIBLE at desk scale: certificate search at the general bound "
                 f"(K with {len(str(b.K))} digits for three players with two actions each) is "
                 f"infeasible; verification-gated construction and small-order search stand in")
    rng = random.Random(9)
    found = sound = 0
    for _ in range(40):
        N = rng.choice((2, 3))
        g = random_game(rng, [2] * N, lo=-1, hi=1, den=1)
        gb = compute_bounds(g, GENERAL)
        for prof in itertools.product(range(2), repeat=N):
            sigma = [tuple(Fraction(int(i == s)) for i in range(2)) for s in prof]
            if not is_nash(g, sigma):
                continue
            for out in (exhaustive_small_search(g, sigma, 1, 3),
                        heuristic_linear_certificate(g, sigma, samples=10, seed=1)):
                if out.status != CERTIFICATE_FOUND:
                    continue
                found += 1
                ok_poly = verify_poly_certificate(g, sigma, out.poly, compute_bounds(g)).accepted
                ok_lps = out.lps is None or verify_lps_certificate(g, sigma, out.lps, gb).accepted
                sound += ok_poly and ok_lps and bool(is_nash(g, sigma))
    report(capsys, 7, found > 0 and sound == found,
           f"{statement}; {sound}/{found} found certificates re-verify")
