"""Compare the exact two-player LP certifier with the grid-tremble oracle.

Random games with payoffs k/20 (k = 0..20), sizes 2x2 .. 4x4, every pure
Nash profile.  A case is grid-stable when the oracle gives the same answer
at the two finest denominators.

A stable disagreement where the LP finds a certificate and the grid does
not is re-examined: the grid is refined (doubling the denominator up to
512) and the LP witness is checked exactly at a point of its segment
inside the smallest box.  If both succeed the miss was a grid artifact.
Any case where the grid finds a tremble the LP rules out is a real
disagreement.

    python scripts/oracle_agreement.py --games 200 --seed 0
"""

import argparse
import random
import time
from fractions import Fraction

from perfcert.game_core import Game, pure_nash_profiles, pure_profile
from perfcert.search import (CERTIFICATE_FOUND, find_linear_certificate_2p, grid_tremble_oracle,
                             in_perturbation_set)

EPSILONS = (Fraction(1, 2), Fraction(1, 4))
DENOMINATORS = (16, 32)
REFINE_LIMIT = 512


def random_game(rng, denominator=20):
    rows, cols = rng.randint(2, 4), rng.randint(2, 4)
    labels = [[f"r{i}" for i in range(rows)], [f"c{j}" for j in range(cols)]]
    return Game.from_function(labels, lambda p: [Fraction(rng.randint(0, denominator), denominator)
                                                 for _ in range(2)])


def grid_says(game, sigma, denominator):
    return all(ok for _, ok in grid_tremble_oracle(game, sigma, EPSILONS, denominator))


def compare(game, profile):
    sigma = pure_profile(game, profile)
    lp = find_linear_certificate_2p(game, sigma)
    grids = [grid_says(game, sigma, d) for d in DENOMINATORS]
    return {"lp_perfect": lp.status == CERTIFICATE_FOUND, "grid": grids,
            "stable": grids[0] == grids[1], "outcome": lp, "sigma": sigma}


def witness_in_box(game, sigma, outcome, eps):
    tau = outcome.interior.tau_star
    r = eps  # max-norm distance of (1 - r) sigma + r tau from sigma is at most r
    point = [tuple((1 - r) * a + r * b for a, b in zip(s, t)) for s, t in zip(sigma, tau)]
    return all(v > 0 for row in point for v in row) and in_perturbation_set(game, sigma, point)


def triage(case):
    """'agree', 'grid_artifact' or 'disagree' for one case."""
    if case["lp_perfect"] == case["grid"][-1]:
        return "agree"
    if not case["lp_perfect"]:
        return "disagree"
    game, sigma = case["game"], case["sigma"]
    if not all(witness_in_box(game, sigma, case["outcome"], e) for e in EPSILONS):
        return "disagree"
    d = 2 * DENOMINATORS[-1]
    while d <= REFINE_LIMIT:
        if grid_says(game, sigma, d):
            case["refined_denominator"] = d
            return "grid_artifact"
        d *= 2
    return "disagree"


def run(games, seed):
    rng = random.Random(seed)
    cases = []
    for _ in range(games):
        g = random_game(rng)
        for prof in pure_nash_profiles(g):
            rec = compare(g, prof)
            rec["game"], rec["profile"] = g, prof
            cases.append(rec)
    for c in cases:
        c["triage"] = triage(c) if c["stable"] else "unstable"
    return cases


def summarize(cases):
    out = {k: sum(c["triage"] == k for c in cases)
           for k in ("agree", "grid_artifact", "disagree", "unstable")}
    out["cases"] = len(cases)
    out["perfect"] = sum(c["lp_perfect"] for c in cases)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--games", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    cases = run(args.games, args.seed)
    s = summarize(cases)
    print(" ".join(f"{k}={v}" for k, v in s.items()) + f" time={time.perf_counter() - t0:.1f}s")
    for c in cases:
        if c["triage"] in ("grid_artifact", "disagree"):
            print(c["triage"].upper(), c["profile"], c["game"].payoffs,
                  c.get("refined_denominator"), c["outcome"].evidence.get("reason"))


if __name__ == "__main__":
    main()
