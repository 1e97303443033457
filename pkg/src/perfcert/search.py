"""Certificate construction and independent perfection oracles.

Two-player reduction
--------------------
With two players the set of completely mixed profiles against which sigma
stays a best reply is a product of two polytopes (player n's inequalities
only involve the opponent's strategy) intersected with the interior of the
strategy space.  If it contains some tau*, the segment (1 - t) sigma + t tau*
is an order-1 certificate; if it is empty, sigma is not in its closure and
no certificate of any order exists.  So one exact LP per player,
``max delta  s.t.  tau >= delta, sum(tau) = 1, inequalities``, decides
perfection: optimum delta* > 0 for both players iff sigma is perfect
(given that sigma is Nash).
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import GENERAL, TWO_PLAYER, compute_bounds
from .certify import verify_lps_certificate, verify_poly_certificate
from .errors import BudgetExceeded, InvalidInput, NotConverted, WrongPlayerCount
from .game_core import Game, MixedProfile, as_profile, check_dimensions, is_nash, pure_payoffs, pure_vector
from .lps import Lps, LpsProfile, compositions
from .polyform import PolyProfile, poly_to_lps_attempt
from .simplex import OPTIMAL, solve_lp

CERTIFICATE_FOUND = "certificate_found"
CERTIFIED_IMPERFECT = "certified_imperfect"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FeasibleInterior:
    tau_star: MixedProfile
    margin: Fraction


@dataclass
class SearchOutcome:
    status: str
    poly: PolyProfile | None = None
    lps: LpsProfile | None = None
    evidence: dict = field(default_factory=dict)
    interior: FeasibleInterior | None = None


def _check_sigma(game: Game, sigma) -> MixedProfile:
    sigma = as_profile(sigma)
    check_dimensions(game, sigma)
    if not sigma.is_probability():
        raise InvalidInput("sigma is not a probability profile")
    return sigma


def _nash_evidence(game, report):
    return {"reason": "not_nash",
            "violations": [{"player": v.player, "strategy": v.strategy, "gain": str(v.gain)}
                           for v in report.violations]}


def in_perturbation_set(game: Game, sigma, tau) -> bool:
    """Is sigma_n a weak best reply to tau_{-n} for every player n?"""
    for n in range(game.player_count):
        values = pure_payoffs(game, n, tau)
        own = sum((p * v for p, v in zip(sigma[n], values)), Fraction(0))
        if any(v > own for v in values):
            return False
    return True


def _advantage_rows(game: Game, sigma: MixedProfile, n: int):
    """rows[s][j] = G_n(sigma_n, j) - G_n(s, j) with j the opponent's pure strategy."""
    m = 1 - n
    cols = []
    for j in range(game.shape[m]):
        x = [None, None]
        x[m] = pure_vector(game.shape[m], j)
        values = pure_payoffs(game, n, x)
        own = sum((p * v for p, v in zip(sigma[n], values)), Fraction(0))
        cols.append([own - v for v in values])
    return [[cols[j][s] for j in range(game.shape[m])] for s in range(game.shape[n])]


def interior_lp(game: Game, sigma: MixedProfile, m: int):
    """max delta over tau_m in the simplex with tau_m >= delta and the opponent's inequalities."""
    n = 1 - m
    k = game.shape[m]
    rows = _advantage_rows(game, sigma, n)
    A_ub, b_ub = [], []
    for j in range(k):
        row = [Fraction(0)] * (k + 1)
        row[j] = Fraction(-1)
        row[k] = Fraction(1)
        A_ub.append(row)
        b_ub.append(Fraction(0))
    for r in rows:
        A_ub.append([-a for a in r] + [Fraction(0)])
        b_ub.append(Fraction(0))
    A_eq = [[Fraction(1)] * k + [Fraction(0)]]
    c = [Fraction(0)] * k + [Fraction(1)]
    return solve_lp(c, A_ub, b_ub, A_eq, [Fraction(1)]), (A_ub, b_ub, A_eq, c)


def find_linear_certificate_2p(game: Game, sigma) -> SearchOutcome:
    """Decide perfection of sigma in a two-player game exactly.

    Returns ``certificate_found`` with a verified order-1 polynomial and LPS
    certificate, or ``certified_imperfect`` with the evidence (a profitable
    deviation, or the LP optimum delta* = 0 together with its dual).
    """
    if game.player_count != 2:
        raise WrongPlayerCount(f"two-player certifier called on a {game.player_count}-player game")
    sigma = _check_sigma(game, sigma)
    report = is_nash(game, sigma)
    if not report:
        return SearchOutcome(CERTIFIED_IMPERFECT, evidence=_nash_evidence(game, report))

    if sigma.is_completely_mixed():
        tau = sigma
        margin = min(v for row in sigma for v in row)
        lp_info = [{"player": m, "delta_star": str(min(sigma[m]))} for m in range(2)]
    else:
        taus, lp_info = [], []
        for m in range(2):
            res, (A_ub, b_ub, A_eq, c) = interior_lp(game, sigma, m)
            assert res.status == OPTIMAL, res.status  # tau_m = sigma_m is feasible
            info = {"player": m, "delta_star": str(res.value),
                    "duals_ub": [str(v) for v in res.duals_ub],
                    "duals_eq": [str(v) for v in res.duals_eq]}
            lp_info.append(info)
            if res.value <= 0:
                return SearchOutcome(CERTIFIED_IMPERFECT, evidence={
                    "reason": "empty_interior", "player": m, "lp": lp_info})
            taus.append(res.x[:-1])
        tau = MixedProfile(tuple(taus))
        margin = min(v for row in tau for v in row)

    eta = PolyProfile.linear_path(sigma, tau)
    rho = LpsProfile.from_levels([[sigma[n], tau[n]] for n in range(2)])
    bounds = compute_bounds(game, TWO_PLAYER)
    v_poly = verify_poly_certificate(game, sigma, eta, bounds)
    v_lps = verify_lps_certificate(game, sigma, rho, bounds)
    if not (v_poly.accepted and v_lps.accepted):
        raise AssertionError(f"constructed certificate failed verification: "
                             f"{v_poly.summary()} / {v_lps.summary()}")
    return SearchOutcome(CERTIFICATE_FOUND, eta, rho, {
        "tau_star": [[str(v) for v in row] for row in tau], "margin": str(margin),
        "lp": lp_info}, FeasibleInterior(tau, margin))


def _random_interior(game: Game, rng: random.Random):
    out = []
    for k in game.shape:
        w = [rng.randint(1, 9) for _ in range(k)]
        total = sum(w)
        out.append(tuple(Fraction(v, total) for v in w))
    return out


def heuristic_linear_certificate(game: Game, sigma, samples: int = 200, seed: int = 0) -> SearchOutcome:
    """Sample interior points tau near sigma and try the segment from sigma to tau.

    Candidate i is (1 - r_i) sigma + r_i u with u a random completely mixed
    profile and r_i = 1 / (i + 2).  Only exactly verified segments are
    returned; exhausting the budget gives ``inconclusive``.
    """
    if game.player_count < 2:
        raise WrongPlayerCount("heuristic search needs at least two players")
    sigma = _check_sigma(game, sigma)
    report = is_nash(game, sigma)
    if not report:
        return SearchOutcome(INCONCLUSIVE, evidence=_nash_evidence(game, report))
    rng = random.Random(seed)
    bounds = compute_bounds(game)

    def candidates():
        if sigma.is_completely_mixed():
            yield -1, sigma
        for i in range(samples):
            r = Fraction(1, i + 2)
            u = _random_interior(game, rng)
            yield i, MixedProfile(tuple(
                tuple((1 - r) * a + r * b for a, b in zip(srow, urow))
                for srow, urow in zip(sigma, u)))

    tried = 0
    for i, tau in candidates():
        tried += 1
        if not in_perturbation_set(game, sigma, tau):
            continue
        eta = PolyProfile.linear_path(sigma, tau)
        if not verify_poly_certificate(game, sigma, eta, bounds).accepted:
            continue
        try:
            rho = poly_to_lps_attempt(game, sigma, eta, bounds.ell, bounds.K)
        except NotConverted:
            rho = None
        return SearchOutcome(CERTIFICATE_FOUND, eta, rho, {
            "sample": i, "tried": tried, "seed": seed,
            "tau": [[str(v) for v in row] for row in tau]})
    return SearchOutcome(INCONCLUSIVE, evidence={"reason": "budget_exhausted", "tried": tried,
                                                 "samples": samples, "seed": seed})


def simplex_grid(k: int, denominator: int, positive: bool = False):
    """Probability vectors of length k with entries in (1/denominator) Z."""
    if positive:
        for c in compositions(denominator - k, k, denominator):
            yield tuple(Fraction(v + 1, denominator) for v in c)
    else:
        for c in compositions(denominator, k, denominator):
            yield tuple(Fraction(v, denominator) for v in c)


def _lps_tails(sigma_n, width, K_small, denominator):
    points = list(simplex_grid(width, denominator))
    tails = []
    for tail in itertools.product(points, repeat=K_small):
        levels = (tuple(sigma_n),) + tail
        if all(any(lv[s] > 0 for lv in levels) for s in range(width)):
            tails.append(levels)
    return tails


def _scan(args):
    game, sigma, per_player, start, stop, bounds = args
    sizes = [len(p) for p in per_player]
    for idx in range(start, stop):
        rem, choice = idx, []
        for size in reversed(sizes):
            rem, r = divmod(rem, size)
            choice.append(r)
        choice.reverse()
        rho = LpsProfile(tuple(Lps(per_player[n][c]) for n, c in enumerate(choice)))
        if verify_lps_certificate(game, sigma, rho, bounds).accepted:
            return idx
    return None


def exhaustive_small_search(game: Game, sigma, K_small: int, grid_denominator: int,
                            cap: int = 200_000, jobs: int = 1) -> SearchOutcome:
    """Enumerate grid LPS profiles of order K_small with level 0 pinned to sigma.

    Candidates are scanned in a fixed order (players' choices row-major);
    with ``jobs > 1`` the index range is split across processes and the
    smallest accepted index wins, so the result does not depend on ``jobs``.
    Exhaustion is reported as ``inconclusive``: the grid need not contain a
    certificate even when one exists.
    """
    if not 0 <= K_small <= 2:
        raise ValueError("K_small must be in [0, 2]")
    if not 1 <= grid_denominator <= 16:
        raise ValueError("grid_denominator must be in [1, 16]")
    sigma = _check_sigma(game, sigma)
    record = {"K_small": K_small, "denominator": grid_denominator}
    report = is_nash(game, sigma)
    if not report:
        return SearchOutcome(INCONCLUSIVE, evidence={**record, **_nash_evidence(game, report)})

    per_player = [_lps_tails(sigma[n], game.shape[n], K_small, grid_denominator)
                  for n in range(game.player_count)]
    total = math.prod(len(p) for p in per_player)
    if total > cap:
        raise BudgetExceeded(total, cap)
    bounds = compute_bounds(game, GENERAL) if game.player_count > 1 else compute_bounds(game)

    found = None
    if jobs > 1 and total > 1:
        step = -(-total // jobs)
        chunks = [(game, sigma, per_player, a, min(a + step, total), bounds)
                  for a in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = [h for h in pool.map(_scan, chunks) if h is not None]
        found = min(hits) if hits else None
    else:
        found = _scan((game, sigma, per_player, 0, total, bounds))

    record["candidates"] = total
    if found is None:
        return SearchOutcome(INCONCLUSIVE, evidence={**record, "reason": "exhausted"})
    sizes = [len(p) for p in per_player]
    rem, choice = found, []
    for size in reversed(sizes):
        rem, r = divmod(rem, size)
        choice.append(r)
    choice.reverse()
    rho = LpsProfile(tuple(Lps(per_player[n][c]) for n, c in enumerate(choice)))
    from .polyform import lps_to_poly
    return SearchOutcome(CERTIFICATE_FOUND, lps_to_poly(rho), rho, {**record, "index": found})


def _box_points(sigma_n, epsilon, denominator):
    """Completely mixed grid vectors within max-norm distance epsilon of sigma_n."""
    k = len(sigma_n)
    lo = [max(1, math.ceil((a - epsilon) * denominator)) for a in sigma_n]
    hi = [min(denominator, math.floor((a + epsilon) * denominator)) for a in sigma_n]

    def rec(j, remaining):
        if j == k - 1:
            if lo[j] <= remaining <= hi[j]:
                yield (remaining,)
            return
        rest_lo = sum(lo[j + 1:])
        rest_hi = sum(hi[j + 1:])
        for v in range(max(lo[j], remaining - rest_hi), min(hi[j], remaining - rest_lo) + 1):
            for tail in rec(j + 1, remaining - v):
                yield (v,) + tail

    if any(a > b for a, b in zip(lo, hi)):
        return []
    return list(rec(0, denominator))


def _oracle_rows(game: Game, sigma: MixedProfile, n: int):
    """Integer-scaled G_n(sigma_n, j) - G_n(s, j), straight from the payoff table."""
    m = 1 - n
    rows = []
    for s in range(game.shape[n]):
        row = []
        for j in range(game.shape[m]):
            prof = [0, 0]
            prof[m] = j
            own = Fraction(0)
            for i, p in enumerate(sigma[n]):
                prof[n] = i
                own += p * game.payoff(n, prof)
            prof[n] = s
            row.append(own - game.payoff(n, prof))
        rows.append(row)
    return _integer_rows(rows)


def _integer_rows(rows):
    scale = 1
    for r in rows:
        for a in r:
            scale = math.lcm(scale, a.denominator)
    return [[int(a * scale) for a in r] for r in rows]


def grid_tremble_oracle(game: Game, sigma, epsilons, grid_denominator: int,
                        cap: int = 2_000_000) -> list[tuple[Fraction, bool]]:
    """For each epsilon: is some completely mixed grid profile within epsilon in P?

    P is the set of profiles against which sigma_n is a weak best reply for
    every n.  Works straight from the trembling definition with no LP; an
    all-true report over shrinking epsilon is evidence of perfection.
    """
    sigma = _check_sigma(game, sigma)
    N = game.player_count
    report = []
    if N == 2:
        rows = {n: _oracle_rows(game, sigma, n) for n in range(2)}
    for eps in epsilons:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        boxes = [_box_points(sigma[n], eps, grid_denominator) for n in range(N)]
        if N == 2:
            ok = True
            for m in range(2):
                # tau_m is constrained by the opponent's inequalities only
                adv = rows[1 - m]
                if not any(all(sum(a * k for a, k in zip(r, pt)) >= 0 for r in adv)
                           for pt in boxes[m]):
                    ok = False
                    break
        else:
            total = math.prod(len(b) for b in boxes)
            if total > cap:
                raise BudgetExceeded(total, cap)
            ok = any(
                in_perturbation_set(game, sigma, [tuple(Fraction(v, grid_denominator) for v in pt)
                                                  for pt in combo])
                for combo in itertools.product(*boxes))
        report.append((eps, ok))
    return report
