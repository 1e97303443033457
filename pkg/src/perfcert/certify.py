"""Exact verification of LPS and polynomial perfection certificates.

An accepted certificate proves that sigma is a perfect equilibrium.  A
rejection only says that *this* certificate fails; it is never evidence
that sigma is imperfect (see :mod:`perfcert.search` for that).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import DEGENERATE, BoundSet, adaptive_K
from .errors import DimensionMismatch, InvalidInput, OrderMismatch, ZeroCoordinate
from .game_core import Game, as_profile, check_dimensions
from .lps import LpsProfile, lex_best_reply, support_level
from .polyform import PolyProfile, Sign, map_order, order, poly_best_reply, series_sign

FIXED_K = "fixed_K"
ADAPTIVE_K = "adaptive_K"

LPS_CONDITIONS = {
    "support": "every strategy appears at some level and the support level is at most ell",
    "anchor": "level 0 of every player's LPS equals sigma_n",
    "best_reply": "sigma_n is a lexicographic best reply of order K",
}
POLY_CONDITIONS = {
    "positivity": "every coordinate is positive near 0 and the order of eta is at most ell",
    "anchor": "eta(0) equals sigma",
    "best_reply": "sigma_n is a best reply of order K against eta",
}


@dataclass(frozen=True)
class Diagnostic:
    condition: str
    message: str
    player: int | None = None
    strategy: int | None = None
    level: int | None = None


@dataclass(frozen=True)
class Verdict:
    kind: str  # "lps" or "poly"
    conditions: dict[str, bool | None]
    diagnostics: tuple[Diagnostic, ...]
    bounds: BoundSet
    mode: str | None = None
    tested_order: int | None = None
    order_capped: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return all(v is True for v in self.conditions.values())

    def __bool__(self):
        return self.accepted

    def summary(self) -> str:
        if self.accepted:
            return "accepted"
        return "rejected: " + "; ".join(f"[{d.condition}] {d.message}" for d in self.diagnostics)


def _check_sigma(game: Game, sigma):
    sigma = as_profile(sigma)
    check_dimensions(game, sigma)
    if not sigma.is_probability():
        raise InvalidInput("sigma is not a probability profile")
    return sigma


def verify_lps_certificate(game: Game, sigma, rho: LpsProfile, bounds: BoundSet,
                           mode: str = FIXED_K) -> Verdict:
    """Check an LPS certificate for perfection of sigma.

    Conditions are evaluated in order and all of them are reported.  The
    best-reply test runs at min(K_eff, K_rho (N - 1)) where K_eff is
    ``bounds.K`` (fixed) or ``support_level(rho) * L`` (adaptive); induced
    beliefs do not exist beyond K_rho (N - 1).
    """
    if mode not in (FIXED_K, ADAPTIVE_K):
        raise ValueError(f"unknown verification mode {mode!r}")
    sigma = _check_sigma(game, sigma)
    if len(rho) != game.player_count:
        raise DimensionMismatch("*", game.player_count, len(rho), what="LPS profile")
    for n, x in enumerate(rho):
        if x.width != game.shape[n]:
            raise DimensionMismatch(n, game.shape[n], x.width, what="LPS level")
    if rho.order > bounds.K and bounds.mode != DEGENERATE:
        raise OrderMismatch(f"certificate has order {rho.order} but the bounds allow K = {bounds.K}")

    conds: dict[str, bool | None] = {}
    diags = []

    level = None
    missing = [(n, s) for n, x in enumerate(rho) for s in range(x.width) if x.first_level(s) is None]
    if missing:
        n, s = missing[0]
        conds["support"] = False
        diags.append(Diagnostic("support", "strategy never receives positive mass", n, s))
    else:
        level = support_level(rho)
        # one player: no opponents to tremble, so the support-level cap is void
        conds["support"] = bounds.mode == DEGENERATE or level <= bounds.ell
        if not conds["support"]:
            worst = next((n, s) for n, x in enumerate(rho) for s in range(x.width)
                         if x.first_level(s) == level)
            diags.append(Diagnostic("support", f"support level {level} exceeds ell = {bounds.ell}",
                                    worst[0], worst[1], level))

    conds["anchor"] = True
    for n, x in enumerate(rho):
        if x.levels[0] != tuple(sigma[n]):
            conds["anchor"] = False
            s = next(i for i, (a, b) in enumerate(zip(x.levels[0], sigma[n])) if a != b)
            diags.append(Diagnostic("anchor", "level 0 differs from sigma", n, s, 0))

    if mode == ADAPTIVE_K and level is None:
        k_eff = None
    else:
        k_eff = bounds.K if mode == FIXED_K else adaptive_K(rho, bounds)
    tested, capped = None, False
    if k_eff is None:
        conds["best_reply"] = None
        diags.append(Diagnostic("best_reply", "adaptive order undefined without full support"))
    else:
        top = rho.order * (game.player_count - 1)
        tested = min(k_eff, top)
        capped = tested < k_eff
        conds["best_reply"] = True
        for n in range(game.player_count):
            reply = lex_best_reply(game, rho, n, sigma[n], tested)
            if not reply:
                conds["best_reply"] = False
                diags.append(Diagnostic("best_reply", "a pure strategy is lexicographically better",
                                        n, reply.strategy, reply.level))
    return Verdict("lps", conds, tuple(diags), bounds, mode, tested, capped,
                   {"support_level": level, "K_effective": k_eff})


def verify_poly_certificate(game: Game, sigma, eta: PolyProfile, bounds: BoundSet) -> Verdict:
    """Check a polynomial-curve certificate for perfection of sigma.

    An eventually-negative coordinate fails positivity; an identically zero
    one raises :class:`ZeroCoordinate`.  The best-reply threshold is
    ``bounds.K`` compared as an exact integer.
    """
    sigma = _check_sigma(game, sigma)
    if len(eta) != game.player_count:
        raise DimensionMismatch("*", game.player_count, len(eta), what="polynomial profile")
    for n, row in enumerate(eta):
        if len(row) != game.shape[n]:
            raise DimensionMismatch(n, game.shape[n], len(row), what="polynomial vector")

    conds: dict[str, bool | None] = {}
    diags = []

    for n, row in enumerate(eta):
        for s, f in enumerate(row):
            if not f:
                raise ZeroCoordinate(n, s)
    bad = [(n, s, f) for n, row in enumerate(eta) for s, f in enumerate(row)
           if series_sign(f) != Sign.POSITIVE]
    eta_order = None
    if bad:
        conds["positivity"] = False
        for n, s, f in bad:
            diags.append(Diagnostic("positivity", f"coordinate {f} is negative near 0",
                                    n, s, order(f)))
    else:
        eta_order = map_order(eta)
        conds["positivity"] = bounds.mode == DEGENERATE or eta_order <= bounds.ell
        if not conds["positivity"]:
            diags.append(Diagnostic("positivity", f"order {eta_order} exceeds ell = {bounds.ell}",
                                    level=eta_order))

    conds["anchor"] = True
    at0 = eta.at(0)
    for n in range(game.player_count):
        if at0[n] != tuple(sigma[n]):
            conds["anchor"] = False
            s = next(i for i, (a, b) in enumerate(zip(at0[n], sigma[n])) if a != b)
            diags.append(Diagnostic("anchor", "eta(0) differs from sigma", n, s, 0))

    conds["best_reply"] = True
    for n in range(game.player_count):
        reply = poly_best_reply(game, n, sigma[n], eta, bounds.K)
        if not reply:
            conds["best_reply"] = False
            diags.append(Diagnostic("best_reply", f"payoff difference {reply.difference} is negative",
                                    n, reply.strategy, reply.order))
    return Verdict("poly", conds, tuple(diags), bounds, None, bounds.K, False,
                   {"map_order": eta_order})


def verdict_document(verdict: Verdict, game: Game | None = None) -> dict:
    """Plain-data rendering of a verdict (all big integers as decimal strings)."""
    def label(player, strategy):
        if game is None or player is None:
            return player, strategy
        p = game.player_labels[player]
        s = None if strategy is None else game.strategy_labels[player][strategy]
        return p, s

    diags = []
    for d in verdict.diagnostics:
        p, s = label(d.player, d.strategy)
        diags.append({"condition": d.condition, "message": d.message, "player": p,
                      "strategy": s, "level": None if d.level is None else str(d.level)})
    extra = {k: (None if v is None else str(v)) for k, v in verdict.extra.items()}
    return {
        "certificate": verdict.kind,
        "verdict": "accepted" if verdict.accepted else "rejected",
        "mode": verdict.mode,
        "bounds": verdict.bounds.as_dict(),
        "conditions": {k: (None if v is None else ("pass" if v else "fail"))
                       for k, v in verdict.conditions.items()},
        "tested_order": None if verdict.tested_order is None else str(verdict.tested_order),
        "order_capped": verdict.order_capped,
        "diagnostics": diags,
        "details": extra,
        "note": ("acceptance proves sigma perfect; rejection concerns this certificate only"),
    }
