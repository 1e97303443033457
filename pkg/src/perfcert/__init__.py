"""Exact certificates for trembling-hand perfect equilibria of normal-form games."""

from .bounds import BoundSet, adaptive_K, compute_bounds, crude_bounds, loj_exponent_bound
from .certify import Verdict, verify_lps_certificate, verify_poly_certificate
from .game_core import (Game, MixedProfile, best_reply_set, is_nash, multilinear_payoff,
                        pure_profile)
from .lps import Lps, LpsProfile, induced_belief, lex_best_reply, support_level
from .polyform import (INFINITY, PolyProfile, RatPoly, Sign, lps_to_poly, map_order, order,
                       payoff_compose, poly_best_reply, poly_to_lps_attempt, series_sign)
from .search import (SearchOutcome, exhaustive_small_search, find_linear_certificate_2p,
                     grid_tremble_oracle, heuristic_linear_certificate)

__all__ = [
    "BoundSet", "adaptive_K", "compute_bounds", "crude_bounds", "loj_exponent_bound",
    "Verdict", "verify_lps_certificate", "verify_poly_certificate",
    "Game", "MixedProfile", "best_reply_set", "is_nash", "multilinear_payoff", "pure_profile",
    "Lps", "LpsProfile", "induced_belief", "lex_best_reply", "support_level",
    "INFINITY", "PolyProfile", "RatPoly", "Sign", "lps_to_poly", "map_order", "order",
    "payoff_compose", "poly_best_reply", "poly_to_lps_attempt", "series_sign",
    "SearchOutcome", "exhaustive_small_search", "find_linear_certificate_2p",
    "grid_tremble_oracle", "heuristic_linear_certificate",
]
