"""Command-line front end.

Every subcommand prints one JSON document on stdout (or to ``--output``).
Exit status: 0 accepted / certificate found, 1 rejected / certified
imperfect, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bnd
from .certify import (ADAPTIVE_K, FIXED_K, LPS_CONDITIONS, POLY_CONDITIONS, verdict_document,
                      verify_lps_certificate, verify_poly_certificate)
from .errors import NotConverted, PerfcertError
from .fileio import lps_document, parse_rational, poly_document, read_game, read_lps, read_poly, read_profile
from .polyform import lps_to_poly, poly_to_lps_attempt
from .search import (CERTIFICATE_FOUND, CERTIFIED_IMPERFECT, INCONCLUSIVE, exhaustive_small_search,
                     find_linear_certificate_2p, grid_tremble_oracle, heuristic_linear_certificate)

EXIT_OK, EXIT_REJECTED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

_STATUS_EXIT = {CERTIFICATE_FOUND: EXIT_OK, CERTIFIED_IMPERFECT: EXIT_REJECTED,
                INCONCLUSIVE: EXIT_INCONCLUSIVE}


def _bounds_for(game, mode):
    return bnd.compute_bounds(game, None if mode == "auto" else mode)


def _outcome_document(outcome, game):
    doc = {"status": outcome.status, "evidence": outcome.evidence}
    if outcome.poly is not None:
        doc["poly"] = poly_document(outcome.poly)
    if outcome.lps is not None:
        doc["lps"] = lps_document(outcome.lps)
    return doc


def _explain(conditions, verdict):
    for key, text in conditions.items():
        state = verdict.conditions.get(key)
        mark = "skipped" if state is None else ("pass" if state else "FAIL")
        print(f"  {mark:7s} {text}", file=sys.stderr)


def cmd_bounds(args):
    game = read_game(args.game)
    b = _bounds_for(game, args.mode)
    doc = {"bounds": b.as_dict(), "players": game.player_count,
           "strategy_counts": list(game.shape)}
    doc["general_formulas"] = {
        "Z": str(bnd.z_constant(game.kappa, game.d)),
        "D": str(bnd.d_constant(game.kappa, game.d)),
        "loj_L": str(bnd.loj_constant(game.kappa, game.d)),
        "ell": str(bnd.ell_constant(game.kappa, game.d)),
        "K": str(bnd.loj_constant(game.kappa, game.d) * bnd.ell_constant(game.kappa, game.d)),
    }
    if game.player_count >= 2 and len(set(game.shape)) == 1:
        ell_bar, K_bar = bnd.crude_bounds(game.player_count, game.shape[0])
        doc["crude"] = {"ell_bar": str(ell_bar), "K_bar": str(K_bar)}
    return doc, EXIT_OK


def cmd_verify_lps(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    rho = read_lps(args.certificate, game)
    verdict = verify_lps_certificate(game, sigma, rho, _bounds_for(game, args.mode), args.k_mode)
    if args.explain:
        _explain(LPS_CONDITIONS, verdict)
    return verdict_document(verdict, game), EXIT_OK if verdict.accepted else EXIT_REJECTED


def cmd_verify_poly(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    eta = read_poly(args.certificate, game)
    verdict = verify_poly_certificate(game, sigma, eta, _bounds_for(game, args.mode))
    if args.explain:
        _explain(POLY_CONDITIONS, verdict)
    return verdict_document(verdict, game), EXIT_OK if verdict.accepted else EXIT_REJECTED


def cmd_convert(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    b = _bounds_for(game, args.mode)
    if args.lps:
        rho = read_lps(args.lps, game)
        eta = lps_to_poly(rho)
        return {"direction": "lps_to_poly", "poly": poly_document(eta)}, EXIT_OK
    eta = read_poly(args.poly, game)
    ell_cap = int(args.ell_cap) if args.ell_cap else b.ell
    K_cap = int(args.k_cap) if args.k_cap else b.K
    try:
        rho = poly_to_lps_attempt(game, sigma, eta, ell_cap, K_cap)
    except NotConverted as exc:
        return {"direction": "poly_to_lps", "status": "not_converted", "stage": exc.stage,
                "reason": exc.reason}, EXIT_INCONCLUSIVE
    return {"direction": "poly_to_lps", "status": "converted", "lps": lps_document(rho)}, EXIT_OK


def cmd_certify_2p(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    outcome = find_linear_certificate_2p(game, sigma)
    doc = _outcome_document(outcome, game)
    doc["bounds"] = bnd.compute_bounds(game, bnd.TWO_PLAYER).as_dict()
    return doc, _STATUS_EXIT[outcome.status]


def cmd_search(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    if args.method == "heuristic":
        outcome = heuristic_linear_certificate(game, sigma, args.samples, args.seed)
        knobs = {"samples": args.samples, "seed": args.seed}
    else:
        outcome = exhaustive_small_search(game, sigma, args.k_small, args.denominator,
                                          cap=args.cap, jobs=args.jobs)
        knobs = {"K_small": args.k_small, "denominator": args.denominator, "cap": args.cap,
                 "jobs": args.jobs}
    doc = _outcome_document(outcome, game)
    doc["method"] = args.method
    doc["knobs"] = knobs
    return doc, _STATUS_EXIT[outcome.status]


def cmd_oracle(args):
    game = read_game(args.game)
    sigma = read_profile(args.sigma, game)
    eps = [parse_rational(e) for e in args.epsilons.split(",")]
    report = grid_tremble_oracle(game, sigma, eps, args.denominator, cap=args.cap)
    flags = [ok for _, ok in report]
    doc = {"denominator": args.denominator,
           "report": [{"epsilon": str(e), "found": ok} for e, ok in report],
           "note": "grid evidence only; not a proof either way"}
    code = EXIT_OK if all(flags) else (EXIT_REJECTED if not any(flags) else EXIT_INCONCLUSIVE)
    return doc, code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfcert", description="Exact perfect-equilibrium certificates")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sigma=True):
        sp.add_argument("--game", required=True)
        if sigma:
            sp.add_argument("--sigma", required=True, help="profile file")
        sp.add_argument("--output", help="write the JSON document here instead of stdout")
        sp.add_argument("--explain", action="store_true",
                        help="print which certificate condition each check corresponds to")

    def mode(sp):
        sp.add_argument("--mode", default="auto", choices=["auto", *bnd.MODES],
                        help="bounds mode (auto: two_player for N=2, general otherwise)")

    sp = sub.add_parser("bounds", help="print kappa, d, Z, D, L, ell, K")
    common(sp, sigma=False)
    mode(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify-lps", help="verify an LPS certificate")
    common(sp)
    mode(sp)
    sp.add_argument("--certificate", required=True)
    sp.add_argument("--k-mode", default=FIXED_K, choices=[FIXED_K, ADAPTIVE_K])
    sp.set_defaults(func=cmd_verify_lps)

    sp = sub.add_parser("verify-poly", help="verify a polynomial certificate")
    common(sp)
    mode(sp)
    sp.add_argument("--certificate", required=True)
    sp.set_defaults(func=cmd_verify_poly)

    sp = sub.add_parser("convert", help="convert between LPS and polynomial certificates")
    common(sp)
    mode(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--lps")
    g.add_argument("--poly")
    sp.add_argument("--ell-cap")
    sp.add_argument("--k-cap")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("certify-2p", help="decide perfection in a two-player game by exact LP")
    common(sp)
    sp.set_defaults(func=cmd_certify_2p)

    sp = sub.add_parser("search", help="heuristic or exhaustive certificate search")
    common(sp)
    sp.add_argument("--method", default="heuristic", choices=["heuristic", "exhaustive"])
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k-small", type=int, default=1)
    sp.add_argument("--denominator", type=int, default=4)
    sp.add_argument("--cap", type=int, default=200_000)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("oracle", help="grid-tremble evidence straight from the definition")
    common(sp)
    sp.add_argument("--epsilons", default="1/2,1/4,1/8")
    sp.add_argument("--denominator", type=int, default=16)
    sp.add_argument("--cap", type=int, default=2_000_000)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except (PerfcertError, OSError, ValueError) as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_INPUT
        print(f"perfcert: {exc}", file=sys.stderr)
    text = json.dumps(doc, indent=2, default=_jsonable) + "\n"
    if getattr(args, "output", None) and code != EXIT_INPUT:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"not serialisable: {type(obj).__name__}")


if __name__ == "__main__":
    sys.exit(main())
