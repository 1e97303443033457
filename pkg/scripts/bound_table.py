"""Print the order bounds for N players with a actions each.

    python scripts/bound_table.py --players 2 3 4 --actions 2 3
"""

import argparse

from perfcert.bounds import crude_bounds, d_constant, ell_constant, loj_constant, z_constant


def row(N, a):
    kappa, d = N * a, N - 1
    ell = ell_constant(kappa, d)
    K = loj_constant(kappa, d) * ell
    ell_bar, K_bar = crude_bounds(N, a)
    return {"N": N, "a": a, "Z": z_constant(kappa, d), "D": d_constant(kappa, d), "ell": ell, "K": K,
            "ell_bar": ell_bar, "K_bar": K_bar}


def digits(x):
    s = str(x)
    return s if len(s) <= 12 else f"{s[:6]}..({len(s)} digits)"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--players", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--actions", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    cols = ["N", "a", "Z", "D", "ell", "K", "ell_bar", "K_bar"]
    print("\t".join(cols))
    for N in args.players:
        for a in args.actions:
            r = row(N, a)
            print("\t".join(digits(r[c]) for c in cols))


if __name__ == "__main__":
    main()
