"""Exact integer evaluation of the certificate order bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeTooSmall, ModeMismatch
from .game_core import Game

GENERAL = "general"
TWO_PLAYER = "two_player"
CONVEX_P = "convex_P"
DEGENERATE = "degenerate"
#: caller-supplied caps with no formula behind them
CUSTOM = "custom"
MODES = (GENERAL, TWO_PLAYER, CONVEX_P)


def z_constant(kappa: int, d: int) -> int:
    return (2 * d + 6) * (2 * d + 5) ** (kappa - 1)


def d_constant(kappa: int, d: int) -> int:
    return 5 * (kappa * (2 * d + 4) + 2) * z_constant(kappa, d)


def loj_constant(kappa: int, d: int) -> int:
    """The Lojasiewicz-type multiplier d (6d - 3)^(2 kappa - 1)."""
    return d * (6 * d - 3) ** (2 * kappa - 1)


def ell_constant(kappa: int, d: int) -> int:
    z = z_constant(kappa, d)
    return 2 * d * (z * d_constant(kappa, d)) ** 2 * (1 + z)


def curve_selection_order(kappa: int, d: int) -> int:
    """Order bound for the selected curve, written as 2 d Z^2 D^2 (1 + Z)."""
    z, dd = z_constant(kappa, d), d_constant(kappa, d)
    return 2 * d * z ** 2 * dd ** 2 * (1 + z)


@dataclass(frozen=True)
class BoundSet:
    kappa: int
    d: int
    Z: int
    D: int
    loj_L: int
    ell: int
    K: int
    mode: str

    @classmethod
    def caps(cls, ell: int, K: int) -> BoundSet:
        """Bare (ell, K) caps, e.g. for conversions with caller-chosen limits."""
        return cls(0, 0, 0, 0, 0, int(ell), int(K), CUSTOM)

    def as_dict(self) -> dict[str, str]:
        """Decimal-string rendering; K has far too many digits for any fixed-width type."""
        return {"kappa": str(self.kappa), "d": str(self.d), "Z": str(self.Z), "D": str(self.D),
                "loj_L": str(self.loj_L), "ell": str(self.ell), "K": str(self.K),
                "mode": self.mode}


def compute_bounds(game: Game, mode: str | None = None) -> BoundSet:
    """Evaluate kappa, d, Z, D, L, ell and K for ``game``.

    ``mode=None`` picks ``two_player`` for N = 2 and ``general`` otherwise.
    ``convex_P`` is a caller assertion (e.g. polymatrix games).  One-player
    games are reported in ``degenerate`` mode with ell = K = 0.
    """
    N = game.player_count
    kappa, d = game.kappa, game.d
    if mode is None:
        mode = TWO_PLAYER if N == 2 else GENERAL
    if mode not in MODES:
        raise ValueError(f"unknown bounds mode {mode!r}")
    if mode == TWO_PLAYER and N != 2:
        raise ModeMismatch(f"two_player mode requested for a {N}-player game")
    Z, D, L = z_constant(kappa, d), d_constant(kappa, d), loj_constant(kappa, d)
    if N == 1:
        return BoundSet(kappa, d, Z, D, L, 0, 0, DEGENERATE)
    if mode in (TWO_PLAYER, CONVEX_P):
        return BoundSet(kappa, d, Z, D, L, 1, 1, mode)
    ell = ell_constant(kappa, d)
    return BoundSet(kappa, d, Z, D, L, ell, L * ell, GENERAL)


def crude_bounds(N: int, a: int) -> tuple[int, int]:
    """Closed-form upper bounds (ell_bar, K_bar) for N players with a actions each."""
    if N < 2 or a < 1:
        raise ValueError("crude bounds need N >= 2 and a >= 1")
    ell_bar = 100 * N ** 3 * a ** 2 * (6 * a * N) ** (6 * a * N)
    return ell_bar, (6 * N) ** (2 * a * N) * ell_bar


def adaptive_K(rho, bounds: BoundSet) -> int:
    """Test order support_level(rho) * L."""
    from .lps import support_level

    return support_level(rho) * bounds.loj_L


def loj_exponent_bound(degree: int, dim: int) -> int:
    """degree * (6 degree - 3)^(dim - 1) for a polynomial map on dim variables."""
    if degree < 2:
        raise DegreeTooSmall(f"degree {degree} < 2")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return degree * (6 * degree - 3) ** (dim - 1)
