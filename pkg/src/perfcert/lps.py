"""Lexicographic probability systems and lexicographic best replies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import DimensionMismatch, InvalidInput, LevelOutOfRange, NotFullSupport, SinglePlayer
from .game_core import Game, as_fraction, contract, pure_vector


@dataclass(frozen=True)
class Lps:
    """An ordered tuple of probability vectors over one finite set."""

    levels: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        levels = tuple(tuple(as_fraction(v) for v in lv) for lv in self.levels)
        if not levels:
            raise InvalidInput("an LPS needs at least one level")
        width = len(levels[0])
        for k, lv in enumerate(levels):
            if len(lv) != width:
                raise InvalidInput(f"level {k} has {len(lv)} entries, expected {width}")
            if any(v < 0 for v in lv) or sum(lv) != 1:
                raise InvalidInput(f"level {k} is not a probability vector")
        object.__setattr__(self, "levels", levels)

    @property
    def order(self) -> int:
        return len(self.levels) - 1

    @property
    def width(self) -> int:
        return len(self.levels[0])

    def first_level(self, s: int) -> int | None:
        """First level giving strategy s positive mass, or None."""
        for k, lv in enumerate(self.levels):
            if lv[s] > 0:
                return k
        return None

    def has_full_support(self) -> bool:
        return all(self.first_level(s) is not None for s in range(self.width))


@dataclass(frozen=True)
class LpsProfile:
    lps: tuple[Lps, ...]

    def __post_init__(self):
        lps = tuple(x if isinstance(x, Lps) else Lps(tuple(x)) for x in self.lps)
        if not lps:
            raise InvalidInput("an LPS profile needs at least one player")
        orders = {x.order for x in lps}
        if len(orders) != 1:
            raise InvalidInput(f"players declare different orders {sorted(orders)}")
        object.__setattr__(self, "lps", lps)

    @classmethod
    def from_levels(cls, levels) -> LpsProfile:
        """``levels[n][k]`` is player n's level-k distribution."""
        return cls(tuple(Lps(tuple(map(tuple, lv))) for lv in levels))

    @property
    def order(self) -> int:
        return self.lps[0].order

    def __len__(self):
        return len(self.lps)

    def __getitem__(self, n) -> Lps:
        return self.lps[n]

    def __iter__(self):
        return iter(self.lps)

    def has_full_support(self) -> bool:
        return all(x.has_full_support() for x in self.lps)

    def level(self, k: int):
        return tuple(x.levels[k] for x in self.lps)


def support_level(rho: LpsProfile) -> int:
    """Worst player's first level at which the cumulative support is everything."""
    worst = 0
    for n, x in enumerate(rho):
        for s in range(x.width):
            k = x.first_level(s)
            if k is None:
                raise NotFullSupport(n, s)
            worst = max(worst, k)
    return worst


def compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Vectors of ``parts`` integers in [0, cap] summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = max(0, total - cap * (parts - 1))
    for first in range(lo, min(cap, total) + 1):
        for rest in compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def composition_count(total: int, parts: int, cap: int) -> int:
    """Closed-form count by inclusion-exclusion over coordinates above ``cap``."""
    if parts == 0:
        return int(total == 0)
    count = 0
    for j in range(parts + 1):
        rem = total - j * (cap + 1)
        if rem < 0:
            break
        count += (-1) ** j * comb(parts, j) * comb(rem + parts - 1, parts - 1)
    return count


@dataclass(frozen=True)
class InducedBelief:
    level: int
    player: int
    opponents: tuple[int, ...]
    distribution: tuple[Fraction, ...]  # row-major over the opponents' strategies
    normalizer: Fraction


def _check_level(rho: LpsProfile, k: int):
    top = rho.order * (len(rho) - 1)
    if not 0 <= k <= top:
        raise LevelOutOfRange(f"level {k} outside [0, {top}]")


def induced_belief(rho: LpsProfile, n: int, k: int) -> InducedBelief:
    """Player n's level-k belief over opponent profiles, materialised."""
    if len(rho) == 1:
        raise SinglePlayer("induced beliefs need at least one opponent")
    _check_level(rho, k)
    others = tuple(m for m in range(len(rho)) if m != n)
    comps = list(compositions(k, len(others), rho.order))
    size = 1
    for m in others:
        size *= rho[m].width
    dist = [Fraction(0)] * size
    for comp in comps:
        factors = [rho[m].levels[km] for m, km in zip(others, comp)]
        for idx, combo in enumerate(itertools.product(*factors)):
            p = Fraction(1)
            for v in combo:
                p *= v
            dist[idx] += p
    c = Fraction(1, len(comps))
    return InducedBelief(k, n, others, tuple(v * c for v in dist), c)


def belief_payoffs(game: Game, rho: LpsProfile, n: int, k: int) -> list[Fraction]:
    """G_n(s_n, mu_n^k) for every pure s_n, without materialising mu_n^k.

    Averages the pure payoffs against each product ``(rho_m^{k_m})_m`` over the
    compositions of k.  With one player the belief is the empty profile and
    only level 0 exists.
    """
    if len(rho) != game.player_count:
        raise DimensionMismatch("*", game.player_count, len(rho), what="LPS profile")
    for m, x in enumerate(rho):
        if x.width != game.shape[m]:
            raise DimensionMismatch(m, game.shape[m], x.width, what="LPS level")
    _check_level(rho, k)
    N = game.player_count
    if N == 1:
        return list(game.payoffs[n])
    others = [m for m in range(N) if m != n]
    acc = [Fraction(0)] * game.shape[n]
    count = 0
    for comp in compositions(k, N - 1, rho.order):
        weights = [None] * N
        for m, km in zip(others, comp):
            weights[m] = rho[m].levels[km]
        for s, v in enumerate(contract(game, n, weights, keep=n)):
            acc[s] += v
        count += 1
    return [v / count for v in acc]


@dataclass(frozen=True)
class LexReply:
    ok: bool
    player: int
    strategy: int | None = None
    level: int | None = None

    def __bool__(self):
        return self.ok


def lex_compare_levels(level_payoffs: Sequence[Sequence[Fraction]], tau: Sequence[Fraction],
                       player: int = 0) -> LexReply:
    """Lexicographic best-reply test given per-level pure payoff vectors.

    ``level_payoffs[k][s]`` is the payoff of pure s against level k.  Only the
    per-level signs of differences matter, so any positive rescaling of a
    level leaves the verdict unchanged.
    """
    tau = [as_fraction(v) for v in tau]
    own = [sum((w * v for w, v in zip(tau, lv)), Fraction(0)) for lv in level_payoffs]
    for s in range(len(tau)):
        for k, lv in enumerate(level_payoffs):
            diff = own[k] - lv[s]
            if diff > 0:
                break
            if diff < 0:
                return LexReply(False, player, s, k)
    return LexReply(True, player)


def lex_best_reply(game: Game, rho: LpsProfile, n: int, tau_n, k: int) -> LexReply:
    """Is tau_n lexicographically optimal against mu_n^0, ..., mu_n^k?

    On failure the reply names the first pure strategy (by index) that beats
    tau_n and the level where it strictly does so.
    """
    if isinstance(tau_n, int):
        tau_n = pure_vector(game.shape[n], tau_n)
    if len(tau_n) != game.shape[n]:
        raise DimensionMismatch(n, game.shape[n], len(tau_n))
    _check_level(rho, k)
    levels = [belief_payoffs(game, rho, n, j) for j in range(k + 1)]
    return lex_compare_levels(levels, tau_n, player=n)
