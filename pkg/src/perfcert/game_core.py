"""Finite normal-form games with exact rational payoffs.

Payoffs are kept as one dense row-major tensor per player.  Every
evaluation goes through :func:`contract`, which sums out the opponents'
axes one at a time and works for any weight type that supports ``+`` and
``*`` with :class:`~fractions.Fraction` (plain rationals, or the
polynomials of :mod:`perfcert.polyform`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import DimensionMismatch, InvalidInput


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class Game:
    """An N-player game in normal form.

    ``payoffs[n]`` is player n's payoff tensor flattened in row-major order
    over pure profiles (player 0 is the slowest axis).
    """

    strategy_labels: tuple[tuple[str, ...], ...]
    payoffs: tuple[tuple[Fraction, ...], ...]
    player_labels: tuple[str, ...] = ()
    shape: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        labels = tuple(tuple(str(s) for s in row) for row in self.strategy_labels)
        object.__setattr__(self, "strategy_labels", labels)
        if not labels:
            raise InvalidInput("a game needs at least one player")
        for n, row in enumerate(labels):
            if not row:
                raise InvalidInput(f"player {n} has no strategies")
            if len(set(row)) != len(row):
                raise InvalidInput(f"player {n} has duplicate strategy labels")
        shape = tuple(len(row) for row in labels)
        object.__setattr__(self, "shape", shape)
        players = tuple(self.player_labels) or tuple(str(n + 1) for n in range(len(shape)))
        if len(players) != len(shape):
            raise InvalidInput("player_labels and strategy_labels disagree on N")
        object.__setattr__(self, "player_labels", players)

        size = prod(shape)
        if len(self.payoffs) != len(shape):
            raise InvalidInput(f"expected {len(shape)} payoff tensors, got {len(self.payoffs)}")
        tensors = []
        for n, tensor in enumerate(self.payoffs):
            if len(tensor) != size:
                raise InvalidInput(
                    f"payoff tensor of player {n} has {len(tensor)} entries, expected {size}")
            tensors.append(tuple(as_fraction(v) for v in tensor))
        object.__setattr__(self, "payoffs", tuple(tensors))

    @classmethod
    def from_function(cls, strategy_labels, payoff, player_labels=()):
        """Build a game from ``payoff(profile) -> N payoffs`` over index profiles."""
        shape = [len(row) for row in strategy_labels]
        n_players = len(shape)
        tensors = [[] for _ in range(n_players)]
        for profile in itertools.product(*(range(k) for k in shape)):
            values = payoff(profile)
            if len(values) != n_players:
                raise InvalidInput(f"profile {profile}: expected {n_players} payoffs")
            for n, v in enumerate(values):
                tensors[n].append(as_fraction(v))
        return cls(tuple(map(tuple, strategy_labels)), tuple(map(tuple, tensors)), tuple(player_labels))

    @property
    def player_count(self) -> int:
        return len(self.shape)

    @property
    def kappa(self) -> int:
        """Total number of pure strategies over all players."""
        return sum(self.shape)

    @property
    def d(self) -> int:
        return self.player_count - 1

    def profiles(self):
        return itertools.product(*(range(k) for k in self.shape))

    def flat_index(self, profile: Sequence[int]) -> int:
        idx = 0
        for k, s in zip(self.shape, profile):
            idx = idx * k + s
        return idx

    def payoff(self, n: int, profile: Sequence[int]) -> Fraction:
        return self.payoffs[n][self.flat_index(profile)]

    def shifted(self, n: int, c) -> Game:
        """Copy of the game with ``c`` added to every payoff of player n."""
        c = as_fraction(c)
        tensors = list(self.payoffs)
        tensors[n] = tuple(v + c for v in tensors[n])
        return Game(self.strategy_labels, tuple(tensors), self.player_labels)


@dataclass(frozen=True)
class MixedProfile:
    """One exact rational vector per player (not necessarily probabilities)."""

    vectors: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "vectors", tuple(tuple(as_fraction(v) for v in row) for row in self.vectors))

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, n):
        return self.vectors[n]

    def __iter__(self):
        return iter(self.vectors)

    def is_probability(self) -> bool:
        return all(all(v >= 0 for v in row) and sum(row) == 1 for row in self.vectors)

    def is_completely_mixed(self) -> bool:
        return self.is_probability() and all(v > 0 for row in self.vectors for v in row)

    def support(self, n: int) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.vectors[n]) if v != 0)


def as_profile(x) -> MixedProfile:
    return x if isinstance(x, MixedProfile) else MixedProfile(tuple(tuple(row) for row in x))


def pure_vector(size: int, index: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == index)) for i in range(size))


def check_dimensions(game: Game, x, skip: int | None = None):
    if len(x) != game.player_count:
        raise DimensionMismatch("*", game.player_count, len(x), what="profile")
    for m, (k, row) in enumerate(zip(game.shape, x)):
        if m != skip and len(row) != k:
            raise DimensionMismatch(m, k, len(row))


def contract(game: Game, n: int, weights, keep: int | None = None) -> list:
    """Sum player n's payoff tensor against per-player weights.

    Every axis except ``keep`` is summed out: axis m contributes the factor
    ``weights[m][s_m]``.  Returns the list indexed by the kept player's
    strategies (a single-element list when ``keep`` is None).  Entries are
    ``0`` (int) when every contribution vanished.
    """
    shape = list(game.shape)
    cur = list(game.payoffs[n])
    for m in reversed(range(len(shape))):
        if m == keep:
            continue
        w = weights[m]
        size = shape[m]
        inner = prod(shape[m + 1:])
        outer = len(cur) // (size * inner)
        nxt = []
        for o in range(outer):
            base = o * size * inner
            for i in range(inner):
                acc = 0
                for j in range(size):
                    v = cur[base + j * inner + i]
                    wj = w[j]
                    if v and wj:
                        acc = acc + wj * v
                nxt.append(acc)
        cur = nxt
        shape[m] = 1
    return cur


def multilinear_payoff(game: Game, n: int, x) -> Fraction:
    """Player n's multilinear payoff extension evaluated at arbitrary rational vectors."""
    check_dimensions(game, x)
    weights = [[as_fraction(v) for v in row] for row in x]
    return Fraction(contract(game, n, weights)[0])


def pure_payoffs(game: Game, n: int, x) -> list[Fraction]:
    """G_n(s_n, x_{-n}) for every pure s_n; ``x[n]`` is ignored."""
    check_dimensions(game, x, skip=n)
    weights = [None if m == n else [as_fraction(v) for v in row] for m, row in enumerate(x)]
    return [Fraction(v) for v in contract(game, n, weights, keep=n)]


def best_reply_set(game: Game, n: int, profile) -> frozenset[int]:
    """Pure best replies of player n against the opponents in ``profile``.

    ``profile`` is a full profile; player n's own entry is ignored (it may be
    ``None``).
    """
    values = pure_payoffs(game, n, profile)
    top = max(values)
    return frozenset(s for s, v in enumerate(values) if v == top)


@dataclass(frozen=True)
class NashViolation:
    player: int
    strategy: int
    gain: Fraction


@dataclass(frozen=True)
class NashReport:
    violations: tuple[NashViolation, ...]

    @property
    def is_nash(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.is_nash


def is_nash(game: Game, sigma) -> NashReport:
    """Exact Nash test; the report lists every profitable pure deviation."""
    sigma = as_profile(sigma)
    check_dimensions(game, sigma)
    violations = []
    for n in range(game.player_count):
        values = pure_payoffs(game, n, sigma)
        own = sum((p * v for p, v in zip(sigma[n], values)), Fraction(0))
        for s, v in enumerate(values):
            if v > own:
                violations.append(NashViolation(n, s, v - own))
    return NashReport(tuple(violations))


def pure_nash_profiles(game: Game) -> list[tuple[int, ...]]:
    out = []
    for profile in game.profiles():
        ok = True
        for n in range(game.player_count):
            idx = game.flat_index(profile)
            own = game.payoffs[n][idx]
            for s in range(game.shape[n]):
                alt = list(profile)
                alt[n] = s
                if game.payoff(n, alt) > own:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(profile)
    return out


def pure_profile(game: Game, profile: Sequence[int]) -> MixedProfile:
    return MixedProfile(tuple(pure_vector(k, s) for k, s in zip(game.shape, profile)))
