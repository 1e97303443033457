"""Univariate rational polynomials viewed as germs at t = 0+.

A polynomial strategy profile assigns one :class:`RatPoly` to every pure
strategy of every player.  Order and sign are the power-series notions:
the order is the index of the first nonzero coefficient and the sign is
the sign of that coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InvalidInput, NotConverted, NotFullSupport, ZeroCoordinate
from .game_core import Game, as_fraction, as_profile, contract, pure_vector

#: order of the zero polynomial
INFINITY = math.inf


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class RatPoly:
    """Dense polynomial with exact rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [as_fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, coeff, degree: int) -> RatPoly:
        return cls([0] * degree + [coeff])

    @classmethod
    def _lift(cls, other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls([other])
        return None

    def __repr__(self):
        return f"RatPoly({[str(a) for a in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and a == 1:
                terms.append(mono)
            elif mono and a == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{a}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other):
        other = self._lift(other)
        return other is not None and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        # zero polynomial has degree 0 by convention
        return max(len(self.coeffs) - 1, 0)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RatPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([a * other for a in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc


def as_poly(f) -> RatPoly:
    return f if isinstance(f, RatPoly) else RatPoly(f)


def order(f) -> int | float:
    """Index of the first nonzero coefficient; :data:`INFINITY` for zero."""
    f = as_poly(f)
    for k, a in enumerate(f.coeffs):
        if a != 0:
            return k
    return INFINITY


def series_sign(f) -> Sign:
    f = as_poly(f)
    o = order(f)
    if o == INFINITY:
        return Sign.ZERO
    return Sign.POSITIVE if f.coeffs[o] > 0 else Sign.NEGATIVE


@dataclass(frozen=True)
class PolyProfile:
    """``polys[n][s]`` is the curve coordinate of pure strategy s of player n."""

    polys: tuple[tuple[RatPoly, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "polys", tuple(tuple(as_poly(f) for f in row) for row in self.polys))

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, n):
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def at(self, t) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(f(t) for f in row) for row in self.polys)

    def max_degree(self, n: int) -> int:
        return max(f.degree for f in self.polys[n])

    @classmethod
    def linear_path(cls, sigma, tau) -> PolyProfile:
        """The segment (1 - t) sigma + t tau."""
        sigma, tau = as_profile(sigma), as_profile(tau)
        return cls(tuple(
            tuple(RatPoly([a, b - a]) for a, b in zip(srow, trow))
            for srow, trow in zip(sigma, tau)))

    @classmethod
    def constant(cls, sigma) -> PolyProfile:
        return cls(tuple(tuple(RatPoly([a]) for a in row) for row in as_profile(sigma)))


def map_order(eta: PolyProfile) -> int:
    """Largest coordinate order of a polynomial profile."""
    worst = 0
    for n, row in enumerate(eta):
        for s, f in enumerate(row):
            o = order(f)
            if o == INFINITY:
                raise ZeroCoordinate(n, s)
            worst = max(worst, o)
    return worst


def _check_profile(game: Game, eta: PolyProfile, skip=None):
    if len(eta) != game.player_count:
        raise DimensionMismatch("*", game.player_count, len(eta), what="polynomial profile")
    for m, (k, row) in enumerate(zip(game.shape, eta)):
        if m != skip and len(row) != k:
            raise DimensionMismatch(m, k, len(row), what="polynomial vector")


def pure_payoff_polys(game: Game, n: int, eta: PolyProfile) -> list[RatPoly]:
    """G_n(s_n, eta_{-n}(t)) for every pure s_n."""
    _check_profile(game, eta, skip=n)
    weights = [None if m == n else list(row) for m, row in enumerate(eta)]
    return [as_poly([v]) if not isinstance(v, RatPoly) else v
            for v in contract(game, n, weights, keep=n)]


def _own_weights(game: Game, n: int, strategy) -> tuple[Fraction, ...]:
    if isinstance(strategy, int):
        if not 0 <= strategy < game.shape[n]:
            raise DimensionMismatch(n, game.shape[n], strategy, what="pure strategy index")
        return pure_vector(game.shape[n], strategy)
    vec = tuple(as_fraction(v) for v in strategy)
    if len(vec) != game.shape[n]:
        raise DimensionMismatch(n, game.shape[n], len(vec))
    return vec


def payoff_compose(game: Game, n: int, strategy, eta: PolyProfile) -> RatPoly:
    """Player n's payoff polynomial when playing ``strategy`` against eta_{-n}.

    ``strategy`` is a pure strategy index or a mixed vector over S_n.
    """
    own = _own_weights(game, n, strategy)
    values = pure_payoff_polys(game, n, eta)
    acc = RatPoly()
    for w, p in zip(own, values):
        if w:
            acc = acc + p * w
    return acc


@dataclass(frozen=True)
class PolyReply:
    ok: bool
    player: int
    strategy: int | None = None
    order: int | None = None
    difference: RatPoly | None = None

    def __bool__(self):
        return self.ok


def poly_best_reply(game: Game, n: int, sigma_n, eta: PolyProfile, r: int) -> PolyReply:
    """Is sigma_n a best reply of order r against eta?

    For every pure s_n the difference G_n(sigma_n, eta) - G_n(s_n, eta) must
    be nonnegative as a germ, or vanish through degree r.  ``r`` may be an
    arbitrarily large integer.
    """
    if r < 0:
        raise ValueError("order threshold must be non-negative")
    own = _own_weights(game, n, sigma_n)
    values = pure_payoff_polys(game, n, eta)
    mine = RatPoly()
    for w, p in zip(own, values):
        if w:
            mine = mine + p * w
    for s, p in enumerate(values):
        delta = mine - p
        if series_sign(delta) != Sign.NEGATIVE:
            continue
        o = order(delta)
        if o >= r + 1:
            continue
        return PolyReply(False, n, s, o, delta)
    return PolyReply(True, n)


def lps_to_poly(rho) -> PolyProfile:
    """eta_{n,s}(t) = sum_k rho_n^k(s) t^k for a full-support LPS profile."""
    from .lps import support_level

    support_level(rho)  # raises NotFullSupport
    return PolyProfile(tuple(
        tuple(RatPoly([level[s] for level in lps.levels]) for s in range(len(lps.levels[0])))
        for lps in rho))


def _linear_candidate(sigma, eta: PolyProfile):
    if any(f.degree > 1 for row in eta for f in row):
        return None
    if all(f.degree == 0 for row in eta for f in row):
        return [[tuple(srow)] for srow in sigma]
    tau = eta.at(1)
    for row in tau:
        if any(v < 0 for v in row) or sum(row) != 1:
            return None
    return [[tuple(srow), tuple(trow)] for srow, trow in zip(sigma, tau)]


def _extracted_candidate(eta: PolyProfile):
    depth = max(max(f.degree for f in row) for row in eta)
    out = []
    for n, row in enumerate(eta):
        levels = []
        for k in range(depth + 1):
            clipped = [max(f[k], Fraction(0)) for f in row]
            total = sum(clipped)
            if total == 0:
                if k == 0:
                    raise NotConverted("extraction", f"player {n}: constant terms vanish")
                # nothing positive at this degree; keep the previous belief
                levels.append(levels[-1])
                continue
            levels.append(tuple(v / total for v in clipped))
        out.append(levels)
    return out


def poly_to_lps_attempt(game: Game, sigma, eta: PolyProfile, ell_cap: int, K_cap: int):
    """Turn a verified polynomial certificate into an LPS certificate.

    Tries, in order: the two-level LPS (sigma, eta(1)) when eta is a linear
    path; per-degree coefficient vectors with negative entries clipped and
    renormalised.  Every candidate must pass the LPS verifier with the same
    caps; otherwise :class:`NotConverted` is raised naming the last stage.
    """
    from .bounds import BoundSet
    from .certify import verify_lps_certificate, verify_poly_certificate
    from .lps import Lps, LpsProfile

    sigma = as_profile(sigma)
    caps = BoundSet.caps(ell_cap, K_cap)
    check = verify_poly_certificate(game, sigma, eta, caps)
    if not check.accepted:
        raise InvalidInput(f"polynomial certificate rejected: {check.summary()}")

    stages = [("linear_path", lambda: _linear_candidate(sigma, eta)),
              ("extraction", lambda: _extracted_candidate(eta))]
    last = None
    for stage, build in stages:
        try:
            levels = build()
        except NotConverted as exc:
            last = exc
            continue
        if levels is None:
            last = NotConverted(stage, "not applicable")
            continue
        rho = LpsProfile(tuple(Lps(tuple(lv)) for lv in levels))
        try:
            verdict = verify_lps_certificate(game, sigma, rho, caps)
        except (NotFullSupport, ValueError) as exc:
            last = NotConverted(stage, str(exc))
            continue
        if verdict.accepted:
            return rho
        last = NotConverted(stage, f"candidate rejected: {verdict.summary()}")
    raise NotConverted("verification" if last is None else last.stage,
                       "no candidate LPS verified" if last is None else last.reason)
