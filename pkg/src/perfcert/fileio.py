"""Reading and writing games, profiles and certificates.

All inputs are YAML documents (JSON is accepted too).  Every scalar is read
as text and parsed as an exact rational ("p/q" or an integer), so errors
can point at the file, line and field that caused them.

Game::

    players: [Row, Column]
    strategies: [[T, B], [L, R]]
    payoffs:
      T,L: [1, 1]
      ...

Profile: ``profile: [[1, 0], [1, 0]]`` (one probability vector per player).
LPS certificate: ``lps: [[[1, 0], [1/2, 1/2]], ...]`` (per player, K + 1 levels).
Polynomial certificate: ``poly: [[[1, -1/2], [0, 1/2]], ...]`` (per player,
per strategy, ascending coefficients).
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from pathlib import Path

import yaml
from yaml.nodes import MappingNode, ScalarNode, SequenceNode

from .errors import ParseError
from .game_core import Game, MixedProfile
from .lps import Lps, LpsProfile
from .polyform import PolyProfile, RatPoly

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(str(text))
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


class _Reader:
    def __init__(self, path, text=None):
        self.path = str(path)
        if text is None:
            text = Path(path).read_text()
        try:
            self.root = yaml.compose(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ParseError(self.path, None if mark is None else mark.line + 1, "<document>",
                             f"not valid YAML: {getattr(exc, 'problem', exc)}") from None
        if not isinstance(self.root, MappingNode):
            raise ParseError(self.path, 1, "<document>", "expected a mapping at top level")

    def fail(self, node, field, message):
        line = None if node is None else node.start_mark.line + 1
        raise ParseError(self.path, line, field, message)

    def mapping(self, node, field):
        if not isinstance(node, MappingNode):
            self.fail(node, field, "expected a mapping")
        out = {}
        for k, v in node.value:
            if not isinstance(k, ScalarNode):
                self.fail(k, field, "mapping keys must be scalars")
            if k.value in out:
                self.fail(k, f"{field}.{k.value}", "duplicate key")
            out[k.value] = (k, v)
        return out

    def field(self, name):
        fields = self.mapping(self.root, "<document>")
        if name not in fields:
            self.fail(self.root, name, "missing field")
        return fields[name][1]

    def seq(self, node, field):
        if not isinstance(node, SequenceNode):
            self.fail(node, field, "expected a list")
        return node.value

    def text(self, node, field):
        if not isinstance(node, ScalarNode):
            self.fail(node, field, "expected a scalar")
        return node.value

    def rational(self, node, field):
        try:
            return parse_rational(self.text(node, field))
        except ValueError as exc:
            self.fail(node, field, str(exc))

    def vector(self, node, field):
        return [self.rational(v, f"{field}[{i}]") for i, v in enumerate(self.seq(node, field))]

    def probability(self, node, field, player):
        vec = self.vector(node, field)
        if any(v < 0 for v in vec):
            self.fail(node, field, f"player {player}: negative probability")
        total = sum(vec, Fraction(0))
        if total != 1:
            self.fail(node, field, f"player {player}: probabilities sum to {total}, not 1")
        return vec


def read_game(path, text=None) -> Game:
    r = _Reader(path, text)
    players = [r.text(v, f"players[{i}]") for i, v in enumerate(r.seq(r.field("players"), "players"))]
    strat_node = r.field("strategies")
    rows = r.seq(strat_node, "strategies")
    if len(rows) != len(players):
        r.fail(strat_node, "strategies", f"{len(rows)} strategy lists for {len(players)} players")
    labels = []
    for n, row in enumerate(rows):
        lab = [r.text(v, f"strategies[{n}][{i}]") for i, v in enumerate(r.seq(row, f"strategies[{n}]"))]
        if not lab:
            r.fail(row, f"strategies[{n}]", f"player {players[n]} has no strategies")
        if len(set(lab)) != len(lab):
            r.fail(row, f"strategies[{n}]", f"player {players[n]} has duplicate labels")
        if any("," in s for s in lab):
            r.fail(row, f"strategies[{n}]", "labels may not contain commas")
        labels.append(lab)

    index = [{s: i for i, s in enumerate(lab)} for lab in labels]
    pay_node = r.field("payoffs")
    entries = r.mapping(pay_node, "payoffs")
    shape = [len(lab) for lab in labels]
    table = {}
    for key, (knode, vnode) in entries.items():
        parts = [p.strip() for p in key.split(",")]
        fname = f"payoffs.{key}"
        if len(parts) != len(players):
            r.fail(knode, fname, f"expected {len(players)} comma-joined labels")
        try:
            prof = tuple(index[n][p] for n, p in enumerate(parts))
        except KeyError as exc:
            r.fail(knode, fname, f"unknown strategy label {exc.args[0]!r}")
        if prof in table:
            r.fail(knode, fname, "duplicate profile")
        vals = r.vector(vnode, fname)
        if len(vals) != len(players):
            r.fail(vnode, fname, f"expected {len(players)} payoffs, got {len(vals)}")
        table[prof] = vals

    tensors = [[] for _ in players]
    for prof in itertools.product(*(range(k) for k in shape)):
        if prof not in table:
            name = ",".join(labels[n][s] for n, s in enumerate(prof))
            r.fail(pay_node, f"payoffs.{name}", "missing profile")
        for n, v in enumerate(table[prof]):
            tensors[n].append(v)
    return Game(tuple(map(tuple, labels)), tuple(map(tuple, tensors)), tuple(players))


def _check_width(r, node, field, vec, game, n):
    if game is not None and len(vec) != game.shape[n]:
        r.fail(node, field, f"player {game.player_labels[n]}: {len(vec)} entries, "
                            f"expected {game.shape[n]}")


def _check_players(r, node, field, rows, game):
    if game is not None and len(rows) != game.player_count:
        r.fail(node, field, f"{len(rows)} players, game has {game.player_count}")


def read_profile(path, game: Game | None = None, text=None) -> MixedProfile:
    r = _Reader(path, text)
    node = r.field("profile")
    rows = r.seq(node, "profile")
    _check_players(r, node, "profile", rows, game)
    out = []
    for n, row in enumerate(rows):
        player = game.player_labels[n] if game else n
        vec = r.probability(row, f"profile[{n}]", player)
        _check_width(r, row, f"profile[{n}]", vec, game, n)
        out.append(tuple(vec))
    return MixedProfile(tuple(out))


def read_lps(path, game: Game | None = None, text=None) -> LpsProfile:
    r = _Reader(path, text)
    node = r.field("lps")
    rows = r.seq(node, "lps")
    _check_players(r, node, "lps", rows, game)
    out, orders = [], set()
    for n, pnode in enumerate(rows):
        player = game.player_labels[n] if game else n
        levels = []
        for k, lnode in enumerate(r.seq(pnode, f"lps[{n}]")):
            vec = r.probability(lnode, f"lps[{n}][{k}]", player)
            _check_width(r, lnode, f"lps[{n}][{k}]", vec, game, n)
            if levels and len(vec) != len(levels[0]):
                r.fail(lnode, f"lps[{n}][{k}]", "levels have different lengths")
            levels.append(tuple(vec))
        if not levels:
            r.fail(pnode, f"lps[{n}]", "no levels")
        orders.add(len(levels) - 1)
        if len(orders) > 1:
            r.fail(pnode, f"lps[{n}]", "players declare different orders")
        out.append(Lps(tuple(levels)))
    return LpsProfile(tuple(out))


def read_poly(path, game: Game | None = None, text=None) -> PolyProfile:
    r = _Reader(path, text)
    node = r.field("poly")
    rows = r.seq(node, "poly")
    _check_players(r, node, "poly", rows, game)
    out = []
    for n, pnode in enumerate(rows):
        coords = [RatPoly(r.vector(c, f"poly[{n}][{s}]")) for s, c in enumerate(r.seq(pnode, f"poly[{n}]"))]
        _check_width(r, pnode, f"poly[{n}]", coords, game, n)
        out.append(tuple(coords))
    return PolyProfile(tuple(out))


# --- writers: canonical form is sorted keys, lowest-terms rationals ----------

def _dump(doc) -> str:
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=None, width=1000)


def game_document(game: Game) -> dict:
    payoffs = {}
    for prof in game.profiles():
        key = ",".join(game.strategy_labels[n][s] for n, s in enumerate(prof))
        idx = game.flat_index(prof)
        payoffs[key] = [format_rational(game.payoffs[n][idx]) for n in range(game.player_count)]
    return {"players": list(game.player_labels),
            "strategies": [list(row) for row in game.strategy_labels],
            "payoffs": payoffs}


def dump_game(game: Game) -> str:
    return _dump(game_document(game))


def dump_profile(sigma) -> str:
    return _dump({"profile": [[format_rational(v) for v in row] for row in sigma]})


def dump_lps(rho: LpsProfile) -> str:
    return _dump({"lps": lps_document(rho)})


def dump_poly(eta: PolyProfile) -> str:
    return _dump({"poly": poly_document(eta)})


def lps_document(rho: LpsProfile) -> list:
    return [[[format_rational(v) for v in lv] for lv in x.levels] for x in rho]


def poly_document(eta: PolyProfile) -> list:
    return [[[format_rational(a) for a in f.coeffs] or ["0"] for f in row] for row in eta]


def write_text(path, text: str):
    Path(path).write_text(text)

