"""TU games, the exact Shapley value, and games induced by user profiles.

Coalitions are bitmasks over ``game.players`` (bit ``k`` is player ``k``).
Values are Fractions; games are stored densely, so the player count is
capped at :data:`MAX_PLAYERS`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping

from .errors import TooManyPlayers
from .indices import ProbabilitySystem, WeightSystem, _checked_probabilities
from .rational import frac

MAX_PLAYERS = 20
ZERO = Fraction(0)


@dataclass(frozen=True)
class TUGame:
    players: tuple
    values: tuple  # values[mask]
    _pos: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.players)
        if n > MAX_PLAYERS:
            raise TooManyPlayers(f"{n} players exceeds the cap of {MAX_PLAYERS}")
        if len(self.values) != 1 << n:
            raise ValueError(f"need {1 << n} coalition values, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError("the empty coalition must have value 0")
        object.__setattr__(self, "_pos", {p: k for k, p in enumerate(self.players)})

    @classmethod
    def from_function(cls, players: Iterable, v: Callable[[frozenset], object]) -> "TUGame":
        players = tuple(players)
        if len(players) > MAX_PLAYERS:
            raise TooManyPlayers(f"{len(players)} players exceeds the cap of {MAX_PLAYERS}")
        vals = [ZERO]
        for mask in range(1, 1 << len(players)):
            vals.append(frac(v(frozenset(p for k, p in enumerate(players) if mask >> k & 1))))
        return cls(players, tuple(vals))

    @property
    def n(self) -> int:
        return len(self.players)

    def mask(self, coalition: Iterable) -> int:
        m = 0
        for p in coalition:
            m |= 1 << self._pos[p]
        return m

    def coalition(self, mask: int) -> frozenset:
        return frozenset(p for k, p in enumerate(self.players) if mask >> k & 1)

    def value(self, coalition) -> Fraction:
        if isinstance(coalition, int):
            return self.values[coalition]
        return self.values[self.mask(coalition)]

    def grand_value(self) -> Fraction:
        return self.values[-1]

    def restrict(self, subset: Iterable) -> "TUGame":
        """The game ``(S, v)``: same characteristic function, fewer players."""
        keep = set(subset)
        players = tuple(p for p in self.players if p in keep)
        bits = [1 << self._pos[p] for p in players]
        vals = []
        for sub in range(1 << len(players)):
            m = 0
            for k, b in enumerate(bits):
                if sub >> k & 1:
                    m |= b
            vals.append(self.values[m])
        return TUGame(players, tuple(vals))

    def __add__(self, other: "TUGame") -> "TUGame":
        if self.players != other.players:
            raise ValueError("games must share the same ordered player set")
        return TUGame(self.players, tuple(a + b for a, b in zip(self.values, other.values)))


def _subset_weights(n: int) -> list[Fraction]:
    nf = factorial(n)
    return [Fraction(factorial(s) * factorial(n - s - 1), nf) for s in range(n)]


def shapley_value(g: TUGame) -> dict:
    """Exact Shapley value via the coalition-size weighted marginal sum."""
    n = g.n
    if n == 0:
        return {}
    w = _subset_weights(n)
    vals = g.values
    out = {}
    for k, player in enumerate(g.players):
        bit = 1 << k
        acc = ZERO
        for mask in range(1 << n):
            if mask & bit:
                continue
            delta = vals[mask | bit] - vals[mask]
            if delta:
                acc += w[mask.bit_count()] * delta
        out[player] = acc
    return out


def shapley_value_permutations(g: TUGame) -> dict:
    """Average marginal contribution over all orders. Test oracle; O(n!)."""
    if g.n > 9:
        raise TooManyPlayers("the permutation oracle is limited to 9 players")
    totals = {p: ZERO for p in g.players}
    count = 0
    for order in itertools.permutations(range(g.n)):
        mask = 0
        for k in order:
            totals[g.players[k]] += g.values[mask | 1 << k] - g.values[mask]
            mask |= 1 << k
        count += 1
    return {p: t / count for p, t in totals.items()}


@dataclass(frozen=True)
class BalancedContributionsResult:
    ok: bool
    pair: tuple | None = None
    # value_i(N), value_i(N \ {j}), value_j(N), value_j(N \ {i})
    values: tuple | None = None

    def __bool__(self):
        return self.ok


def balanced_contributions_check(
    g: TUGame, value: Callable[[TUGame], Mapping] = shapley_value
) -> BalancedContributionsResult:
    """Check ``phi_i(N) - phi_i(N-j) == phi_j(N) - phi_j(N-i)`` for every pair."""
    full = value(g)
    without = {p: value(g.restrict(q for q in g.players if q != p)) for p in g.players}
    for a, b in itertools.combinations(g.players, 2):
        left = (full[a], without[b][a])
        right = (full[b], without[a][b])
        if left[0] - left[1] != right[0] - right[1]:
            return BalancedContributionsResult(False, (a, b), (*left, *right))
    return BalancedContributionsResult(True)


def egalitarian_value(g: TUGame) -> dict:
    """Equal split of v(N). Fails balanced contributions; used as a foil."""
    if g.n == 0:
        return {}
    share = g.grand_value() / g.n
    return {p: share for p in g.players}


# -- games induced by a user's profile ---------------------------------------

GameFamily = Callable[[object, Mapping], TUGame]


def _streamed(x: Mapping) -> frozenset:
    return frozenset(a for a, v in x.items() if v > 0)


def induced_game_pro_rata(j, x: Mapping) -> TUGame:
    return TUGame.from_function(x, lambda S: sum((Fraction(x[a]) for a in S), ZERO))


def induced_game_shapley(j, x: Mapping) -> TUGame:
    """``v(S) = 1`` when S contains an artist the user streamed, else 0."""
    listened = _streamed(x)
    return TUGame.from_function(x, lambda S: 1 if S & listened else 0)


def induced_game_weighted(w: WeightSystem, j, x: Mapping) -> TUGame:
    weight = frac(w(j, x))
    return TUGame.from_function(x, lambda S: sum((weight * x[a] for a in S), ZERO))


def induced_game_probabilistic(r: ProbabilitySystem, j, x: Mapping) -> TUGame:
    rho = _checked_probabilities(r, j, x)
    return TUGame.from_function(x, lambda S: sum((rho.get(a, ZERO) for a in S), ZERO))


def weighted_family(w: WeightSystem) -> GameFamily:
    return lambda j, x: induced_game_weighted(w, j, x)


def probabilistic_family(r: ProbabilitySystem) -> GameFamily:
    return lambda j, x: induced_game_probabilistic(r, j, x)


@dataclass
class ShapleyInducedReport:
    profiles_checked: int = 0
    restriction_checks: int = 0
    value_checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_shapley_induced(d, g: GameFamily, sample: Iterable, max_positive: int = 12
                           ) -> ShapleyInducedReport:
    """Check that ``d`` is the Shapley value of the game family ``g``.

    For each ``(user, profile)`` in ``sample``:

    * restriction consistency: for every coalition S, ``g(j, x)(S)`` equals the
      grand-coalition value of ``g`` on the profile restricted to the
      streamed artists in S;
    * ``d(i, j, x) == Sh_i(g(j, x))`` for every artist i.

    Every violation is recorded; nothing short-circuits.
    """
    report = ShapleyInducedReport()
    for j, x in sample:
        x = dict(x)
        positive = [a for a in x if x[a] > 0]
        if len(positive) > max_positive:
            raise TooManyPlayers(
                f"profile for user {j!r} has {len(positive)} streamed artists (max {max_positive})"
            )
        game = g(j, x)
        report.profiles_checked += 1
        sub_cache: dict = {}
        for mask in range(1 << game.n):
            S = game.coalition(mask)
            key = frozenset(a for a in S if x[a] > 0)
            if key not in sub_cache:
                if key:
                    sub = g(j, {a: x[a] for a in x if a in key})
                    sub_cache[key] = sub.grand_value()
                else:
                    sub_cache[key] = ZERO
            report.restriction_checks += 1
            if game.values[mask] != sub_cache[key]:
                report.violations.append({
                    "kind": "restriction", "user": j, "profile": x,
                    "coalition": sorted(S, key=game.players.index),
                    "game_value": game.values[mask], "restricted_value": sub_cache[key],
                })
        sh = shapley_value(game)
        for a in game.players:
            report.value_checks += 1
            dv = frac(d(a, j, x))
            if dv != sh[a]:
                report.violations.append({
                    "kind": "value", "user": j, "profile": x, "artist": a,
                    "d": dv, "shapley": sh[a],
                })
    return report


# -- random samples ----------------------------------------------------------

def random_profiles(rng, count: int, max_artists: int = 8, max_positive: int = 8,
                    max_stream: int = 5) -> list[tuple]:
    """``count`` random ``(user, profile)`` pairs with at least one positive entry."""
    out = []
    for k in range(count):
        n = rng.randint(1, max_artists)
        artists = [str(a + 1) for a in range(n)]
        positive = rng.sample(artists, rng.randint(1, min(n, max_positive)))
        x = {a: rng.randint(1, max_stream) if a in positive else 0 for a in artists}
        out.append((f"u{k + 1}", x))
    return out


def random_game(rng, n: int, max_value: int = 10, integral: bool = False) -> TUGame:
    """Game with independent random coalition values (fractions unless ``integral``)."""
    vals = [ZERO]
    for _ in range(1, 1 << n):
        num = rng.randint(-max_value, max_value)
        vals.append(Fraction(num) if integral else Fraction(num, rng.randint(1, 6)))
    return TUGame(tuple(str(k + 1) for k in range(n)), tuple(vals))
