"""Popularity indices and the reward rule.

Every index maps a :class:`~streamshare.core.StreamingProblem` to a dict
``{artist: Fraction}``. Rewards rescale an index so it sums to the number of
users. Indices that are sums of per-user contributions are expressed through
a *decomposition* ``d(artist, user, profile)``; profiles are dicts keyed by
artist and may hold Fractions (the proportional cap produces them).

The module also keeps a name-based registry used by the CLI and the axiom
audits; see :func:`make_index`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .core import StreamingProblem, profiles
from .errors import (
    AllArtistsBelowThreshold,
    BetaOutOfRange,
    InvalidParameter,
    InvalidProbabilitySystem,
    NegativeDecomposition,
    NonPositiveWeight,
    NullArtistViolation,
    UnknownIndex,
    ZeroIndexSum,
)
from .rational import frac, fraction_str

Decomposition = Callable[[object, object, Mapping], Fraction]
WeightSystem = Callable[[object, Mapping], Fraction]
ProbabilitySystem = Callable[[object, Mapping], Mapping]
PerArtistFunction = Callable[[object, object], Fraction]

ZERO = Fraction(0)


def _row_totals(p: StreamingProblem) -> dict:
    return {a: sum(row) for a, row in zip(p.artists, p.streams)}


def _col_totals(p: StreamingProblem) -> list:
    return [sum(row[c] for row in p.streams) for c in range(p.m)]


def _check_sum(values: dict, err=ZeroIndexSum, what="index") -> dict:
    if not any(values.values()):
        raise err(f"{what} is zero for every artist; rewards are undefined")
    return values


# -- the three classic indices ----------------------------------------------

def pro_rata(p: StreamingProblem) -> dict:
    return {a: Fraction(t) for a, t in _row_totals(p).items()}


def user_centric(p: StreamingProblem) -> dict:
    cols = _col_totals(p)
    return {
        a: sum((Fraction(v, cols[c]) for c, v in enumerate(row) if v), ZERO)
        for a, row in zip(p.artists, p.streams)
    }


def shapley_index(p: StreamingProblem) -> dict:
    """Each user's unit is split equally among the artists they streamed."""
    sizes = [sum(1 for row in p.streams if row[c] > 0) for c in range(p.m)]
    return {
        a: sum((Fraction(1, sizes[c]) for c, v in enumerate(row) if v > 0), ZERO)
        for a, row in zip(p.artists, p.streams)
    }


# -- decompositions ----------------------------------------------------------

def pro_rata_d(i, j, x: Mapping) -> Fraction:
    return Fraction(x[i])


def user_centric_d(i, j, x: Mapping) -> Fraction:
    if not x[i]:
        return ZERO
    return Fraction(x[i]) / sum(x.values())


def shapley_d(i, j, x: Mapping) -> Fraction:
    if not x[i] > 0:
        return ZERO
    return Fraction(1, sum(1 for v in x.values() if v > 0))


def threshold_d(tau: int) -> Decomposition:
    """Keep a user's streams of an artist only when they reach ``tau``."""
    def d(i, j, x):
        return Fraction(x[i]) if x[i] >= tau and x[i] > 0 else ZERO
    d.__name__ = f"threshold_d_{tau}"
    return d


def cap_profile(x: Mapping, cap) -> dict:
    """Scale a profile down proportionally so its total is at most ``cap``."""
    total = sum(x.values())
    if total <= cap:
        return dict(x)
    return {a: Fraction(v) * cap / total for a, v in x.items()}


def capped_d(cap, base: Decomposition = pro_rata_d) -> Decomposition:
    def d(i, j, x):
        return base(i, j, cap_profile(x, cap))
    d.__name__ = f"capped_d_{cap}"
    return d


def weighted_d(w: WeightSystem) -> Decomposition:
    def d(i, j, x):
        weight = frac(w(j, x))
        if weight <= 0:
            raise NonPositiveWeight(f"weight for user {j!r} is {weight}, must be > 0")
        return weight * x[i]
    return d


def probabilistic_d(r: ProbabilitySystem) -> Decomposition:
    def d(i, j, x):
        return frac(_checked_probabilities(r, j, x).get(i, 0))
    return d


def per_artist_d(f: PerArtistFunction) -> Decomposition:
    def d(i, j, x):
        return frac(f(i, x[i]))
    return d


def _checked_probabilities(r: ProbabilitySystem, j, x: Mapping) -> dict:
    rho = {a: frac(v) for a, v in r(j, x).items()}
    for a, v in rho.items():
        if a not in x:
            raise InvalidProbabilitySystem(f"probability given to unknown artist {a!r}")
        if not 0 <= v <= 1:
            raise InvalidProbabilitySystem(f"probability {v} for artist {a!r} outside [0, 1]")
        if v and not x[a]:
            raise InvalidProbabilitySystem(
                f"user {j!r} did not stream artist {a!r} but gives it mass {v}"
            )
    if sum(rho.values()) != 1:
        raise InvalidProbabilitySystem(
            f"probabilities for user {j!r} sum to {sum(rho.values())}, not 1"
        )
    return rho


# -- families ----------------------------------------------------------------

def decomposable_index(d: Decomposition, p: StreamingProblem) -> dict:
    out = {a: ZERO for a in p.artists}
    for j, x in profiles(p):
        for a in p.artists:
            v = frac(d(a, j, x))
            if v < 0:
                raise NegativeDecomposition(
                    f"d({a!r}, {j!r}, ...) = {v} is negative"
                )
            if v and not x[a]:
                raise NullArtistViolation(
                    f"d({a!r}, {j!r}, ...) = {v} although user {j!r} never streamed {a!r}"
                )
            out[a] += v
    return out


def weighted_index(w: WeightSystem, p: StreamingProblem) -> dict:
    out = {a: ZERO for a in p.artists}
    for j, x in profiles(p):
        weight = frac(w(j, x))
        if weight <= 0:
            raise NonPositiveWeight(f"weight for user {j!r} is {weight}, must be > 0")
        for a in p.artists:
            out[a] += weight * x[a]
    return out


def probabilistic_index(r: ProbabilitySystem, p: StreamingProblem) -> dict:
    out = {a: ZERO for a in p.artists}
    for j, x in profiles(p):
        for a, v in _checked_probabilities(r, j, x).items():
            out[a] += v
    return out


def per_artist_index(f: PerArtistFunction, p: StreamingProblem) -> dict:
    """Index summing ``f(artist, streams)`` over users; ``f(artist, 0)`` must be 0."""
    for a in p.artists:
        if frac(f(a, 0)) != 0:
            raise NullArtistViolation(f"f({a!r}, 0) must be 0")
    return decomposable_index(per_artist_d(f), p)


def equal_division(p: StreamingProblem) -> dict:
    share = Fraction(p.m, p.n)
    return {a: share for a in p.artists}


def _check_beta(beta, n: int) -> Fraction:
    beta = frac(beta)
    # with one artist both terms equal m, so only the lower bound matters
    if beta < 0 or (n >= 2 and beta > Fraction(n, n - 1)):
        hi = "inf" if n < 2 else fraction_str(Fraction(n, n - 1))
        raise BetaOutOfRange(f"beta={fraction_str(beta)} outside [0, {hi}] for n={n}")
    return beta


def blend_user_centric(beta, p: StreamingProblem) -> dict:
    beta = _check_beta(beta, p.n)
    e, u = equal_division(p), user_centric(p)
    return {a: beta * e[a] + (1 - beta) * u[a] for a in p.artists}


def blend_pro_rata_reward(beta, p: StreamingProblem) -> dict:
    beta = _check_beta(beta, p.n)
    e, r = equal_division(p), reward(pro_rata(p), p)
    return {a: beta * e[a] + (1 - beta) * r[a] for a in p.artists}


# -- platform rules ----------------------------------------------------------

def spotify_index(tau: int, p: StreamingProblem, *, strict: bool = True) -> dict:
    """Pro-rata, with artists whose total is below ``tau`` zeroed out.

    With ``strict`` an all-zero result raises :class:`AllArtistsBelowThreshold`.
    """
    out = {a: Fraction(t) if t >= tau else ZERO for a, t in _row_totals(p).items()}
    if strict:
        _check_sum(out, AllArtistsBelowThreshold,
                   f"every artist total is below the threshold {tau}; index")
    return out


def per_user_threshold_index(tau: int, p: StreamingProblem, *, strict: bool = True) -> dict:
    out = decomposable_index(threshold_d(tau), p)
    if strict:
        _check_sum(out)
    return out


def deezer_cap_index(cap, base: Decomposition, p: StreamingProblem) -> dict:
    return decomposable_index(capped_d(cap, base), p)


# -- pathological indices used as counterexamples ---------------------------

def squared_blend_index(p: StreamingProblem) -> dict:
    totals = _row_totals(p)
    cols = _col_totals(p)
    grand = sum(cols)
    return {
        a: sum((Fraction(v + totals[a], cols[c] + grand) for c, v in enumerate(row)), ZERO)
        for a, row in zip(p.artists, p.streams)
    }


def top_streams_takes_all(p: StreamingProblem) -> dict:
    """Importance 1 to the most-streamed artist (earliest listed on ties), 0 elsewhere."""
    totals = _row_totals(p)
    best = max(p.artists, key=lambda a: (totals[a], -p.artist_pos(a)))
    return {a: Fraction(1 if a == best else 0) for a in p.artists}


def binary_positive_index(p: StreamingProblem) -> dict:
    return {a: Fraction(1 if t > 0 else 0) for a, t in _row_totals(p).items()}


# -- rewards -----------------------------------------------------------------

def reward(iv: Mapping, p: StreamingProblem) -> dict:
    total = sum(iv.values(), ZERO)
    if total <= 0:
        raise ZeroIndexSum("index sums to zero; rewards are undefined")
    return {a: Fraction(iv[a]) * p.m / total for a in p.artists}


# -- registry ----------------------------------------------------------------

@dataclass(frozen=True)
class Index:
    """A named index.

    ``evaluate`` computes raw values without the positive-total check, which
    the axiom checks need (sub-problems may legitimately sum to zero).
    Calling the index applies the check.
    """

    name: str
    evaluate: Callable[[StreamingProblem], dict]
    decomposition: Decomposition | None = None
    params: Mapping = field(default_factory=dict)
    zero_error: type = ZeroIndexSum

    def __call__(self, p: StreamingProblem) -> dict:
        return _check_sum(self.evaluate(p), self.zero_error, f"{self.name} index")

    def rewards(self, p: StreamingProblem) -> dict:
        return reward(self(p), p)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        args = ",".join(f"{k}={fraction_str(v)}" for k, v in sorted(self.params.items()))
        return f"{self.name}({args})"


def _nonneg_int(name):
    def conv(v):
        if isinstance(v, str):
            try:
                v = int(v)
            except ValueError:
                raise InvalidParameter(f"{name} must be an integer, got {v!r}") from None
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InvalidParameter(f"{name} must be a nonnegative integer, got {v!r}")
        return v
    return conv


def _positive_int(name):
    base = _nonneg_int(name)

    def conv(v):
        v = base(v)
        if v < 1:
            raise InvalidParameter(f"{name} must be at least 1")
        return v
    return conv


def _beta(v):
    try:
        v = frac(v)
    except TypeError as e:
        raise InvalidParameter(str(e)) from None
    if v < 0:
        raise BetaOutOfRange(f"beta must be nonnegative, got {fraction_str(v)}")
    return v


@dataclass(frozen=True)
class IndexSpec:
    name: str
    build: Callable[..., Index]
    defaults: Mapping = field(default_factory=dict)
    converters: Mapping = field(default_factory=dict)
    decomposable: bool = False


def _simple(name, fn, d=None):
    return IndexSpec(name, lambda: Index(name, fn, d), decomposable=d is not None)


REGISTRY: dict[str, IndexSpec] = {
    s.name: s
    for s in [
        _simple("pro-rata", pro_rata, pro_rata_d),
        _simple("user-centric", user_centric, user_centric_d),
        _simple("shapley", shapley_index, shapley_d),
        IndexSpec(
            "spotify",
            lambda tau: Index("spotify", lambda p: spotify_index(tau, p, strict=False),
                              params={"tau": tau}, zero_error=AllArtistsBelowThreshold),
            {"tau": 1000}, {"tau": _nonneg_int("tau")},
        ),
        IndexSpec(
            "per-user-threshold",
            lambda tau: Index("per-user-threshold",
                              lambda p: per_user_threshold_index(tau, p, strict=False),
                              threshold_d(tau), {"tau": tau}),
            {"tau": 1000}, {"tau": _nonneg_int("tau")}, decomposable=True,
        ),
        IndexSpec(
            "deezer-cap",
            lambda cap: Index("deezer-cap", lambda p: deezer_cap_index(cap, pro_rata_d, p),
                              capped_d(cap, pro_rata_d), {"cap": cap}),
            {"cap": 1000}, {"cap": _positive_int("cap")}, decomposable=True,
        ),
        IndexSpec(
            "blend1",
            lambda beta: Index("blend1", lambda p: blend_user_centric(beta, p),
                               params={"beta": beta}),
            {"beta": Fraction(1, 2)}, {"beta": _beta},
        ),
        IndexSpec(
            "blend2",
            lambda beta: Index("blend2", lambda p: blend_pro_rata_reward(beta, p),
                               params={"beta": beta}),
            {"beta": Fraction(1, 2)}, {"beta": _beta},
        ),
        _simple("equal-division", equal_division),
        _simple("squared-blend", squared_blend_index),
        _simple("top-takes-all", top_streams_takes_all),
        _simple("binary", binary_positive_index),
    ]
}


def make_index(name: str, **params) -> Index:
    """Build a registry index, filling defaults and validating parameters.

    Parameters the index does not take are rejected; ``None`` means default.
    """
    try:
        spec = REGISTRY[name]
    except KeyError:
        raise UnknownIndex(name) from None
    params = {k: v for k, v in params.items() if v is not None}
    extra = set(params) - set(spec.defaults)
    if extra:
        raise InvalidParameter(f"index {name!r} takes no parameter(s) {sorted(extra)}")
    kwargs = {}
    for key, default in spec.defaults.items():
        kwargs[key] = spec.converters[key](params.get(key, default))
    return spec.build(**kwargs)


def decomposable_registry_indices() -> list[Index]:
    return [make_index(name) for name, spec in REGISTRY.items() if spec.decomposable]
