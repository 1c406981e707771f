"""Executable axiom checks and a seeded counterexample search.

Each ``check_*`` function evaluates one instantiation of one axiom on one
problem and returns an :class:`AxiomVerdict`. Every comparison is an exact
Fraction equality. :func:`search_counterexample` walks a fixed list of
canonical instances followed by seeded random problems and stops at the first
violation; "satisfied-on-sample" is bounded evidence, not a proof.

Indices are evaluated through their raw values (no positive-total check), so
sub-problems whose index happens to vanish are still comparable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .core import (
    StreamingProblem,
    build_problem,
    is_valid_without_artist,
    restrict,
    to_csv,
)
from .errors import InvalidParameter, UnsatisfiableConstraints
from .indices import Index, make_index
from .rational import fraction_str

ADDITIVITY = "additivity"
NULL_ARTISTS = "null-artists"
PAIRWISE_HOMOGENEITY = "pairwise-homogeneity"
EQUAL_INDIVIDUAL_IMPACT = "equal-individual-impact"
EQUAL_GLOBAL_IMPACT = "equal-global-impact"
EQUAL_IMPACT_OF_ARTISTS = "equal-impact-of-artists"
AXIOMS = (
    ADDITIVITY,
    NULL_ARTISTS,
    PAIRWISE_HOMOGENEITY,
    EQUAL_INDIVIDUAL_IMPACT,
    EQUAL_GLOBAL_IMPACT,
    EQUAL_IMPACT_OF_ARTISTS,
)
# Referenced by the literature on these indices but not defined precisely
# enough here to check; reported as a placeholder column.
NOT_IMPLEMENTED = ("reasonable-lower-bound",)
JOINT_IMPACT = "equal-individual-impact+equal-global-impact"

SATISFIED = "satisfied-on-sample"
COUNTEREXAMPLE = "counterexample-found"

ZERO = Fraction(0)


def _raw(idx) -> Callable[[StreamingProblem], dict]:
    return idx.evaluate if isinstance(idx, Index) else idx


def _name(idx) -> str:
    if isinstance(idx, Index):
        return idx.label
    return getattr(idx, "__name__", repr(idx))


class _Evaluator:
    """Memoizes raw index values on sub-problems of one problem."""

    def __init__(self, idx, p: StreamingProblem):
        self.fn = _raw(idx)
        self.p = p
        self.cache: dict = {}

    def __call__(self, artists=None, users=None) -> dict:
        key = (None if artists is None else frozenset(artists),
               None if users is None else frozenset(users))
        if key not in self.cache:
            sub = self.p if artists is None and users is None else restrict(self.p, artists, users)
            self.cache[key] = self.fn(sub)
        return self.cache[key]


@dataclass(frozen=True)
class Witness:
    problem: StreamingProblem
    instantiation: dict
    lhs: Fraction
    rhs: Fraction
    artist: object = None

    def to_dict(self) -> dict:
        return {
            "problem_csv": to_csv(self.problem),
            "instantiation": {k: _jsonable(v) for k, v in self.instantiation.items()},
            "artist": None if self.artist is None else str(self.artist),
            "lhs": fraction_str(self.lhs),
            "rhs": fraction_str(self.rhs),
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, (tuple, list, frozenset, set)):
        return [_jsonable(x) for x in v]
    return v if isinstance(v, (int, str)) or v is None else str(v)


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    index: str
    verdict: str
    witness: Witness | None = None
    instances: int = 1
    checks: int = 1

    @property
    def counterexample(self) -> bool:
        return self.verdict == COUNTEREXAMPLE

    def reverify(self, idx) -> bool:
        """Recompute both sides from the stored problem alone.

        True when the same unequal pair of values comes back.
        """
        if self.witness is None:
            return False
        w = self.witness
        inst = dict(w.instantiation)
        axiom = inst.pop("component", self.axiom)
        again = run_check(idx, axiom, w.problem, **inst)
        return (again.counterexample and again.witness.lhs == w.lhs
                and again.witness.rhs == w.rhs and w.lhs != w.rhs)

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "index": self.index,
            "verdict": self.verdict,
            "instances": self.instances,
            "checks": self.checks,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def _verdict(idx, axiom, p, inst, lhs, rhs, artist=None) -> AxiomVerdict:
    if lhs == rhs:
        return AxiomVerdict(axiom, _name(idx), SATISFIED)
    return AxiomVerdict(axiom, _name(idx), COUNTEREXAMPLE, Witness(p, inst, lhs, rhs, artist))


# -- the six checks ----------------------------------------------------------

def check_additivity(idx, p: StreamingProblem, partition, *, _ev=None) -> AxiomVerdict:
    """``I(N, M, t) == I(N, M1, t1) + I(N, M2, t2)`` for a split of the users."""
    m1, m2 = (tuple(part) for part in partition)
    if not m1 or not m2 or set(m1) & set(m2) or set(m1) | set(m2) != set(p.users) \
            or len(m1) + len(m2) != p.m:
        raise InvalidParameter("partition must split the users into two nonempty disjoint parts")
    ev = _ev or _Evaluator(idx, p)
    full, a, b = ev(), ev(users=m1), ev(users=m2)
    inst = {"partition": (m1, m2)}
    for artist in p.artists:
        if full[artist] != a[artist] + b[artist]:
            return _verdict(idx, ADDITIVITY, p, inst, full[artist], a[artist] + b[artist], artist)
    return AxiomVerdict(ADDITIVITY, _name(idx), SATISFIED)


def check_null_artists(idx, p: StreamingProblem, *, _ev=None) -> AxiomVerdict:
    ev = _ev or _Evaluator(idx, p)
    values = ev()
    for artist, row in zip(p.artists, p.streams):
        if not any(row) and values[artist] != 0:
            return _verdict(idx, NULL_ARTISTS, p, {}, values[artist], ZERO, artist)
    return AxiomVerdict(NULL_ARTISTS, _name(idx), SATISFIED)


def check_pairwise_homogeneity(idx, p: StreamingProblem, i, i_prime, lam, *, _ev=None
                               ) -> AxiomVerdict:
    """Given ``t_i = lam * t_i'`` row-wise, check ``I_i == lam * I_i'``."""
    lam = Fraction(lam)
    if lam < 0 or i == i_prime:
        raise InvalidParameter("need two distinct artists and lam >= 0")
    if any(a != lam * b for a, b in zip(p.row(i), p.row(i_prime))):
        raise InvalidParameter(f"row {i!r} is not {fraction_str(lam)} times row {i_prime!r}")
    ev = _ev or _Evaluator(idx, p)
    values = ev()
    inst = {"i": i, "i_prime": i_prime, "lam": lam}
    return _verdict(idx, PAIRWISE_HOMOGENEITY, p, inst, values[i], lam * values[i_prime], i)


def check_equal_individual_impact(idx, p: StreamingProblem, i, j, j_prime, *, _ev=None
                                  ) -> AxiomVerdict:
    """With ``t_ij == t_ij'``, dropping user j or user j' leaves ``I_i`` unchanged."""
    if j == j_prime or p.stream(i, j) != p.stream(i, j_prime):
        raise InvalidParameter(f"users {j!r}, {j_prime!r} must differ and stream {i!r} equally")
    ev = _ev or _Evaluator(idx, p)
    without_j = ev(users=[u for u in p.users if u != j])
    without_jp = ev(users=[u for u in p.users if u != j_prime])
    inst = {"i": i, "j": j, "j_prime": j_prime}
    return _verdict(idx, EQUAL_INDIVIDUAL_IMPACT, p, inst, without_j[i], without_jp[i], i)


def check_equal_global_impact(idx, p: StreamingProblem, j, j_prime, *, _ev=None) -> AxiomVerdict:
    if j == j_prime:
        raise InvalidParameter("users must differ")
    p.user_pos(j), p.user_pos(j_prime)
    ev = _ev or _Evaluator(idx, p)
    s1 = sum(ev(users=[u for u in p.users if u != j]).values(), ZERO)
    s2 = sum(ev(users=[u for u in p.users if u != j_prime]).values(), ZERO)
    return _verdict(idx, EQUAL_GLOBAL_IMPACT, p, {"j": j, "j_prime": j_prime}, s1, s2)


def check_equal_impact_artists(idx, p: StreamingProblem, i, i_prime, *, _ev=None
                               ) -> AxiomVerdict:
    """``I_i(N) - I_i(N - i') == I_i'(N) - I_i'(N - i)``.

    Both reduced problems must be valid, i.e. no user may be left without
    streams when either artist leaves.
    """
    if i == i_prime:
        raise InvalidParameter("artists must differ")
    if not (is_valid_without_artist(p, i) and is_valid_without_artist(p, i_prime)):
        raise InvalidParameter(
            f"removing {i!r} or {i_prime!r} would leave a user with no streams"
        )
    ev = _ev or _Evaluator(idx, p)
    full = ev()
    no_ip = ev(artists=[a for a in p.artists if a != i_prime])
    no_i = ev(artists=[a for a in p.artists if a != i])
    lhs = full[i] - no_ip[i]
    rhs = full[i_prime] - no_i[i_prime]
    return _verdict(idx, EQUAL_IMPACT_OF_ARTISTS, p, {"i": i, "i_prime": i_prime}, lhs, rhs)


_CHECKS = {
    ADDITIVITY: check_additivity,
    NULL_ARTISTS: check_null_artists,
    PAIRWISE_HOMOGENEITY: check_pairwise_homogeneity,
    EQUAL_INDIVIDUAL_IMPACT: check_equal_individual_impact,
    EQUAL_GLOBAL_IMPACT: check_equal_global_impact,
    EQUAL_IMPACT_OF_ARTISTS: check_equal_impact_artists,
}


def run_check(idx, axiom: str, p: StreamingProblem, _ev=None, **instantiation) -> AxiomVerdict:
    try:
        check = _CHECKS[axiom]
    except KeyError:
        raise InvalidParameter(f"unknown axiom {axiom!r}") from None
    return check(idx, p, _ev=_ev, **instantiation)


# -- instantiations ----------------------------------------------------------

def harvest_lambdas(row: Sequence[int], other: Sequence[int]) -> list[Fraction]:
    """All ``lam >= 0`` with ``row == lam * other``, as far as they are distinct.

    A zero row is 0 times anything; two zero rows also admit ``lam = 1``.
    """
    if not any(row):
        return [ZERO, Fraction(1)] if not any(other) else [ZERO]
    if not any(other):
        return []
    c = next(k for k, v in enumerate(other) if v)
    lam = Fraction(row[c], other[c])
    return [lam] if all(a == lam * b for a, b in zip(row, other)) else []


def bipartitions(users: Sequence, rng: random.Random | None = None,
                 max_enumerate: int = 8, samples: int = 64) -> Iterator[tuple]:
    """Splits ``(M1, M2)`` of the users with both parts nonempty.

    Up to ``max_enumerate`` users every split is listed once (the first user is
    always in ``M1``); beyond that ``samples`` random splits are drawn.
    """
    users = tuple(users)
    m = len(users)
    if m < 2:
        return
    if m <= max_enumerate:
        rest = users[1:]
        for mask in range((1 << (m - 1)) - 1):
            m1 = (users[0],) + tuple(u for k, u in enumerate(rest) if mask >> k & 1)
            yield m1, tuple(u for u in users if u not in m1)
        return
    rng = rng or random.Random(0)
    for _ in range(samples):
        mask = rng.randrange(1, (1 << m) - 1)
        m1 = tuple(u for k, u in enumerate(users) if mask >> k & 1)
        yield m1, tuple(u for u in users if u not in m1)


def instantiations(axiom: str, p: StreamingProblem, rng: random.Random | None = None
                   ) -> Iterator[dict]:
    if axiom == ADDITIVITY:
        for part in bipartitions(p.users, rng):
            yield {"partition": part}
    elif axiom == NULL_ARTISTS:
        yield {}
    elif axiom == PAIRWISE_HOMOGENEITY:
        for i, ip in itertools.permutations(p.artists, 2):
            for lam in harvest_lambdas(p.row(i), p.row(ip)):
                yield {"i": i, "i_prime": ip, "lam": lam}
    elif axiom == EQUAL_INDIVIDUAL_IMPACT:
        for i in p.artists:
            row = p.row(i)
            for a, b in itertools.combinations(range(p.m), 2):
                if row[a] == row[b]:
                    yield {"i": i, "j": p.users[a], "j_prime": p.users[b]}
    elif axiom == EQUAL_GLOBAL_IMPACT:
        for j, jp in itertools.combinations(p.users, 2):
            yield {"j": j, "j_prime": jp}
    elif axiom == EQUAL_IMPACT_OF_ARTISTS:
        ok = [a for a in p.artists if is_valid_without_artist(p, a)]
        for i, ip in itertools.combinations(ok, 2):
            yield {"i": i, "i_prime": ip}
    elif axiom == JOINT_IMPACT:
        for inst in instantiations(EQUAL_INDIVIDUAL_IMPACT, p, rng):
            yield {"component": EQUAL_INDIVIDUAL_IMPACT, **inst}
        for inst in instantiations(EQUAL_GLOBAL_IMPACT, p, rng):
            yield {"component": EQUAL_GLOBAL_IMPACT, **inst}
    else:
        raise InvalidParameter(f"unknown axiom {axiom!r}")


# -- problem generation ------------------------------------------------------

@dataclass(frozen=True)
class ProblemGenerator:
    """Seeded source of random valid problems.

    ``sparsity`` is the chance that an entry is zero; ``scales`` multiplies a
    whole problem's entries (one scale drawn per problem) so that large-count
    regimes such as a 1000-stream threshold are reachable. Flags force
    structure that some axioms need in order to say anything.
    """

    seed: int = 0
    n_range: tuple = (2, 4)
    m_range: tuple = (2, 5)
    max_stream: int = 5
    sparsity: float = 0.3
    every_user_two_artists: bool = False
    similar_user_pair: bool = False
    proportional_artist_pair: bool = False
    scales: tuple = (1,)
    max_attempts: int = 1000

    def _bounds(self):
        n_lo, n_hi = self.n_range
        m_lo, m_hi = self.m_range
        if n_lo < 1 or m_lo < 1 or n_lo > n_hi or m_lo > m_hi:
            raise UnsatisfiableConstraints("artist/user ranges must be nonempty and positive")
        if not 0 <= self.sparsity < 1:
            raise UnsatisfiableConstraints(
                "sparsity must lie in [0, 1); at 1 no user could stream anything"
            )
        if self.max_stream < 1 or not self.scales or min(self.scales) < 1:
            raise UnsatisfiableConstraints("stream values must be able to be positive")
        if self.every_user_two_artists or self.proportional_artist_pair:
            n_lo = max(n_lo, 2)
        if self.similar_user_pair:
            m_lo = max(m_lo, 2)
        if n_lo > n_hi or m_lo > m_hi:
            raise UnsatisfiableConstraints("flags need at least two artists/users")
        return n_lo, n_hi, m_lo, m_hi

    def problems(self) -> Iterator[StreamingProblem]:
        n_lo, n_hi, m_lo, m_hi = self._bounds()
        rng = random.Random(self.seed)
        while True:
            yield self._one(rng, n_lo, n_hi, m_lo, m_hi)

    def _one(self, rng, n_lo, n_hi, m_lo, m_hi) -> StreamingProblem:
        for _ in range(self.max_attempts):
            n = rng.randint(n_lo, n_hi)
            m = rng.randint(m_lo, m_hi)
            scale = rng.choice(self.scales)
            t = [[0 if rng.random() < self.sparsity else rng.randint(1, self.max_stream) * scale
                  for _ in range(m)] for _ in range(n)]
            if self.proportional_artist_pair:
                i, ip = rng.sample(range(n), 2)
                lam = rng.randint(0, 3)
                t[i] = [lam * v for v in t[ip]]
            if self.similar_user_pair:
                i = rng.randrange(n)
                j, jp = rng.sample(range(m), 2)
                t[i][jp] = t[i][j]
            need = 2 if self.every_user_two_artists else 1
            if all(sum(1 for r in range(n) if t[r][c] > 0) >= need for c in range(m)):
                return build_problem([str(k + 1) for k in range(n)],
                                     [f"u{k + 1}" for k in range(m)], t)
        raise UnsatisfiableConstraints(
            f"no valid problem after {self.max_attempts} attempts; lower sparsity"
        )


def generate_problem(gen: ProblemGenerator) -> StreamingProblem:
    return next(gen.problems())


# -- canonical instances -----------------------------------------------------

def _p(artists, users, t):
    return build_problem(artists, users, t)


def impossibility_family(sizes: Iterable[int] = (2, 3, 4),
                         scales: Iterable[int] = (1, 1000)) -> list[StreamingProblem]:
    """Two-user problems whose profiles are ``c * 1_{i}`` and ``c * 1_N``.

    If a decomposable index satisfied both equal individual impact and equal
    global impact on every member, each artist's share of the ``1_N`` user
    would equal that user's whole contribution, forcing it to zero.
    """
    out = []
    for n in sizes:
        artists = [str(k + 1) for k in range(n)]
        for c in scales:
            for i in range(n):
                t = [[c if r == i else 0, c] for r in range(n)]
                out.append(_p(artists, ["j", "j'"], t))
    return out


def canonical_instances() -> list[StreamingProblem]:
    """Small fixed problems run before any random search."""
    return [
        _p(["1", "2"], ["a", "b", "c"], [[100, 0, 10], [0, 10, 20]]),
        # one artist, two 600-stream users: threshold 1000 breaks additivity
        _p(["1"], ["a", "b"], [[600, 600]]),
        _p(["1"], ["a", "b"], [[600, 1000]]),
        _p(["1", "2"], ["a"], [[1000], [500]]),
        _p(["1", "2"], ["a"], [[2], [1]]),
        _p(["1", "2"], ["a"], [[5], [0]]),
        _p(["1"], ["a", "b"], [[1, 2]]),
        _p(["1", "2"], ["a", "b"], [[1, 1], [0, 1]]),
        _p(["1", "2", "3"], ["a"], [[1], [2], [3]]),
        _p(["1", "2"], ["a", "b", "c"], [[1, 1, 1], [0, 5, 0]]),
        _p(["1", "2"], ["a", "b"], [[2, 4], [1, 2]]),
    ]


# -- search ------------------------------------------------------------------

def search_counterexample(idx, axiom: str, gen: ProblemGenerator, budget: int, *,
                          inject: Iterable[StreamingProblem] | None = None) -> AxiomVerdict:
    """First violation over injected instances, then ``budget`` generated ones.

    ``inject`` defaults to :func:`canonical_instances` (plus the impossibility
    family for the joint impact axiom). The scan is sequential, so the
    reported witness is always the earliest by instance order.
    """
    if budget < 0:
        raise InvalidParameter("budget must be nonnegative")
    if inject is None:
        inject = canonical_instances()
        if axiom == JOINT_IMPACT:
            inject = impossibility_family() + inject
    rng = random.Random(gen.seed ^ 0x5EED)
    problems = itertools.chain(inject, itertools.islice(gen.problems(), budget))
    instances = checks = 0
    for p in problems:
        instances += 1
        if axiom == JOINT_IMPACT and not _standing_assumption_holds(idx, p):
            continue
        ev = _Evaluator(idx, p)
        for inst in instantiations(axiom, p, rng):
            checks += 1
            component = inst.pop("component", axiom)
            v = run_check(idx, component, p, _ev=ev, **inst)
            if v.counterexample:
                w = v.witness
                if component != axiom:
                    w = replace(w, instantiation={"component": component, **w.instantiation})
                return AxiomVerdict(axiom, _name(idx), COUNTEREXAMPLE, w, instances, checks)
    return AxiomVerdict(axiom, _name(idx), SATISFIED, None, instances, checks)


def _standing_assumption_holds(idx, p: StreamingProblem) -> bool:
    # every single-user sub-problem must give the index a positive total
    fn = _raw(idx)
    return all(any(fn(restrict(p, users=[u])).values()) for u in p.users)


def check_individual_and_global_impact(idx, problems: Iterable[StreamingProblem] | None = None
                                       ) -> AxiomVerdict:
    """Joint check of the two user-impact axioms on the impossibility family."""
    fam = list(problems) if problems is not None else impossibility_family()
    return search_counterexample(idx, JOINT_IMPACT, ProblemGenerator(), 0, inject=fam)


# -- the axiom matrix --------------------------------------------------------

MATRIX_INDICES = (
    "pro-rata", "user-centric", "shapley", "equal-division",
    "spotify", "squared-blend", "top-takes-all", "binary",
)

_T, _F = True, False

# Pattern asserted by the characterization results and the essentiality
# examples attached to them (including directly implied cells). Missing
# cells carry no claim.
CLAIMED_PATTERN = {
    "pro-rata": {ADDITIVITY: _T, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _T,
                 EQUAL_INDIVIDUAL_IMPACT: _T, EQUAL_GLOBAL_IMPACT: _F,
                 EQUAL_IMPACT_OF_ARTISTS: _T},
    "user-centric": {ADDITIVITY: _T, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _T,
                     EQUAL_INDIVIDUAL_IMPACT: _F, EQUAL_GLOBAL_IMPACT: _T,
                     EQUAL_IMPACT_OF_ARTISTS: _F},
    "shapley": {ADDITIVITY: _T, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _F,
                EQUAL_INDIVIDUAL_IMPACT: _F, EQUAL_GLOBAL_IMPACT: _T,
                EQUAL_IMPACT_OF_ARTISTS: _T},
    "equal-division": {ADDITIVITY: _T, NULL_ARTISTS: _F, PAIRWISE_HOMOGENEITY: _F,
                       EQUAL_INDIVIDUAL_IMPACT: _T, EQUAL_GLOBAL_IMPACT: _T,
                       EQUAL_IMPACT_OF_ARTISTS: _T},
    "spotify": {ADDITIVITY: _F, NULL_ARTISTS: _T},
    "squared-blend": {ADDITIVITY: _F, NULL_ARTISTS: _T, EQUAL_INDIVIDUAL_IMPACT: _T},
    "top-takes-all": {ADDITIVITY: _F, NULL_ARTISTS: _T, EQUAL_GLOBAL_IMPACT: _T},
    "binary": {ADDITIVITY: _F, NULL_ARTISTS: _T, EQUAL_IMPACT_OF_ARTISTS: _T},
}

# Full pattern the audit gates on: the claims above completed by direct
# analysis, with one correction. squared-blend does NOT satisfy equal
# individual impact: dropping either of two users who stream artist 1 once
# changes the denominators differently (witness: rows (1,1,1), (0,5,0)).
EXPECTED_PATTERN = {
    "pro-rata": dict(CLAIMED_PATTERN["pro-rata"]),
    "user-centric": dict(CLAIMED_PATTERN["user-centric"]),
    "shapley": dict(CLAIMED_PATTERN["shapley"]),
    "equal-division": dict(CLAIMED_PATTERN["equal-division"]),
    "spotify": {ADDITIVITY: _F, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _F,
                EQUAL_INDIVIDUAL_IMPACT: _T, EQUAL_GLOBAL_IMPACT: _F,
                EQUAL_IMPACT_OF_ARTISTS: _T},
    "squared-blend": {ADDITIVITY: _F, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _T,
                      EQUAL_INDIVIDUAL_IMPACT: _F, EQUAL_GLOBAL_IMPACT: _T,
                      EQUAL_IMPACT_OF_ARTISTS: _F},
    "top-takes-all": {ADDITIVITY: _F, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _F,
                      EQUAL_INDIVIDUAL_IMPACT: _F, EQUAL_GLOBAL_IMPACT: _T,
                      EQUAL_IMPACT_OF_ARTISTS: _F},
    "binary": {ADDITIVITY: _F, NULL_ARTISTS: _T, PAIRWISE_HOMOGENEITY: _F,
               EQUAL_INDIVIDUAL_IMPACT: _T, EQUAL_GLOBAL_IMPACT: _F,
               EQUAL_IMPACT_OF_ARTISTS: _T},
}


def matrix_generator(axiom: str, seed: int) -> ProblemGenerator:
    """Generator settings used by :func:`axiom_matrix` for one axiom column."""
    base = ProblemGenerator(seed=seed + AXIOMS.index(axiom), n_range=(1, 5), m_range=(1, 6),
                            max_stream=4, sparsity=0.35, scales=(1, 1, 250))
    if axiom == PAIRWISE_HOMOGENEITY:
        return replace(base, n_range=(2, 5), proportional_artist_pair=True)
    if axiom == EQUAL_INDIVIDUAL_IMPACT:
        return replace(base, m_range=(2, 6), similar_user_pair=True)
    if axiom in (EQUAL_GLOBAL_IMPACT, ADDITIVITY):
        return replace(base, m_range=(2, 6))
    if axiom == EQUAL_IMPACT_OF_ARTISTS:
        return replace(base, n_range=(2, 5), every_user_two_artists=True)
    return base


@dataclass
class AxiomMatrix:
    seed: int
    budget: int
    cells: dict = field(default_factory=dict)  # (index name, axiom) -> AxiomVerdict

    @property
    def index_names(self) -> list:
        return list(dict.fromkeys(k for k, _ in self.cells))

    def satisfied(self, index: str, axiom: str) -> bool:
        return not self.cells[index, axiom].counterexample

    def mismatches(self, pattern: dict) -> list[tuple]:
        """``(index, axiom, expected, observed)`` for every disagreeing cell."""
        out = []
        for (index, axiom), v in self.cells.items():
            want = pattern.get(index, {}).get(axiom)
            if want is not None and want != (not v.counterexample):
                out.append((index, axiom, want, not v.counterexample))
        return out

    def to_dict(self, pattern: dict | None = None) -> dict:
        rows = {}
        for (index, axiom), v in self.cells.items():
            cell = v.to_dict()
            del cell["axiom"], cell["index"]
            if pattern is not None:
                want = pattern.get(index, {}).get(axiom)
                cell["expected"] = None if want is None else ("satisfied" if want else "fails")
                cell["match"] = None if want is None else want == (not v.counterexample)
            rows.setdefault(index, {})[axiom] = cell
        for row in rows.values():
            for axiom in NOT_IMPLEMENTED:
                row[axiom] = {"verdict": "not-implemented"}
        out = {
            "seed": self.seed,
            "budget": self.budget,
            "axioms": list(AXIOMS) + list(NOT_IMPLEMENTED),
            "note": "satisfied-on-sample is bounded evidence over the searched instances, "
                    "not a proof",
            "matrix": rows,
        }
        if pattern is not None:
            out["matches_expected"] = not self.mismatches(pattern)
        return out


def axiom_matrix(indices: Iterable = MATRIX_INDICES, budget: int = 500, seed: int = 42,
                 axioms: Sequence[str] = AXIOMS) -> AxiomMatrix:
    """Search every (index, axiom) cell. Names are resolved via the registry."""
    result = AxiomMatrix(seed, budget)
    for idx in indices:
        if isinstance(idx, str):
            idx = make_index(idx)
        key = idx.name if isinstance(idx, Index) else _name(idx)
        for axiom in axioms:
            result.cells[key, axiom] = search_counterexample(
                idx, axiom, matrix_generator(axiom, seed), budget)
    return result
