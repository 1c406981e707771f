"""Streaming problems: who streamed whom, and how often.

A problem is an immutable artist-by-user matrix of nonnegative integer stream
counts in which every user has streamed something. All derived quantities
(artist totals, user totals, fan sets, artist lists, profiles) are plain
functions over it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateId,
    EmptyUserColumn,
    InputError,
    NegativeOrNonIntegerStream,
    UnknownArtist,
    UnknownUser,
    WouldEmptyProblem,
)

Id = Hashable


@dataclass(frozen=True)
class StreamingProblem:
    """Artists ``N``, users ``M`` and the stream matrix ``t`` (one row per artist).

    Build instances through :func:`build_problem`, which validates; the
    constructor itself trusts its arguments.
    """

    artists: tuple
    users: tuple
    streams: tuple  # tuple of row tuples, streams[a][u]
    _artist_pos: dict = field(default=None, init=False, repr=False, compare=False)
    _user_pos: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_artist_pos", {a: k for k, a in enumerate(self.artists)})
        object.__setattr__(self, "_user_pos", {u: k for k, u in enumerate(self.users)})

    def __hash__(self):
        return hash((self.artists, self.users, self.streams))

    @property
    def n(self) -> int:
        return len(self.artists)

    @property
    def m(self) -> int:
        return len(self.users)

    def artist_pos(self, i) -> int:
        try:
            return self._artist_pos[i]
        except KeyError:
            raise UnknownArtist(i) from None

    def user_pos(self, j) -> int:
        try:
            return self._user_pos[j]
        except KeyError:
            raise UnknownUser(j) from None

    def stream(self, i, j) -> int:
        return self.streams[self.artist_pos(i)][self.user_pos(j)]

    def row(self, i) -> tuple:
        return self.streams[self.artist_pos(i)]

    def column(self, j) -> tuple:
        c = self.user_pos(j)
        return tuple(row[c] for row in self.streams)

    def grand_total(self) -> int:
        return sum(sum(row) for row in self.streams)


def _check_ids(ids: Sequence, kind: str) -> tuple:
    ids = tuple(ids)
    seen = set()
    for x in ids:
        if x in seen:
            raise DuplicateId(f"duplicate {kind} id {x!r}")
        seen.add(x)
    return ids


def build_problem(artists: Iterable, users: Iterable, streams) -> StreamingProblem:
    """Validate and freeze a streaming problem.

    ``streams`` is a sequence of rows, one per artist, each with one entry per
    user. Entries must be nonnegative ``int`` values (``bool`` is rejected),
    and every user column must have a positive sum.

    >>> p = build_problem([1, 2], "abc", [[100, 0, 10], [0, 10, 20]])
    >>> total_streams_artist(p, 1)
    110
    """
    artists = _check_ids(artists, "artist")
    users = _check_ids(users, "user")
    if not artists:
        raise WouldEmptyProblem("a problem needs at least one artist")
    if not users:
        raise WouldEmptyProblem("a problem needs at least one user")
    rows = [tuple(r) for r in streams]
    if len(rows) != len(artists):
        raise DimensionMismatch(f"{len(artists)} artists but {len(rows)} rows")
    for a, row in zip(artists, rows):
        if len(row) != len(users):
            raise DimensionMismatch(
                f"row for artist {a!r} has {len(row)} entries, expected {len(users)}"
            )
        for u, v in zip(users, row):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise NegativeOrNonIntegerStream(a, u, v)
    for c, u in enumerate(users):
        if not any(row[c] for row in rows):
            raise EmptyUserColumn(u)
    return StreamingProblem(artists, users, tuple(rows))


def total_streams_artist(p: StreamingProblem, i) -> int:
    return sum(p.row(i))


def total_streams_user(p: StreamingProblem, j) -> int:
    return sum(p.column(j))


def fans(p: StreamingProblem, i) -> frozenset:
    row = p.row(i)
    return frozenset(u for u, v in zip(p.users, row) if v > 0)


def artist_list(p: StreamingProblem, j) -> frozenset:
    col = p.column(j)
    return frozenset(a for a, v in zip(p.artists, col) if v > 0)


def profile(p: StreamingProblem, j) -> dict:
    """Column ``j`` keyed by artist, in artist order."""
    return dict(zip(p.artists, p.column(j)))


def profiles(p: StreamingProblem) -> list[tuple]:
    """All ``(user, profile)`` pairs in user order."""
    return [(u, dict(zip(p.artists, (row[c] for row in p.streams))))
            for c, u in enumerate(p.users)]


def restrict(p: StreamingProblem, artists=None, users=None) -> StreamingProblem:
    """Sub-problem on the given artists and users, keeping the original order.

    Raises :class:`EmptyUserColumn` when a kept user streamed none of the kept
    artists.
    """
    a_keep, u_keep = p.artists, p.users
    if artists is not None:
        wanted = set(artists)
        for a in wanted:
            p.artist_pos(a)
        a_keep = tuple(a for a in p.artists if a in wanted)
    if users is not None:
        wanted = set(users)
        for u in wanted:
            p.user_pos(u)
        u_keep = tuple(u for u in p.users if u in wanted)
    if not a_keep or not u_keep:
        raise WouldEmptyProblem("restriction leaves no artists or no users")
    ai = [p._artist_pos[a] for a in a_keep]
    ui = [p._user_pos[u] for u in u_keep]
    rows = tuple(tuple(p.streams[r][c] for c in ui) for r in ai)
    for k, u in enumerate(u_keep):
        if not any(row[k] for row in rows):
            raise EmptyUserColumn(u)
    return StreamingProblem(a_keep, u_keep, rows)


def remove_user(p: StreamingProblem, j) -> StreamingProblem:
    p.user_pos(j)
    if p.m == 1:
        raise WouldEmptyProblem(f"removing user {j!r} leaves no users")
    return restrict(p, users=[u for u in p.users if u != j])


def remove_artist(p: StreamingProblem, i) -> StreamingProblem:
    p.artist_pos(i)
    if p.n == 1:
        raise WouldEmptyProblem(f"removing artist {i!r} leaves no artists")
    return restrict(p, artists=[a for a in p.artists if a != i])


def is_valid_without_artist(p: StreamingProblem, i) -> bool:
    """True when every user still has positive streams after ``i`` leaves."""
    if p.n == 1:
        return False
    r = p.artist_pos(i)
    return all(
        any(row[c] for k, row in enumerate(p.streams) if k != r)
        for c in range(p.m)
    )


# -- CSV matrix format -------------------------------------------------------

def read_csv(source) -> StreamingProblem:
    """Parse the ``artist_id,<user ids...>`` matrix format.

    ``source`` is a path or an open text stream. Ids are kept as strings.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="", encoding="utf-8") as fh:
            return parse_csv(fh.read())
    return parse_csv(source.read())


def parse_csv(text: str) -> StreamingProblem:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise InputError("empty CSV input")
    header = [c.strip() for c in rows[0]]
    if len(header) < 2 or header[0] != "artist_id":
        raise InputError("CSV header must be 'artist_id,<user ids...>'")
    users = header[1:]
    artists, matrix = [], []
    for lineno, r in enumerate(rows[1:], start=2):
        r = [c.strip() for c in r]
        if len(r) != len(header):
            raise DimensionMismatch(
                f"line {lineno}: expected {len(header)} fields, got {len(r)}"
            )
        artists.append(r[0])
        vals = []
        for u, cell in zip(users, r[1:]):
            try:
                vals.append(int(cell))
            except ValueError:
                raise NegativeOrNonIntegerStream(r[0], u, cell) from None
        matrix.append(vals)
    return build_problem(artists, users, matrix)


def to_csv(p: StreamingProblem) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["artist_id", *map(str, p.users)])
    for a, row in zip(p.artists, p.streams):
        w.writerow([str(a), *row])
    return out.getvalue()


def example_problem() -> StreamingProblem:
    """Two artists, three users: rows (100, 0, 10) and (0, 10, 20)."""
    return build_problem(["1", "2"], ["a", "b", "c"], [[100, 0, 10], [0, 10, 20]])


def problem_from_mapping(t: Mapping[Id, Mapping[Id, int]]) -> StreamingProblem:
    """Build from ``{artist: {user: streams}}``; missing cells are zero."""
    artists = list(t)
    users = []
    for row in t.values():
        for u in row:
            if u not in users:
                users.append(u)
    return build_problem(artists, users, [[t[a].get(u, 0) for u in users] for a in artists])
