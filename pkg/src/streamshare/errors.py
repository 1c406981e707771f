"""Exception hierarchy.

Input problems (malformed matrices, unknown ids) derive from ``InputError``;
violations of an index's domain (zero totals, bad parameters) derive from
``DomainError``. The CLI maps the two families to different exit codes.
"""


class StreamshareError(Exception):
    pass


class InputError(StreamshareError, ValueError):
    pass


class DomainError(StreamshareError, ValueError):
    pass


# -- problem construction ----------------------------------------------------

class EmptyUserColumn(InputError):
    def __init__(self, user):
        super().__init__(f"user {user!r} has zero total streams")
        self.user = user


class DimensionMismatch(InputError):
    pass


class NegativeOrNonIntegerStream(InputError):
    def __init__(self, artist, user, value):
        super().__init__(
            f"stream count for artist {artist!r}, user {user!r} must be a "
            f"nonnegative integer, got {value!r}"
        )
        self.artist = artist
        self.user = user
        self.value = value


class DuplicateId(InputError):
    pass


class UnknownArtist(InputError, KeyError):
    def __str__(self):
        return f"unknown artist {self.args[0]!r}"


class UnknownUser(InputError, KeyError):
    def __str__(self):
        return f"unknown user {self.args[0]!r}"


class WouldEmptyProblem(InputError):
    pass


# -- indices -----------------------------------------------------------------

class ZeroIndexSum(DomainError):
    pass


class AllArtistsBelowThreshold(ZeroIndexSum):
    pass


class BetaOutOfRange(DomainError):
    pass


class NonPositiveWeight(DomainError):
    pass


class InvalidProbabilitySystem(DomainError):
    pass


class NegativeDecomposition(DomainError):
    pass


class NullArtistViolation(DomainError):
    pass


class UnknownIndex(InputError, KeyError):
    def __str__(self):
        return f"unknown index {self.args[0]!r}"


class InvalidParameter(InputError):
    pass


# -- games / search ----------------------------------------------------------

class TooManyPlayers(DomainError):
    pass


class UnsatisfiableConstraints(DomainError):
    pass


class NoWork(InputError):
    pass
