"""Exact popularity indices and revenue rewards for music-streaming problems,
with executable axiom checks and Shapley-value audits."""

from .core import StreamingProblem, build_problem, example_problem, read_csv, to_csv
from .indices import Index, make_index, reward
from .games import TUGame, shapley_value

__all__ = [
    "Index",
    "StreamingProblem",
    "TUGame",
    "build_problem",
    "example_problem",
    "make_index",
    "read_csv",
    "reward",
    "shapley_value",
    "to_csv",
]

__version__ = "0.1.0"
