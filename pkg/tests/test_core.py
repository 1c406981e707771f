import pytest
from hypothesis import given

from streamshare.core import (
    artist_list,
    build_problem,
    fans,
    is_valid_without_artist,
    parse_csv,
    problem_from_mapping,
    profile,
    remove_artist,
    remove_user,
    restrict,
    to_csv,
    total_streams_artist,
    total_streams_user,
)
from streamshare.errors import (
    DimensionMismatch,
    DuplicateId,
    EmptyUserColumn,
    InputError,
    NegativeOrNonIntegerStream,
    UnknownArtist,
    UnknownUser,
    WouldEmptyProblem,
)

from conftest import problems


def test_example_problem_is_valid(ex1):
    assert ex1.artists == ("1", "2")
    assert ex1.users == ("a", "b", "c")
    assert ex1.stream("1", "a") == 100
    assert ex1.stream("2", "a") == 0


def test_empty_user_column():
    with pytest.raises(EmptyUserColumn) as e:
        build_problem([1], ["a"], [[0]])
    assert e.value.user == "a"


@pytest.mark.parametrize("bad", [-1, 1.5, True, "3"])
def test_bad_stream_values(bad):
    with pytest.raises(NegativeOrNonIntegerStream):
        build_problem([1, 2], ["a"], [[3], [bad]])


def test_dimension_and_duplicates():
    with pytest.raises(DimensionMismatch):
        build_problem([1, 2], ["a"], [[1]])
    with pytest.raises(DimensionMismatch):
        build_problem([1], ["a", "b"], [[1]])
    with pytest.raises(DuplicateId):
        build_problem([1, 1], ["a"], [[1], [1]])
    with pytest.raises(DuplicateId):
        build_problem([1], ["a", "a"], [[1, 1]])
    with pytest.raises(WouldEmptyProblem):
        build_problem([], ["a"], [])


def test_totals(ex1):
    assert total_streams_artist(ex1, "1") == 110
    assert total_streams_artist(ex1, "2") == 30
    assert total_streams_user(ex1, "c") == 30
    assert total_streams_user(ex1, "a") == 100
    assert total_streams_user(build_problem([1], ["a"], [[5]]), "a") == 5
    zero_row = build_problem([1, 2], ["a"], [[4], [0]])
    assert total_streams_artist(zero_row, 2) == 0
    with pytest.raises(UnknownArtist):
        total_streams_artist(ex1, "3")
    with pytest.raises(UnknownUser):
        total_streams_user(ex1, "z")


def test_fans_lists_profiles(ex1):
    assert fans(ex1, "1") == {"a", "c"}
    assert fans(ex1, "2") == {"b", "c"}
    assert fans(build_problem([1, 2], ["a"], [[4], [0]]), 2) == frozenset()
    assert artist_list(ex1, "c") == {"1", "2"}
    assert artist_list(ex1, "a") == {"1"}
    assert profile(ex1, "c") == {"1": 10, "2": 20}
    assert profile(ex1, "b") == {"1": 0, "2": 10}
    assert profile(build_problem([1], ["a"], [[7]]), "a") == {1: 7}


def test_remove_user(ex1):
    q = remove_user(ex1, "a")
    assert q.users == ("b", "c")
    assert q.streams == ((0, 10), (10, 20))
    with pytest.raises(WouldEmptyProblem):
        remove_user(build_problem([1], ["a"], [[1]]), "a")


def test_remove_artist(ex1):
    with pytest.raises(EmptyUserColumn) as e:
        remove_artist(ex1, "2")
    assert e.value.user == "b"
    sub = restrict(ex1, users=["c"])
    assert remove_artist(sub, "1").streams == ((20,),)
    assert not is_valid_without_artist(ex1, "2")
    assert is_valid_without_artist(sub, "1")


@given(problems())
def test_grand_total_two_ways(p):
    assert sum(total_streams_artist(p, a) for a in p.artists) == \
        sum(total_streams_user(p, u) for u in p.users) == p.grand_total()


@given(problems())
def test_fan_list_duality(p):
    for a in p.artists:
        for u in p.users:
            assert (u in fans(p, a)) == (a in artist_list(p, u))


@given(problems(min_users=2))
def test_remove_user_keeps_other_columns(p):
    j = p.users[0]
    q = remove_user(p, j)
    for u in q.users:
        assert q.column(u) == p.column(u)
    assert q.artists == p.artists


@given(problems())
def test_csv_round_trip(p):
    assert parse_csv(to_csv(p)) == p


def test_csv_parse_errors():
    with pytest.raises(InputError):
        parse_csv("")
    with pytest.raises(InputError):
        parse_csv("artist,a\n1,2\n")
    with pytest.raises(DimensionMismatch):
        parse_csv("artist_id,a,b\n1,2\n")
    with pytest.raises(NegativeOrNonIntegerStream):
        parse_csv("artist_id,a\n1,x\n")
    with pytest.raises(EmptyUserColumn):
        parse_csv("artist_id,a,b\n1,2,0\n")


def test_problem_from_mapping():
    p = problem_from_mapping({"x": {"a": 2}, "y": {"b": 3}})
    assert p.users == ("a", "b")
    assert p.streams == ((2, 0), (0, 3))


def test_problem_is_immutable(ex1):
    with pytest.raises(Exception):
        ex1.streams = ()
    assert hash(ex1) == hash(build_problem(["1", "2"], ["a", "b", "c"],
                                           [[100, 0, 10], [0, 10, 20]]))
