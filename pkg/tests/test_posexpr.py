import numpy as np
import pytest
from hypothesis import given, strategies as st

from arithgames.engine import Position
from arithgames.errors import PositionSyntaxError
from arithgames.posexpr import format_position, parse
from arithgames.rulesets import lookup, names


def test_parse_examples():
    assert parse("7@totient + 7@totative") == Position.of(("totient", 7), ("totative", 7))
    assert parse("3*2@dividing") == Position.of(*[("dividing", 2)] * 3)
    assert parse("  5@sub{1,2}+1@maliquot ") == Position.of(("sub{1,2}", 5), ("maliquot", 1))
    assert parse("4@sub{2, 1}") == Position.of(("sub{1,2}", 4))
    assert parse("0@saliquot") == Position.of(("saliquot", 0))


@pytest.mark.parametrize("text", ["", "   ", "0-sum", " 0-sum "])
def test_empty_sum(text):
    assert parse(text) == Position()


def _offset(text):
    with pytest.raises(PositionSyntaxError) as e:
        parse(text)
    return e.value.offset


def test_error_offsets():
    assert _offset("3@nosuch") == 2
    assert _offset("0@maliquot") == 0
    assert _offset("1@maliquot + 0@totient") == 13
    assert _offset("3@maliquot +") == 12
    assert _offset("3 maliquot") == 2
    assert _offset("0*3@maliquot") == 0
    assert _offset("0-sum + 1@maliquot") == 6
    assert _offset("4@sub{0,1}") == 2


def test_error_message_points_at_token():
    with pytest.raises(PositionSyntaxError) as e:
        parse("2@dividing + 5@bogus")
    text = str(e.value)
    assert "bogus" in text and text.splitlines()[-1].index("^") - 2 == 15


def test_format_examples():
    assert format_position(Position.of(*[("dividing", 2)] * 3)) == "3*2@dividing"
    assert format_position(Position()) == "0-sum"
    assert format_position(Position.of(("totient", 7), ("dividing", 3), ("dividing", 9))) == (
        "9@dividing + 3@dividing + 7@totient")


def _random_position(rng, pool):
    comps = []
    for _ in range(rng.integers(0, 7)):
        name = pool[rng.integers(len(pool))]
        comps += [(name, int(rng.integers(lookup(name).domain_min, 500)))] * int(rng.integers(1, 4))
    return Position(tuple(comps))


def test_round_trip_random_positions():
    rng = np.random.default_rng(1234)
    pool = names() + ["sub{1,2}", "sub{3,5,8}"]
    for _ in range(1000):
        pos = _random_position(rng, pool)
        text = format_position(pos)
        assert parse(text) == pos
        assert format_position(parse(text)) == text


@given(st.lists(st.tuples(st.sampled_from(names()), st.integers(1, 10**6)), max_size=6))
def test_round_trip_property(comps):
    pos = Position(tuple(comps))
    assert parse(format_position(pos)) == pos
