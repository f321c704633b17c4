import pytest
from hypothesis import given, strategies as st

from graphrank.cardinality import (
    ALEPH0, ALEPH1, UNCOUNTABLE, Cardinality, countable_union, finite,
)

cards = st.one_of(
    st.integers(0, 20).map(finite),
    st.sampled_from([ALEPH0, ALEPH1, UNCOUNTABLE]),
)


def test_order():
    assert finite(3) < finite(5) < ALEPH0 < ALEPH1 <= UNCOUNTABLE
    assert not ALEPH1 < ALEPH1


def test_arithmetic():
    assert finite(2).plus(finite(3)) == finite(5)
    assert finite(7).plus(ALEPH0) == ALEPH0
    assert ALEPH1.plus(ALEPH0) == ALEPH1
    assert ALEPH0.times(ALEPH0) == ALEPH0
    assert finite(0).times(ALEPH1) == finite(0)
    assert ALEPH1.times(finite(2)) == ALEPH1


def test_countable_union():
    assert countable_union([finite(3), finite(4)]) == finite(4)
    assert countable_union([finite(3)], infinitely_many=True) == ALEPH0
    assert countable_union([ALEPH0, finite(1)], infinitely_many=True) == ALEPH0
    assert countable_union([ALEPH1, finite(1)]) == ALEPH1


def test_parse():
    assert Cardinality.parse("5") == finite(5)
    assert Cardinality.parse("aleph0") == ALEPH0
    assert Cardinality.parse("aleph1") == ALEPH1
    with pytest.raises(ValueError):
        Cardinality.parse("alephomega")


@given(cards, cards)
def test_plus_is_max_beyond_finite(a, b):
    s = a.plus(b)
    if a.is_infinite() or b.is_infinite():
        assert s == max(a, b)
    else:
        assert s == finite(a.n + b.n)


@given(cards, cards)
def test_times_commutes(a, b):
    assert a.times(b) == b.times(a)
