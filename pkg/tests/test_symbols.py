"""Hilbert symbols: closed forms against the residue-search oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatgenus.errors import InputError
from quatgenus.oracles import hilbert_symbol_search
from quatgenus.symbols import (
    INFINITE_PLACE,
    Place,
    finite_place,
    hasse_invariant,
    hilbert_symbol,
    local_is_square,
    parse_place,
    relevant_places_of,
)

PLACES = [INFINITE_PLACE, finite_place(2), finite_place(3), finite_place(5), finite_place(7)]

nonzero = st.integers(min_value=-200, max_value=200).filter(lambda n: n != 0)


def test_worked_symbol_values():
    assert hilbert_symbol(-1, -1, finite_place(2)) == -1
    assert hilbert_symbol(-1, -1, INFINITE_PLACE) == -1
    assert hilbert_symbol(2, 3, finite_place(3)) == -1
    assert hilbert_symbol(3, 3, finite_place(2)) == -1
    assert hilbert_symbol(1, 7, finite_place(3)) == 1


def test_symbol_matches_search_oracle_exhaustively():
    for a in range(-30, 31):
        if a == 0:
            continue
        for b in range(-30, 31):
            if b == 0:
                continue
            for place in PLACES:
                assert hilbert_symbol(a, b, place) == hilbert_symbol_search(a, b, place), (
                    a,
                    b,
                    str(place),
                )


@given(nonzero, nonzero, st.sampled_from(PLACES))
@settings(max_examples=300)
def test_symbol_symmetry(a, b, place):
    assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)


@given(nonzero, nonzero, nonzero, st.sampled_from(PLACES))
@settings(max_examples=300)
def test_symbol_bilinearity(a, b, c, place):
    assert hilbert_symbol(a * b, c, place) == hilbert_symbol(a, c, place) * hilbert_symbol(
        b, c, place
    )


@given(nonzero, nonzero, st.integers(min_value=1, max_value=12), st.sampled_from(PLACES))
@settings(max_examples=300)
def test_symbol_square_class_invariance(a, b, t, place):
    assert hilbert_symbol(a * t * t, b, place) == hilbert_symbol(a, b, place)


@given(nonzero, st.sampled_from(PLACES))
@settings(max_examples=200)
def test_symbol_with_own_negative_splits(a, place):
    assert hilbert_symbol(a, -a, place) == 1


def test_symbol_accepts_rationals():
    assert hilbert_symbol(Fraction(-1, 4), Fraction(-9), INFINITE_PLACE) == -1


def test_local_is_square():
    assert local_is_square(9, INFINITE_PLACE)
    assert not local_is_square(-9, INFINITE_PLACE)
    assert local_is_square(17, finite_place(2))  # 17 = 1 mod 8
    assert not local_is_square(3, finite_place(2))
    assert not local_is_square(2, finite_place(2))
    assert local_is_square(2, finite_place(7))  # 3^2 = 2 mod 7
    assert not local_is_square(3, finite_place(7))
    assert not local_is_square(7, finite_place(7))


def test_relevant_places():
    places = relevant_places_of([6, 5])
    assert places[0] == INFINITE_PLACE
    assert [p.prime for p in places[1:]] == [2, 3, 5]


def test_hasse_invariant_worked_value():
    assert hasse_invariant([1, 1, 3, 3], finite_place(3)) == -1
    assert hasse_invariant([1, 1], finite_place(3)) == 1


def test_parse_place():
    assert parse_place("inf") == INFINITE_PLACE
    assert parse_place("2") == finite_place(2)
    assert parse_place("13") == finite_place(13)
    with pytest.raises(InputError):
        parse_place("4")
    with pytest.raises(InputError):
        parse_place("x")


def test_place_ordering_real_then_primes():
    assert sorted([finite_place(3), INFINITE_PLACE, finite_place(2)]) == [
        INFINITE_PLACE,
        finite_place(2),
        finite_place(3),
    ]


def test_product_formula_spot():
    for a, b in [(-1, -1), (3, 5), (-7, 10), (30, -15)]:
        product = 1
        for place in relevant_places_of([a, b]):
            product *= hilbert_symbol(a, b, place)
        assert product == 1
