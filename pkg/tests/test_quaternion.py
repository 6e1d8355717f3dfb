"""Quaternion algebras: ramification, isomorphism, linkage, subfields, genus."""

import pytest
from hypothesis import assume, given, settings, strategies as st

from quatgenus.errors import PreconditionError, SearchExhausted
from quatgenus.forms import DiagonalForm, is_isotropic, isometric, witt_decompose
from quatgenus.quaternion import (
    QuaternionAlgebra,
    albert_form,
    common_subfield_witness,
    connecting_algebra,
    contains_subfield,
    distinguishing_witness,
    genus_report,
    is_division,
    is_isomorphic,
    is_linked,
    ramification,
)
from quatgenus.symbols import INFINITE_PLACE, finite_place

symbol = st.sampled_from([-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10])

HAMILTON = QuaternionAlgebra(-1, -1)
D13 = QuaternionAlgebra(-1, -3)


def test_construction_reduces_symbols():
    assert QuaternionAlgebra.of(-4, 18) == QuaternionAlgebra(-1, 2)
    with pytest.raises(PreconditionError):
        QuaternionAlgebra.of(0, 1)


def test_norm_and_pure_forms():
    assert HAMILTON.norm_form() == DiagonalForm((1, 1, 1, 1))
    assert HAMILTON.pure_form() == DiagonalForm((-1, -1, -1))
    assert D13.norm_form() == DiagonalForm((1, 1, 3, 3))


def test_ramification_worked_values():
    assert ramification(HAMILTON) == (INFINITE_PLACE, finite_place(2))
    assert ramification(D13) == (INFINITE_PLACE, finite_place(3))
    assert ramification(QuaternionAlgebra(1, 5)) == ()


@given(symbol, symbol)
@settings(max_examples=200)
def test_ramification_has_even_size_and_matches_norm_form(a, b):
    algebra = QuaternionAlgebra.of(a, b)
    ram = ramification(algebra)
    assert len(ram) % 2 == 0
    assert is_division(algebra) == (len(ram) > 0)
    assert is_division(algebra) == (not is_isotropic(algebra.norm_form()))


def test_division_and_split():
    assert is_division(HAMILTON)
    assert not is_division(QuaternionAlgebra(1, 5))
    assert not is_division(QuaternionAlgebra(2, -1))  # norm <1,-2,1,-2> isotropic


def test_isomorphism_by_ramification():
    assert is_isomorphic(HAMILTON, QuaternionAlgebra(-2, -1))
    assert not is_isomorphic(HAMILTON, D13)


def test_albert_form_and_linkage():
    q = albert_form(HAMILTON, D13)
    assert q == DiagonalForm((-1, -1, -1, 1, 3, 3))
    assert is_linked(HAMILTON, D13)
    with pytest.raises(PreconditionError):
        is_linked(HAMILTON, QuaternionAlgebra(1, 5))


@given(symbol, symbol, symbol, symbol)
@settings(max_examples=150, deadline=None)
def test_division_pairs_are_always_linked(a, b, c, d):
    d1, d2 = QuaternionAlgebra.of(a, b), QuaternionAlgebra.of(c, d)
    if is_division(d1) and is_division(d2):
        assert is_linked(d1, d2)
        shared = witt_decompose(
            DiagonalForm(d1.pure_form().coefficients + d2.pure_form().negated().coefficients)
        )
        assert shared.witt_index >= 1


def test_contains_subfield_worked_values():
    assert contains_subfield(HAMILTON, -1)
    assert contains_subfield(HAMILTON, -2)
    assert contains_subfield(HAMILTON, -3)  # 3 is a sum of three squares
    assert not contains_subfield(HAMILTON, -7)  # 7 is not
    assert not contains_subfield(HAMILTON, 2)
    with pytest.raises(PreconditionError):
        contains_subfield(HAMILTON, 4)  # square class of 1 is not a quadratic field


def test_common_subfield_witness_worked_value():
    assert common_subfield_witness(HAMILTON, QuaternionAlgebra(-2, -5)) == -2
    assert common_subfield_witness(HAMILTON, D13, limit=1) == -1
    with pytest.raises(PreconditionError):
        common_subfield_witness(HAMILTON, QuaternionAlgebra(1, 5))
    with pytest.raises(SearchExhausted):
        common_subfield_witness(HAMILTON, QuaternionAlgebra(-2, -5), limit=1)


def test_distinguishing_witness_worked_value():
    assert distinguishing_witness(HAMILTON, QuaternionAlgebra(-2, -5)) == -1
    assert distinguishing_witness(HAMILTON, D13) == -2
    with pytest.raises(PreconditionError):
        distinguishing_witness(HAMILTON, QuaternionAlgebra(-2, -1))


def test_connecting_algebra_worked_value():
    connecting = connecting_algebra(HAMILTON, D13)
    assert connecting == QuaternionAlgebra(-1, 3)
    assert connecting.norm_form() == DiagonalForm((1, 1, -3, -3))
    assert set(ramification(connecting)) == set(ramification(HAMILTON)) ^ set(
        ramification(D13)
    )


@given(symbol, symbol, symbol, symbol)
@settings(max_examples=100, deadline=None)
def test_connecting_algebra_ramification_is_symmetric_difference(a, b, c, d):
    d1, d2 = QuaternionAlgebra.of(a, b), QuaternionAlgebra.of(c, d)
    assume(not is_isomorphic(d1, d2))
    connecting = connecting_algebra(d1, d2)
    assert set(ramification(connecting)) == set(ramification(d1)) ^ set(ramification(d2))


def test_genus_report():
    report = genus_report([HAMILTON, D13, QuaternionAlgebra(-1, -7)])
    data = report.to_json()
    assert data["algebras"] == [[-1, -1], [-1, -3], [-1, -7]]
    verdicts = {tuple(e["pair"]): e["witness"] for e in data["entries"]}
    assert verdicts == {(0, 1): -2, (0, 2): -3, (1, 2): -2}
    iso = genus_report([HAMILTON, QuaternionAlgebra(-2, -1)]).to_json()
    assert iso["entries"][0]["isomorphic"] is True
    assert iso["entries"][0]["witness"] is None
    with pytest.raises(PreconditionError):
        genus_report([HAMILTON, QuaternionAlgebra(1, 5)])


def test_subfield_membership_is_norm_form_criterion():
    for c in (-1, 2, -2, 3, -3, 5, 7, -7):
        member = contains_subfield(D13, c)
        a, b = D13.a, D13.b
        assert member == is_isotropic(DiagonalForm.of([c, -a, -b, a * b]))
