"""Vector search backends: identical enumeration order, pure vs compiled."""

import itertools
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from quatgenus import _searchpure
from quatgenus.errors import InputError
from quatgenus.search import backend_name, compiled_available, isotropic_vector_search

coefficient = st.sampled_from([1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10, 15, -15])


def _rank(x: int) -> int:
    """Position of x in the per-coordinate enumeration order 0, 1, -1, 2, -2, ..."""
    return 2 * abs(x) - (1 if x > 0 else 0)


def _brute_minimum(coefficients, bound):
    """Reference: scan shells by max-norm, inside a shell compare rank tuples."""
    best = None
    for shell in range(1, bound + 1):
        candidates = []
        for vec in itertools.product(range(-shell, shell + 1), repeat=len(coefficients)):
            if max(abs(x) for x in vec) != shell and any(vec):
                continue
            if not any(vec):
                continue
            if sum(c * x * x for c, x in zip(coefficients, vec)) == 0:
                candidates.append(tuple(_rank(x) for x in vec))
        if candidates:
            ordinal = min(candidates)
            half = [(o + 1) // 2 for o in ordinal]
            return tuple(v if o % 2 == 1 else -v for o, v in zip(ordinal, half))
    return None


def test_worked_minimal_vectors():
    assert isotropic_vector_search((1, -1), 10) == (1, 1)
    assert isotropic_vector_search((1, 1, -2), 10) == (1, 1, 1)
    assert isotropic_vector_search((1, 1, 1, 1), 10) is None
    assert isotropic_vector_search((1, -2), 10) is None  # sqrt(2) is irrational


def test_positive_representative_of_mirror_pair():
    vec = isotropic_vector_search((2, -2), 10)
    assert vec == (1, 1)  # not (-1, 1) or (1, -1): minimal rank tuple is all-positive


def test_bound_validation():
    with pytest.raises(InputError):
        isotropic_vector_search((1, -1), 0)


@given(st.lists(coefficient, min_size=2, max_size=3), st.integers(min_value=1, max_value=6))
@settings(max_examples=120, deadline=None)
def test_search_matches_brute_reference(coefficients, bound):
    coefficients = tuple(coefficients)
    assert isotropic_vector_search(coefficients, bound) == _brute_minimum(
        coefficients, bound
    )


@given(st.lists(coefficient, min_size=2, max_size=6), st.integers(min_value=1, max_value=25))
@settings(max_examples=150, deadline=None)
def test_pure_backend_agrees_with_dispatch(coefficients, bound):
    coefficients = tuple(coefficients)
    assert isotropic_vector_search(coefficients, bound) == _searchpure.search(
        coefficients, bound
    )


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
def test_compiled_backend_matches_pure_exactly():
    from quatgenus import _fastkernel

    cases = [
        ((1, -1), 30),
        ((1, 1, -2), 30),
        ((2, 3, -5), 40),
        ((1, 1, 1, -7), 25),
        ((-2, 1, 3, 3), 25),
        ((1, 2, -3, 5, -6, 7), 12),
        ((13, -1, 1, 1), 30),
    ]
    for coefficients, bound in cases:
        assert _fastkernel.search(coefficients, bound) == _searchpure.search(
            coefficients, bound
        )


def test_backend_name_is_reported():
    assert backend_name() in ("compiled", "pure")


def test_environment_override_forces_pure_backend():
    code = (
        "from quatgenus.search import backend_name; print(backend_name())"
    )
    result = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "QUATGENUS_PURE": "1"},
        check=True,
    )
    assert result.stdout.strip() == "pure"
