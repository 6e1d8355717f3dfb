"""Places of Q and Hilbert symbols in closed form.

Symbols are evaluated on square-free representatives, so they are
square-class invariant by construction. The closed forms are the
standard ones: the sign rule at the real place, Legendre-symbol
formulas at odd primes, and the epsilon/omega unit characters at 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arith import Rational, factor, is_prime, legendre, squarefree_part
from .errors import InputError


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q; prime=None marks the real place. Ordering: real first."""

    sort_key: int
    prime: int | None

    def is_infinite(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    def to_json(self) -> str | int:
        return "inf" if self.prime is None else self.prime


INFINITE_PLACE = Place(0, None)


def finite_place(p: int) -> Place:
    if not is_prime(p):
        raise InputError(f"not a prime: {p}")
    return Place(p, p)


def parse_place(text: str) -> Place:
    """Parse 'inf' or a prime into a Place."""
    if text in ("inf", "infinity", "oo", "real"):
        return INFINITE_PLACE
    try:
        p = int(text)
    except ValueError as exc:
        raise InputError(f"not a place: {text!r}") from exc
    return finite_place(p)


def place_from_json(value: str | int) -> Place:
    if value == "inf":
        return INFINITE_PLACE
    if isinstance(value, int):
        return finite_place(value)
    raise InputError(f"not a place: {value!r}")


def _epsilon(u: int) -> int:
    # (u - 1)/2 mod 2 for odd u: 0 when u = 1 (mod 4), 1 when u = 3 (mod 4)
    assert u % 2 != 0
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    # (u^2 - 1)/8 mod 2 for odd u: 0 when u = +-1 (mod 8), 1 when u = +-3 (mod 8)
    assert u % 2 != 0
    return ((u * u - 1) // 8) % 2


def _split_at(n: int, p: int) -> tuple[int, int]:
    """Write square-free n as p^alpha * u with p not dividing u; return (alpha, u)."""
    if n % p == 0:
        return 1, n // p
    return 0, n


@lru_cache(maxsize=1 << 20)
def _hilbert_squarefree(a: int, b: int, prime: int | None) -> int:
    if prime is None:
        return -1 if (a < 0 and b < 0) else 1
    p = prime
    alpha, u = _split_at(a, p)
    beta, w = _split_at(b, p)
    if p == 2:
        exponent = _epsilon(u) * _epsilon(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if exponent % 2 else 1
    exponent = alpha * beta * _epsilon(p)
    value = (-1) ** exponent
    if beta:
        value *= legendre(u, p)
    if alpha:
        value *= legendre(w, p)
    return 1 if value > 0 else -1


def hilbert_symbol(a: int | Rational, b: int | Rational, place: Place) -> int:
    """Hilbert symbol (a,b) at a place of Q; arguments must be nonzero."""
    sa = squarefree_part(a if isinstance(a, Fraction) else int(a))
    sb = squarefree_part(b if isinstance(b, Fraction) else int(b))
    return _hilbert_squarefree(sa, sb, place.prime)


def local_is_square(a: int | Rational, place: Place) -> bool:
    """Is a nonzero rational a square in the completion at the given place?"""
    s = squarefree_part(a if isinstance(a, Fraction) else int(a))
    if place.is_infinite():
        return s > 0
    p = place.prime
    assert p is not None
    if s % p == 0:
        return False
    if p == 2:
        return s % 8 == 1
    return legendre(s, p) == 1


def relevant_places_of(values: Iterable[int | Rational]) -> list[Place]:
    """The real place, 2, and every odd prime dividing some value's square class."""
    primes: set[int] = {2}
    for v in values:
        s = squarefree_part(v if isinstance(v, Fraction) else int(v))
        for p, _ in factor(s).prime_powers:
            primes.add(p)
    return [INFINITE_PLACE] + [finite_place(p) for p in sorted(primes)]


def hasse_invariant(coefficients: Iterable[int | Rational], place: Place) -> int:
    """Product of hilbert_symbol(a_i, a_j) over i < j for a diagonal form."""
    coeffs = [squarefree_part(c if isinstance(c, Fraction) else int(c)) for c in coefficients]
    value = 1
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            value *= _hilbert_squarefree(coeffs[i], coeffs[j], place.prime)
    return value
