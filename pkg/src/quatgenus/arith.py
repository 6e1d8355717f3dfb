"""Exact integer and rational arithmetic underpinning the form machinery.

Everything here is integer-exact: rationals are `fractions.Fraction`,
factorization is deterministic trial division with a Brent-rho fallback,
and square classes are represented by their unique square-free integer
representative (sign included).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import InputError

Rational = Fraction

_TRIAL_BOUND = 1_000_000

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of odd composite n. Deterministic parameter sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"factor search failed for {n}")


@dataclass(frozen=True)
class Factorization:
    """Sign and ascending (prime, exponent) pairs; value() reconstructs the input."""

    sign: int
    prime_powers: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.prime_powers:
            out *= p**e
        return out


@lru_cache(maxsize=65536)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    assert n >= 1
    powers: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            powers[p] = powers.get(p, 0) + 1
            n //= p
    # 6k+-1 wheel up to the trial bound
    d = 7
    step = 4
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            powers[d] = powers.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            powers[m] = powers.get(m, 0) + 1
            continue
        g = _brent_rho(m)
        stack.append(g)
        stack.append(m // g)
    return tuple(sorted(powers.items()))


def factor(n: int) -> Factorization:
    """Factor a nonzero integer; raises ValueError on zero."""
    if n == 0:
        raise InputError("cannot factor zero")
    sign = 1 if n > 0 else -1
    return Factorization(sign, _factor_positive(abs(n)))


def squarefree_part(x: int | Rational) -> int:
    """The unique square-free integer in the square class of a nonzero rational."""
    if isinstance(x, Fraction):
        if x == 0:
            raise InputError("zero has no square class")
        n = x.numerator * x.denominator
    else:
        if x == 0:
            raise InputError("zero has no square class")
        n = x
    f = factor(n)
    out = f.sign
    for p, e in f.prime_powers:
        if e % 2 == 1:
            out *= p
    return out


def is_squarefree(n: int) -> bool:
    """True when a nonzero integer equals its own square-free part."""
    return n != 0 and squarefree_part(n) == n


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p: 0, 1, or -1."""
    if p == 2 or not is_prime(p):
        raise InputError(f"modulus must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def squarefree_classes(limit: int) -> list[int]:
    """Square-free integers with |c| <= limit, ordered by |c| ascending, positive first."""
    out: list[int] = []
    for m in range(1, limit + 1):
        if is_squarefree(m):
            out.append(m)
            out.append(-m)
    return out


def witness_sequence(limit: int) -> list[int]:
    """The square-class witness order: |c| ascending, positive first, c = 1 skipped."""
    return [c for c in squarefree_classes(limit) if c != 1]


def parse_rational(text: str) -> Rational:
    """Parse '-3', '3/4' style input into an exact rational."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc
