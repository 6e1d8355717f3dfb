"""Pure-Python isotropic-vector search, the reference kernel.

Enumeration contract (shared with the compiled kernel): candidate vectors
are ordered by max-norm shell, then lexicographically by the per-coordinate
rank sequence 0, 1, -1, 2, -2, ...; the first zero of the form wins.

The search is meet-in-the-middle: the coordinate block is split into a
most-significant left prefix and a right suffix; value tables keyed by the
partial sums hold the minimal-rank tuple per value, and each shell only
touches its own surface, so exhausting a bound costs on the order of the
final cube rather than cube times shells.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator


def _rank_value(r: int) -> int:
    # rank sequence 0, 1, -1, 2, -2, ...
    if r == 0:
        return 0
    return (r + 1) // 2 if r % 2 else -(r // 2)


def _surface(coeffs: tuple[int, ...], m: int, pw: list[int]) -> Iterator[tuple[int, int]]:
    """Yield (value, ordinal) over tuples whose max rank is 2m-1 or 2m.

    Decomposed by the first coordinate j carrying a new rank, so each tuple
    appears exactly once.
    """
    k = len(coeffs)
    hi = 2 * m
    new_lo = hi - 1
    for j in range(k):
        ranges = []
        for i in range(k):
            if i < j:
                ranges.append(range(0, new_lo))
            elif i == j:
                ranges.append(range(new_lo, hi + 1))
            else:
                ranges.append(range(0, hi + 1))
        for digits in product(*ranges):
            val = 0
            ordinal = 0
            for i, d in enumerate(digits):
                v = _rank_value(d)
                val += coeffs[i] * v * v
                ordinal += d * pw[i]
            yield val, ordinal


def _decode(ordinal: int, k: int, base: int, pw: list[int]) -> list[int]:
    return [_rank_value((ordinal // pw[i]) % base) for i in range(k)]


def search(coefficients: tuple[int, ...], bound: int) -> tuple[int, ...] | None:
    """First isotropic vector in enumeration order with max-norm <= bound, or None."""
    n = len(coefficients)
    if n < 2 or bound < 1:
        return None
    k_right = n // 2
    k_left = n - k_right
    cl = tuple(coefficients[:k_left])
    cr = tuple(coefficients[k_left:])
    base = 2 * bound + 1
    pw_l = [base ** (k_left - 1 - i) for i in range(k_left)]
    pw_r = [base ** (k_right - 1 - i) for i in range(k_right)]
    # value -> minimal ordinal over the cube searched so far; the all-zero
    # tuple (value 0, ordinal 0) seeds both sides
    left_all: dict[int, int] = {0: 0}
    right_all: dict[int, int] = {0: 0}
    for m in range(1, bound + 1):
        surf_l = list(_surface(cl, m, pw_l))
        surf_r = list(_surface(cr, m, pw_r))
        right_new: dict[int, int] = {}
        for val, o in surf_r:
            prev = right_new.get(val)
            if prev is None or o < prev:
                right_new[val] = o
        best: tuple[int, int] | None = None
        # new left against any right seen up to this shell
        for val, o in surf_l:
            need = -val
            r1 = right_all.get(need)
            r2 = right_new.get(need)
            ro = r1 if r2 is None else r2 if r1 is None else min(r1, r2)
            if ro is not None and (best is None or (o, ro) < best):
                best = (o, ro)
        # new right against strictly older lefts
        for val, o in right_new.items():
            lo = left_all.get(-val)
            if lo is not None and (best is None or (lo, o) < best):
                best = (lo, o)
        if best is not None:
            lo, ro = best
            vec = _decode(lo, k_left, base, pw_l) + _decode(ro, k_right, base, pw_r)
            return tuple(vec)
        for val, o in surf_l:
            prev = left_all.get(val)
            if prev is None or o < prev:
                left_all[val] = o
        for val, o in surf_r:
            prev = right_all.get(val)
            if prev is None or o < prev:
                right_all[val] = o
    return None
