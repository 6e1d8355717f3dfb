"""Backend selection for the isotropic-vector search.

The compiled kernel is used when it imported cleanly, the request fits its
64-bit arithmetic, and QUATGENUS_PURE is not set; otherwise the pure kernel
runs. Both implement the identical enumeration contract, so the choice is
invisible in results.
"""

from __future__ import annotations

import os

from . import _searchpure
from .errors import InputError

try:
    from . import _fastkernel  # type: ignore[attr-defined]
except ImportError:
    _fastkernel = None

_INT64_BUDGET = 2**62


def _fits_compiled(coefficients: tuple[int, ...], bound: int) -> bool:
    n = len(coefficients)
    if n > 16:
        return False
    magnitude = sum(abs(c) for c in coefficients) * bound * bound
    if magnitude >= _INT64_BUDGET:
        return False
    base = 2 * bound + 1
    k = n - n // 2
    return base**k < _INT64_BUDGET


def compiled_available() -> bool:
    return _fastkernel is not None and not os.environ.get("QUATGENUS_PURE")


def backend_name() -> str:
    return "compiled" if compiled_available() else "pure"


def isotropic_vector_search(coefficients: tuple[int, ...], bound: int) -> tuple[int, ...] | None:
    """Enumeration-order-minimal isotropic vector with max-norm <= bound, or None."""
    if bound < 1:
        raise InputError("search bound must be positive")
    if not coefficients or any(c == 0 for c in coefficients):
        raise InputError("coefficients must be nonzero")
    if compiled_available() and _fits_compiled(coefficients, bound):
        return _fastkernel.search(coefficients, bound)
    return _searchpure.search(coefficients, bound)
