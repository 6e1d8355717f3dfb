"""Regular diagonal quadratic forms over Q, exactly.

Coefficients are stored as square-free integers (the square class of each
diagonal entry), so isometry invariants read off arithmetically. Global
isotropy is decided place by place over the relevant places; witnesses
come from the bounded enumeration search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Rational, squarefree_part
from .errors import InputError
from .search import isotropic_vector_search
from .symbols import (
    INFINITE_PLACE,
    Place,
    hasse_invariant as _hasse_of_coeffs,
    hilbert_symbol,
    local_is_square,
    relevant_places_of,
)


@dataclass(frozen=True)
class DiagonalForm:
    """<a_1, ..., a_n> with square-free nonzero integer entries."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise InputError("a form needs at least one coefficient")
        for c in self.coefficients:
            if c == 0 or squarefree_part(c) != c:
                raise InputError(f"coefficient {c} is not a nonzero square-free integer")

    @classmethod
    def of(cls, values: Iterable[int | Rational]) -> "DiagonalForm":
        reduced = []
        for v in values:
            if v == 0:
                raise InputError("zero coefficient makes the form degenerate")
            reduced.append(squarefree_part(v if isinstance(v, Fraction) else int(v)))
        return cls(tuple(reduced))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def det(self) -> int:
        prod = 1
        for c in self.coefficients:
            prod *= c
        return squarefree_part(prod)

    def signed_disc(self) -> int:
        n = self.dim
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return squarefree_part(sign * self.det())

    def perp(self, other: "DiagonalForm") -> "DiagonalForm":
        return DiagonalForm(self.coefficients + other.coefficients)

    def scaled(self, s: int | Rational) -> "DiagonalForm":
        return DiagonalForm.of(Fraction(s) * c for c in self.coefficients)

    def negated(self) -> "DiagonalForm":
        return DiagonalForm(tuple(-c for c in self.coefficients))

    def evaluate(self, vector: Sequence[Rational | int]) -> Rational:
        if len(vector) != self.dim:
            raise InputError("vector length does not match the form dimension")
        return sum((Fraction(x) * x * c for c, x in zip(self.coefficients, vector)), Fraction(0))

    def to_json(self) -> list[int]:
        return list(self.coefficients)

    @classmethod
    def from_json(cls, data: object) -> "DiagonalForm":
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise InputError(f"not a diagonal form: {data!r}")
        return cls.of(data)

    def __str__(self) -> str:
        return "<" + ",".join(str(c) for c in self.coefficients) + ">"


HYPERBOLIC_PLANE = DiagonalForm((1, -1))


@dataclass(frozen=True)
class FormInvariants:
    """Classifying data over Q: dimension, determinant class, Hasse symbols, signature."""

    dimension: int
    determinant: int
    signed_discriminant: int
    hasse: tuple[tuple[Place, int], ...]
    signature: tuple[int, int]

    def hasse_at(self, place: Place) -> int:
        for v, e in self.hasse:
            if v == place:
                return e
        return 1

    def places(self) -> tuple[Place, ...]:
        return tuple(v for v, _ in self.hasse)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "determinant": self.determinant,
            "signed_discriminant": self.signed_discriminant,
            "hasse": [[v.to_json(), e] for v, e in self.hasse],
            "signature": list(self.signature),
        }


def relevant_places(q: DiagonalForm) -> list[Place]:
    """The real place, 2, and odd primes dividing some coefficient."""
    return relevant_places_of(q.coefficients)


def hasse_invariant(q: DiagonalForm, place: Place) -> int:
    """Product of (a_i, a_j) over i < j at the place."""
    return _hasse_of_coeffs(q.coefficients, place)


def invariants(q: DiagonalForm) -> FormInvariants:
    places = relevant_places(q)
    pos = sum(1 for c in q.coefficients if c > 0)
    return FormInvariants(
        dimension=q.dim,
        determinant=q.det(),
        signed_discriminant=q.signed_disc(),
        hasse=tuple((v, hasse_invariant(q, v)) for v in places),
        signature=(pos, q.dim - pos),
    )


def _local_isotropic_from_data(
    dimension: int,
    determinant: int,
    hasse: int,
    signature: tuple[int, int],
    place: Place,
) -> bool:
    """Local isotropy from classifying data; exact casework by dimension."""
    if dimension <= 1:
        return False
    if place.is_infinite():
        return signature[0] >= 1 and signature[1] >= 1
    if dimension == 2:
        return local_is_square(-determinant, place)
    if dimension == 3:
        return hasse == hilbert_symbol(-1, -determinant, place)
    if dimension == 4:
        if not local_is_square(determinant, place):
            return True
        return hasse != -hilbert_symbol(-1, -1, place)
    return True


def is_isotropic_local(q: DiagonalForm, place: Place) -> bool:
    return _local_isotropic_from_data(
        q.dim, q.det(), hasse_invariant(q, place), invariants(q).signature, place
    )


def _isotropic_from_invariants(inv: FormInvariants) -> bool:
    if inv.dimension <= 1:
        return False
    for place, eps in inv.hasse:
        if not _local_isotropic_from_data(
            inv.dimension, inv.determinant, eps, inv.signature, place
        ):
            return False
    return True


def isotropy_failure(q: DiagonalForm) -> Place | None:
    """First place (real place first, then primes ascending) where q is anisotropic."""
    if q.dim == 1:
        return INFINITE_PLACE
    for place in relevant_places(q):
        if not is_isotropic_local(q, place):
            return place
    return None


def is_isotropic(q: DiagonalForm) -> bool:
    """Global isotropy: isotropic at every place (checked over the relevant ones)."""
    return isotropy_failure(q) is None


def represents(q: DiagonalForm, c: int | Rational) -> bool:
    """Does q represent the nonzero rational c over Q?"""
    if c == 0:
        raise InputError("representation of zero is the isotropy question")
    s = squarefree_part(c if isinstance(c, Fraction) else int(c))
    return is_isotropic(DiagonalForm(q.coefficients + (-s,)))


def isotropic_vector(q: DiagonalForm, bound: int) -> tuple[int, ...] | None:
    """Enumeration-order-minimal integer zero with max-norm <= bound, or None."""
    if bound < 1:
        raise InputError("search bound must be positive")
    if q.dim < 2:
        return None
    pos, neg = invariants(q).signature
    if pos == 0 or neg == 0:
        return None
    vec = isotropic_vector_search(q.coefficients, bound)
    if vec is not None:
        assert q.evaluate(vec) == 0
    return vec


def isometric(q1: DiagonalForm, q2: DiagonalForm) -> bool:
    """Isometry over Q: equal dimension, determinant class, signature, all Hasse symbols."""
    if q1.dim != q2.dim:
        return False
    i1, i2 = invariants(q1), invariants(q2)
    if i1.determinant != i2.determinant or i1.signature != i2.signature:
        return False
    for place in sorted(set(i1.places()) | set(i2.places())):
        if i1.hasse_at(place) != i2.hasse_at(place):
            return False
    return True


@dataclass(frozen=True)
class WittDecomposition:
    witt_index: int
    anisotropic_part: DiagonalForm | None
    witnesses: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "witt_index": self.witt_index,
            "anisotropic_part": None
            if self.anisotropic_part is None
            else self.anisotropic_part.to_json(),
            "witnesses": [list(w) for w in self.witnesses],
        }


def _peel_invariants(inv: FormInvariants) -> FormInvariants:
    """Invariants of q' where q = H perp q', via the orthogonal-sum rule."""
    det2 = squarefree_part(-inv.determinant)
    hasse2 = tuple(
        (v, e * hilbert_symbol(-1, det2, v)) for v, e in inv.hasse
    )
    n2 = inv.dimension - 2
    sign = -1 if (n2 * (n2 - 1) // 2) % 2 else 1
    return FormInvariants(
        dimension=n2,
        determinant=det2,
        signed_discriminant=squarefree_part(sign * det2),
        hasse=hasse2,
        signature=(inv.signature[0] - 1, inv.signature[1] - 1),
    )


def _split_hyperbolic(q: DiagonalForm, vec: tuple[int, ...]) -> DiagonalForm | None:
    """Split off the hyperbolic plane through an isotropic vector; diagonalize the rest."""
    n = q.dim
    a = q.coefficients
    b = lambda u, w: sum(Fraction(ai) * ui * wi for ai, ui, wi in zip(a, u, w))
    v = [Fraction(x) for x in vec]
    # partner with b(v, w) != 0 exists because q is regular and v nonzero
    w = None
    for i in range(n):
        if a[i] * vec[i] != 0:
            w = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
            break
    assert w is not None
    # complement basis: solve b(v, x) = 0 = b(w, x) by Gaussian elimination
    rows = [
        [Fraction(a[j]) * v[j] for j in range(n)],
        [Fraction(a[j]) * w[j] for j in range(n)],
    ]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                rows[i] = [x - rows[i][col] * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free_cols = [c for c in range(n) if c not in pivots]
    basis: list[list[Fraction]] = []
    for fc in free_cols:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            x[pc] = -rows[ri][fc]
        basis.append(x)
    if len(basis) != n - 2:
        return None
    # Gram matrix of the complement, then symmetric diagonalization
    k = n - 2
    gram = [[b(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    diag: list[Fraction] = []
    idx = list(range(k))
    while idx:
        pivot = next((i for i in idx if gram[i][i] != 0), None)
        if pivot is None:
            # find an off-diagonal entry and fold it onto the diagonal
            pair = next(
                ((i, j) for i in idx for j in idx if i != j and gram[i][j] != 0), None
            )
            if pair is None:
                return None  # complement degenerate; cannot happen for regular q
            i, j = pair
            for t in range(k):
                gram[i][t] += gram[j][t]
            for t in range(k):
                gram[t][i] += gram[t][j]
            continue
        d = gram[pivot][pivot]
        diag.append(d)
        others = [i for i in idx if i != pivot]
        for i in others:
            if gram[i][pivot] != 0:
                factor = gram[i][pivot] / d
                for t in range(k):
                    gram[i][t] -= factor * gram[pivot][t]
                for t in range(k):
                    gram[t][i] -= factor * gram[t][pivot]
        idx = others
    if len(diag) != k or any(d == 0 for d in diag):
        return None
    if not diag:
        return None  # the plane was the whole form; nothing remains
    return DiagonalForm.of(diag)


def _same_invariants(i1: FormInvariants, i2: FormInvariants) -> bool:
    if (
        i1.dimension != i2.dimension
        or i1.determinant != i2.determinant
        or i1.signature != i2.signature
    ):
        return False
    places = sorted(set(i1.places()) | set(i2.places()))
    return all(i1.hasse_at(v) == i2.hasse_at(v) for v in places)


def _synthesize(target: FormInvariants, q: DiagonalForm) -> DiagonalForm | None:
    """Search small diagonal forms realizing the target invariants."""
    from itertools import product as iproduct

    from .arith import squarefree_classes

    if target.dimension == 0:
        return None
    pool = squarefree_classes(max(64, max(abs(x) for x in q.coefficients) * 4))
    for combo in iproduct(pool, repeat=target.dimension):
        cand = DiagonalForm(tuple(combo))
        if _same_invariants(invariants(cand), target):
            return cand
    return None


def witt_decompose(q: DiagonalForm, height_bound: int = 200) -> WittDecomposition:
    """Witt index, anisotropic kernel, and the splitting witnesses used."""
    target = invariants(q)
    index = 0
    while _isotropic_from_invariants(target):
        target = _peel_invariants(target)
        index += 1
    # explicit splitting builds a concrete anisotropic part alongside the count
    current: DiagonalForm | None = q
    witnesses: list[tuple[int, ...]] = []
    for _ in range(index):
        assert current is not None
        vec = isotropic_vector(current, height_bound)
        if vec is None:
            current = None
            break
        rest = _split_hyperbolic(current, vec)
        if rest is None and current.dim > 2:
            current = None
            break
        witnesses.append(vec)
        current = rest
    part: DiagonalForm | None
    if target.dimension == 0:
        part = None
    elif current is not None and current.dim == target.dimension:
        part = current
        assert _same_invariants(invariants(part), target)
    else:
        part = _synthesize(target, q)
        if part is None:
            raise InputError(
                f"could not realize the anisotropic part of {q} within the search budget"
            )
    if part is not None:
        assert not is_isotropic(part)
    return WittDecomposition(index, part, tuple(witnesses))


def is_witt_equivalent(q1: DiagonalForm, q2: DiagonalForm) -> bool:
    """Equal anisotropic kernels up to isometry."""
    w1, w2 = witt_decompose(q1), witt_decompose(q2)
    if w1.anisotropic_part is None and w2.anisotropic_part is None:
        return True
    if w1.anisotropic_part is None or w2.anisotropic_part is None:
        return False
    return isometric(w1.anisotropic_part, w2.anisotropic_part)


def pfister(generators: Sequence[int | Rational]) -> DiagonalForm:
    """<<a_1, ..., a_n>> expanded over subsets in binary counter order."""
    gens = [squarefree_part(g if isinstance(g, Fraction) else int(g)) for g in generators]
    if not gens:
        raise InputError("a Pfister form needs at least one generator")
    coeffs = []
    for mask in range(2 ** len(gens)):
        prod = 1
        for i, g in enumerate(gens):
            if mask >> i & 1:
                prod *= g
        coeffs.append(squarefree_part(prod))
    return DiagonalForm(tuple(coeffs))


def pfister_exponent(q: DiagonalForm) -> int | None:
    """n when q is isometric to an n-fold Pfister form (n = 1, 2), else None."""
    if q.dim == 2:
        return 1 if represents(q, 1) else None
    if q.dim == 4:
        if q.det() == 1 and represents(q, 1):
            return 2
        return None
    return None
