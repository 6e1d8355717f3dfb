"""Quaternion algebras (a,b) over Q through their norm forms.

Every structural question is answered two ways where a cheap dual route
exists: ramification from Hilbert symbols on one side, norm-form isotropy
on the other, with the agreement asserted. Witness searches run in the
canonical square-class order so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import Rational, squarefree_part, witness_sequence
from .errors import PreconditionError, SearchExhausted
from .forms import DiagonalForm, is_isotropic, isometric, represents, witt_decompose
from .symbols import Place, hilbert_symbol, relevant_places_of


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b) with square-free nonzero integer symbol entries."""

    a: int
    b: int

    @classmethod
    def of(cls, a: int | Rational, b: int | Rational) -> "QuaternionAlgebra":
        if a == 0 or b == 0:
            raise PreconditionError("quaternion symbols must be nonzero")
        return cls(
            squarefree_part(a if isinstance(a, Fraction) else int(a)),
            squarefree_part(b if isinstance(b, Fraction) else int(b)),
        )

    def norm_form(self) -> DiagonalForm:
        return DiagonalForm.of([1, -self.a, -self.b, self.a * self.b])

    def pure_form(self) -> DiagonalForm:
        # squares of pure quaternions: (xi + yj + zij)^2 = ax^2 + by^2 - ab z^2
        return DiagonalForm.of([self.a, self.b, -self.a * self.b])

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def ramification(alg: QuaternionAlgebra) -> tuple[Place, ...]:
    """Places where the algebra is division; always of even cardinality."""
    places = relevant_places_of([alg.a, alg.b])
    ram = tuple(v for v in places if hilbert_symbol(alg.a, alg.b, v) == -1)
    assert len(ram) % 2 == 0  # Hilbert reciprocity
    return ram


def is_division(alg: QuaternionAlgebra) -> bool:
    """Division over Q; ramification and norm-form anisotropy must agree."""
    by_symbols = len(ramification(alg)) > 0
    by_norm = not is_isotropic(alg.norm_form())
    assert by_symbols == by_norm
    return by_symbols


def is_isomorphic(a1: QuaternionAlgebra, a2: QuaternionAlgebra) -> bool:
    """Equality of ramification sets; cross-checked against norm-form isometry."""
    by_ram = ramification(a1) == ramification(a2)
    by_norm = isometric(a1.norm_form(), a2.norm_form())
    assert by_ram == by_norm
    return by_ram


def albert_form(a1: QuaternionAlgebra, a2: QuaternionAlgebra) -> DiagonalForm:
    """<a, b, -ab, -a', -b', a'b'>, the 6-dimensional linkage form."""
    return DiagonalForm.of(
        [a1.a, a1.b, -a1.a * a1.b, -a2.a, -a2.b, a2.a * a2.b]
    )


def is_linked(a1: QuaternionAlgebra, a2: QuaternionAlgebra) -> bool:
    """Do the two division algebras share a common quadratic splitting field?"""
    for alg in (a1, a2):
        if not is_division(alg):
            raise PreconditionError(f"{alg} is split; linkage needs division algebras")
    linked = is_isotropic(albert_form(a1, a2))
    # dual route: the difference of norm forms has Witt index >= 2 exactly then
    diff = a1.norm_form().perp(a2.norm_form().negated())
    assert linked == (witt_decompose(diff).witt_index >= 2)
    return linked


def contains_subfield(alg: QuaternionAlgebra, c: int | Rational) -> bool:
    """Is Q(sqrt(c)) a subfield of the algebra (c not a square)?"""
    s = squarefree_part(c if isinstance(c, Fraction) else int(c))
    if s == 1:
        raise PreconditionError("c must generate a quadratic extension; got a square")
    return represents(alg.pure_form(), s)


def common_subfield_witness(
    a1: QuaternionAlgebra, a2: QuaternionAlgebra, limit: int = 1000
) -> int:
    """First square class embedding in both algebras, in canonical witness order."""
    for alg in (a1, a2):
        if not is_division(alg):
            raise PreconditionError(f"{alg} is split; subfield search needs division algebras")
    for c in witness_sequence(limit):
        if contains_subfield(a1, c) and contains_subfield(a2, c):
            return c
    raise SearchExhausted(
        f"no common subfield witness with |c| <= {limit}; raise the limit"
    )


def distinguishing_witness(
    a1: QuaternionAlgebra, a2: QuaternionAlgebra, limit: int = 1000
) -> int:
    """First square class embedding in exactly one of two non-isomorphic division algebras."""
    for alg in (a1, a2):
        if not is_division(alg):
            raise PreconditionError(f"{alg} is split; genus comparison needs division algebras")
    if is_isomorphic(a1, a2):
        raise PreconditionError("the algebras are isomorphic; no distinguishing witness exists")
    for c in witness_sequence(limit):
        if contains_subfield(a1, c) != contains_subfield(a2, c):
            return c
    raise SearchExhausted(
        f"no distinguishing witness with |c| <= {limit}; raise the limit"
    )


def _pair_candidates(limit_rank: int):
    """Symbol pairs (a,b) in shell order by max rank, then lex by (rank a, rank b)."""
    from .arith import is_squarefree

    seq: list[int] = []
    v = 1
    while len(seq) < limit_rank + 1:
        if is_squarefree(v):
            seq.append(v)
            seq.append(-v)
        v += 1
    seq = seq[: limit_rank + 1]
    for shell in range(1, len(seq)):
        for i in range(shell + 1):
            for j in range(shell + 1):
                if max(i, j) == shell:
                    yield seq[i], seq[j]


def connecting_algebra(
    a1: QuaternionAlgebra, a2: QuaternionAlgebra, limit_rank: int = 400
) -> QuaternionAlgebra:
    """The algebra ramified exactly at the symmetric difference of the two sets."""
    if is_isomorphic(a1, a2):
        raise PreconditionError("isomorphic algebras have no connecting algebra")
    target = set(ramification(a1)) ^ set(ramification(a2))
    assert target and len(target) % 2 == 0
    for a, b in _pair_candidates(limit_rank):
        cand = QuaternionAlgebra.of(a, b)
        if set(ramification(cand)) == target:
            return cand
    raise SearchExhausted(
        f"no connecting algebra found within symbol rank {limit_rank}; raise the limit"
    )


@dataclass(frozen=True)
class GenusEntry:
    pair: tuple[int, int]
    isomorphic: bool
    witness: int | None

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "isomorphic": self.isomorphic,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class GenusReport:
    algebras: tuple[QuaternionAlgebra, ...]
    entries: tuple[GenusEntry, ...]

    def to_json(self) -> dict:
        return {
            "algebras": [alg.to_json() for alg in self.algebras],
            "entries": [e.to_json() for e in self.entries],
        }


def genus_report(algebras: list[QuaternionAlgebra], limit: int = 1000) -> GenusReport:
    """Pairwise verdicts for a family of division algebras, with witnesses."""
    for alg in algebras:
        if not is_division(alg):
            raise PreconditionError(f"{alg} is split; the genus report needs division algebras")
    entries = []
    for i in range(len(algebras)):
        for j in range(i + 1, len(algebras)):
            if is_isomorphic(algebras[i], algebras[j]):
                entries.append(GenusEntry((i, j), True, None))
            else:
                w = distinguishing_witness(algebras[i], algebras[j], limit)
                entries.append(GenusEntry((i, j), False, w))
    return GenusReport(tuple(algebras), tuple(entries))
