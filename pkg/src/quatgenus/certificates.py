"""Replayable anisotropy/isotropy certificates for tower constructions.

A certificate is a tree whose leaves are ground facts (R-BASE verdicts over
the rationals, R-ASSUME entries from an abstract ledger) and whose inner
nodes apply exactly two persistence principles plus bookkeeping:

  R-GENERIC   the adjoined form is isotropic over its own function field
  R-PFISTER   an anisotropic 2^n-dimensional Pfister form stays anisotropic
              across a 2^n-dimensional adjunction unless Witt-equivalent to
              it, ruled out by a discriminant mismatch
  R-HOFFMANN  dim(subject) <= 2^n < dim(adjoined) preserves anisotropy
  R-MONOTONE  isotropy persists up the tower
  R-CHAIN     anisotropy at the top level holds over the union of the chain
  R-BASE      Hasse-Minkowski over Q at level 0
  R-ASSUME    declared anisotropy in an abstract ledger at level 0

replay() re-derives every numeric fact a node consumed. It never trusts
the stored status: a tampered certificate replays False.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .arith import squarefree_part
from .errors import InputError
from .forms import (
    DiagonalForm,
    is_isotropic,
    is_isotropic_local,
    isometric,
    isotropy_failure,
    pfister_exponent,
)
from .symbolic import SymbolicClass, SymbolicForm
from .symbols import place_from_json

FormLike = Union[DiagonalForm, SymbolicForm]
DiscClass = Union[int, SymbolicClass]

RULES = (
    "R-BASE",
    "R-ASSUME",
    "R-GENERIC",
    "R-MONOTONE",
    "R-PFISTER",
    "R-HOFFMANN",
    "R-CHAIN",
)


class Status(Enum):
    ANISOTROPIC = "anisotropic"
    ISOTROPIC = "isotropic"
    UNKNOWN = "unknown"


def form_to_json(form: FormLike) -> object:
    return form.to_json()


def form_from_json(data: object) -> FormLike:
    if isinstance(data, list):
        return DiagonalForm.from_json(data)
    if isinstance(data, dict) and "symbolic" in data:
        return SymbolicForm.from_json(data)
    raise InputError(f"not a form: {data!r}")


def form_dim(form: FormLike) -> int:
    return form.dim


def form_disc(form: FormLike) -> DiscClass:
    return form.signed_disc()


def disc_to_json(d: DiscClass) -> object:
    return d if isinstance(d, int) else d.to_json()


def disc_from_json(data: object) -> DiscClass:
    if isinstance(data, int):
        return data
    return SymbolicClass.from_json(data)


def forms_equal(f1: FormLike, f2: FormLike) -> bool:
    return type(f1) is type(f2) and f1 == f2


def forms_match(f1: FormLike, f2: FormLike) -> bool:
    """Syntactic equality, or isometry over Q for concrete forms."""
    if forms_equal(f1, f2):
        return True
    if isinstance(f1, DiagonalForm) and isinstance(f2, DiagonalForm):
        return isometric(f1, f2)
    return False


def form_pfister_exponent(form: FormLike) -> int | None:
    if isinstance(form, DiagonalForm):
        return pfister_exponent(form)
    return form.pfister_exponent()


def _int_span(classes: tuple[int, ...]) -> set[int]:
    span = {1}
    for t in classes:
        span |= {squarefree_part(x * t) for x in span}
    return span


def disc_mismatch(d1: DiscClass, d2: DiscClass, trivialized: tuple[int, ...]) -> bool:
    """Do the discriminants differ modulo the classes a dim-2 adjunction killed?"""
    if isinstance(d1, int) and isinstance(d2, int):
        return squarefree_part(d1 * d2) not in _int_span(trivialized)
    if isinstance(d1, SymbolicClass) and isinstance(d2, SymbolicClass):
        # abstract towers never adjoin binary forms, so no symbolic classes trivialize
        return d1 != d2
    return False


@dataclass(frozen=True)
class Certificate:
    rule: str
    status: Status
    subject: FormLike
    level: int
    parameters: tuple[tuple[str, object], ...]
    premises: tuple["Certificate", ...]

    def param(self, key: str) -> object:
        for k, v in self.parameters:
            if k == key:
                return v
        return None

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "status": self.status.value,
            "subject": form_to_json(self.subject),
            "level": self.level,
            "parameters": {k: v for k, v in self.parameters},
            "premises": [p.to_json() for p in self.premises],
        }

    @classmethod
    def from_json(cls, data: object) -> "Certificate":
        if not isinstance(data, dict):
            raise InputError(f"not a certificate: {data!r}")
        try:
            rule = data["rule"]
            status = Status(data["status"])
            subject = form_from_json(data["subject"])
            level = data["level"]
            params = tuple(sorted(data.get("parameters", {}).items()))
            premises = tuple(cls.from_json(p) for p in data.get("premises", []))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from exc
        return cls(rule, status, subject, level, params, premises)


def _params(**kwargs: object) -> tuple[tuple[str, object], ...]:
    return tuple(sorted(kwargs.items()))


def base_certificate(subject: DiagonalForm) -> Certificate:
    """Ground Hasse-Minkowski verdict over Q."""
    failing = isotropy_failure(subject)
    if failing is None:
        return Certificate(
            "R-BASE", Status.ISOTROPIC, subject, 0, _params(verdict="isotropic"), ()
        )
    return Certificate(
        "R-BASE",
        Status.ANISOTROPIC,
        subject,
        0,
        _params(verdict="anisotropic", failing_place=failing.to_json()),
        (),
    )


def assume_certificate(subject: FormLike, assumption_id: str) -> Certificate:
    return Certificate(
        "R-ASSUME",
        Status.ANISOTROPIC,
        subject,
        0,
        _params(assumption_id=assumption_id),
        (),
    )


def generic_certificate(subject: FormLike, adjoined: FormLike, level: int) -> Certificate:
    return Certificate(
        "R-GENERIC",
        Status.ISOTROPIC,
        subject,
        level,
        _params(adjoined=form_to_json(adjoined)),
        (),
    )


def monotone_certificate(premise: Certificate, level: int) -> Certificate:
    assert premise.status is Status.ISOTROPIC and premise.level < level
    return Certificate(
        "R-MONOTONE",
        Status.ISOTROPIC,
        premise.subject,
        level,
        _params(from_level=premise.level),
        (premise,),
    )


def pfister_certificate(
    premise: Certificate,
    adjoined: FormLike,
    level: int,
    exponent: int,
    trivialized: tuple[int, ...],
) -> Certificate:
    return Certificate(
        "R-PFISTER",
        Status.ANISOTROPIC,
        premise.subject,
        level,
        _params(
            exponent=exponent,
            adjoined=form_to_json(adjoined),
            subject_disc=disc_to_json(form_disc(premise.subject)),
            adjoined_disc=disc_to_json(form_disc(adjoined)),
            disc_context=sorted(trivialized),
        ),
        (premise,),
    )


def hoffmann_certificate(
    premise: Certificate, adjoined: FormLike, level: int, exponent: int
) -> Certificate:
    return Certificate(
        "R-HOFFMANN",
        Status.ANISOTROPIC,
        premise.subject,
        level,
        _params(exponent=exponent, adjoined=form_to_json(adjoined)),
        (premise,),
    )


def chain_certificate(premise: Certificate) -> Certificate:
    assert premise.status is Status.ANISOTROPIC
    return Certificate(
        "R-CHAIN",
        Status.ANISOTROPIC,
        premise.subject,
        premise.level,
        _params(levels=premise.level),
        (premise,),
    )


@dataclass(frozen=True)
class ReplayContext:
    """Optional surroundings: the abstract ledger and the tower's adjunctions."""

    assumptions: tuple[tuple[str, FormLike], ...] = ()
    adjunctions: tuple[FormLike, ...] | None = None

    def assumption_subject(self, ident: str) -> FormLike | None:
        for k, f in self.assumptions:
            if k == ident:
                return f
        return None

    def trivialized_below(self, level: int) -> tuple[int, ...]:
        if self.adjunctions is None:
            return ()
        killed = []
        for phi in self.adjunctions[: max(level - 1, 0)]:
            if isinstance(phi, DiagonalForm) and phi.dim == 2:
                killed.append(squarefree_part(-phi.coefficients[0] * phi.coefficients[1]))
        return tuple(sorted(killed))


def replay(cert: Certificate, context: ReplayContext | None = None) -> bool:
    """Re-derive every fact the certificate consumed; False on any mismatch."""
    try:
        return _replay(cert, context)
    except (InputError, AssertionError):
        return False


def _replay(cert: Certificate, context: ReplayContext | None) -> bool:
    if cert.rule not in RULES or cert.level < 0:
        return False
    if cert.status is Status.UNKNOWN:
        return False
    for premise in cert.premises:
        if not _replay(premise, context):
            return False
    if cert.rule == "R-BASE":
        if cert.level != 0 or cert.premises or not isinstance(cert.subject, DiagonalForm):
            return False
        verdict = cert.param("verdict")
        if verdict != cert.status.value:
            return False
        if is_isotropic(cert.subject) != (cert.status is Status.ISOTROPIC):
            return False
        if cert.status is Status.ANISOTROPIC:
            raw = cert.param("failing_place")
            if raw is None:
                return False
            place = place_from_json(raw)
            if is_isotropic_local(cert.subject, place):
                return False
        return True
    if cert.rule == "R-ASSUME":
        if cert.level != 0 or cert.premises or cert.status is not Status.ANISOTROPIC:
            return False
        ident = cert.param("assumption_id")
        if not isinstance(ident, str) or context is None:
            return False
        declared = context.assumption_subject(ident)
        return declared is not None and forms_equal(declared, cert.subject)
    if cert.rule == "R-GENERIC":
        if cert.level < 1 or cert.premises or cert.status is not Status.ISOTROPIC:
            return False
        adjoined = form_from_json(cert.param("adjoined"))
        if not forms_match(cert.subject, adjoined):
            return False
        if context is not None and context.adjunctions is not None:
            if cert.level > len(context.adjunctions):
                return False
            if not forms_equal(context.adjunctions[cert.level - 1], adjoined):
                return False
        return True
    if cert.rule == "R-MONOTONE":
        if len(cert.premises) != 1 or cert.status is not Status.ISOTROPIC:
            return False
        premise = cert.premises[0]
        return (
            premise.status is Status.ISOTROPIC
            and premise.level < cert.level
            and cert.param("from_level") == premise.level
            and forms_equal(premise.subject, cert.subject)
        )
    if cert.rule == "R-PFISTER":
        if len(cert.premises) != 1 or cert.status is not Status.ANISOTROPIC:
            return False
        premise = cert.premises[0]
        if (
            premise.status is not Status.ANISOTROPIC
            or premise.level != cert.level - 1
            or not forms_equal(premise.subject, cert.subject)
        ):
            return False
        n = cert.param("exponent")
        adjoined = form_from_json(cert.param("adjoined"))
        if not isinstance(n, int) or form_dim(cert.subject) != 2**n:
            return False
        if form_pfister_exponent(cert.subject) != n:
            return False
        if form_dim(adjoined) != 2**n:
            return False
        stored_sd = disc_from_json(cert.param("subject_disc"))
        stored_ad = disc_from_json(cert.param("adjoined_disc"))
        if form_disc(cert.subject) != stored_sd or form_disc(adjoined) != stored_ad:
            return False
        raw_ctx = cert.param("disc_context")
        if not isinstance(raw_ctx, list):
            return False
        trivialized = tuple(int(x) for x in raw_ctx)
        if context is not None and context.adjunctions is not None:
            if trivialized != context.trivialized_below(cert.level):
                return False
            if cert.level > len(context.adjunctions) or not forms_equal(
                context.adjunctions[cert.level - 1], adjoined
            ):
                return False
        return disc_mismatch(stored_sd, stored_ad, trivialized)
    if cert.rule == "R-HOFFMANN":
        if len(cert.premises) != 1 or cert.status is not Status.ANISOTROPIC:
            return False
        premise = cert.premises[0]
        if (
            premise.status is not Status.ANISOTROPIC
            or premise.level != cert.level - 1
            or not forms_equal(premise.subject, cert.subject)
        ):
            return False
        n = cert.param("exponent")
        adjoined = form_from_json(cert.param("adjoined"))
        if not isinstance(n, int) or n < 0:
            return False
        if context is not None and context.adjunctions is not None:
            if cert.level > len(context.adjunctions) or not forms_equal(
                context.adjunctions[cert.level - 1], adjoined
            ):
                return False
        return form_dim(cert.subject) <= 2**n < form_dim(adjoined)
    if cert.rule == "R-CHAIN":
        if len(cert.premises) != 1 or cert.status is not Status.ANISOTROPIC:
            return False
        premise = cert.premises[0]
        return (
            premise.status is Status.ANISOTROPIC
            and premise.level == cert.level
            and cert.param("levels") == cert.level
            and forms_equal(premise.subject, cert.subject)
        )
    return False


def iter_certificates(cert: Certificate):
    """The node and all descendants, preorder."""
    yield cert
    for premise in cert.premises:
        yield from iter_certificates(premise)


def tamper(cert_json: dict) -> dict:
    """A rule-specific mutation that a faithful replay must reject."""
    mutated = copy.deepcopy(cert_json)
    rule = mutated.get("rule")
    params = mutated.setdefault("parameters", {})
    if rule == "R-BASE":
        flipped = "isotropic" if mutated["status"] == "anisotropic" else "anisotropic"
        mutated["status"] = flipped
        params["verdict"] = flipped
        params.pop("failing_place", None)
        if flipped == "anisotropic":
            params["failing_place"] = 2
    elif rule == "R-ASSUME":
        params["assumption_id"] = str(params.get("assumption_id", "")) + "-missing"
    elif rule == "R-GENERIC":
        subject = mutated["subject"]
        if isinstance(subject, list):
            params["adjoined"] = subject + [7]
        else:
            params["adjoined"] = {
                "symbolic": subject["symbolic"] + [{"sign": 1, "symbols": ["tampered"]}]
            }
    elif rule == "R-MONOTONE":
        params["from_level"] = mutated["level"] + 1
    elif rule == "R-PFISTER":
        disc = params.get("adjoined_disc")
        if isinstance(disc, int):
            params["adjoined_disc"] = squarefree_part(disc * 29)
        else:
            params["adjoined_disc"] = {"sign": -disc["sign"], "symbols": disc["symbols"]}
    elif rule == "R-HOFFMANN":
        params["exponent"] = 60
    elif rule == "R-CHAIN":
        params["levels"] = mutated["level"] + 3
    else:
        raise InputError(f"unknown rule: {rule!r}")
    return mutated
