"""Finite truncations of function-field towers over Q or an abstract base.

A tower state is a base plus an ordered list of adjoined forms, each level
standing for the function field of the previous level's quadric. Statuses
of tracked forms are re-derived on demand, walking the levels with exactly
the certificate rules; everything a step claims is backed by a replayable
certificate, and anything underivable is an honest UNKNOWN.

Multi-form steps (pushing, linking) certify each adjoined form's anisotropy
over the step's base state and record that gate; the function field at each
intermediate level stays defined because every adjoined form has nontrivial
discriminant there. Direct adjunctions outside a step use the strict gate
over the whole current tower.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import squarefree_part
from .certificates import (
    Certificate,
    FormLike,
    ReplayContext,
    Status,
    assume_certificate,
    base_certificate,
    chain_certificate,
    disc_mismatch,
    form_dim,
    form_disc,
    form_pfister_exponent,
    form_to_json,
    forms_equal,
    forms_match,
    generic_certificate,
    hoffmann_certificate,
    monotone_certificate,
    pfister_certificate,
)
from .errors import InputError, PreconditionError, TruncationError
from .forms import DiagonalForm
from .quaternion import (
    QuaternionAlgebra,
    connecting_algebra,
    is_division,
    is_isomorphic,
    is_linked,
)
from .symbolic import SymbolicAlgebra, SymbolicForm, symbolic_albert_form


@dataclass(frozen=True)
class RationalBase:
    def to_json(self) -> str:
        return "rationals"


@dataclass(frozen=True)
class Assumption:
    ident: str
    subject: FormLike

    def to_json(self) -> dict:
        return {"id": self.ident, "anisotropic": form_to_json(self.subject)}


@dataclass(frozen=True)
class AbstractBase:
    symbols: tuple[str, ...]
    assumptions: tuple[Assumption, ...]

    def find(self, subject: FormLike) -> Assumption | None:
        for a in self.assumptions:
            if forms_equal(a.subject, subject):
                return a
        return None

    def to_json(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "assumptions": [a.to_json() for a in self.assumptions],
        }


Base = RationalBase | AbstractBase


@dataclass(frozen=True)
class TowerState:
    base: Base
    adjunctions: tuple[FormLike, ...] = ()
    tracked: tuple[FormLike, ...] = ()

    @property
    def top_level(self) -> int:
        return len(self.adjunctions)

    def replay_context(self) -> ReplayContext:
        assumptions: tuple[tuple[str, FormLike], ...] = ()
        if isinstance(self.base, AbstractBase):
            assumptions = tuple((a.ident, a.subject) for a in self.base.assumptions)
        return ReplayContext(assumptions=assumptions, adjunctions=self.adjunctions)

    def trivialized_below(self, level: int) -> tuple[int, ...]:
        return self.replay_context().trivialized_below(level)

    def track(self, *forms: FormLike) -> "TowerState":
        new = list(self.tracked)
        for f in forms:
            if not any(forms_equal(f, g) for g in new):
                new.append(f)
        return TowerState(self.base, self.adjunctions, tuple(new))

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "levels": [
                {"index": i + 1, "form": form_to_json(phi)}
                for i, phi in enumerate(self.adjunctions)
            ],
        }


@dataclass(frozen=True)
class TrackedStatement:
    subject: FormLike
    level: int
    status: Status
    certificate: Certificate | None
    blocked: tuple[int, FormLike | None] | None

    def to_json(self) -> dict:
        blocked = None
        if self.blocked is not None:
            lvl, phi = self.blocked
            blocked = {
                "level": lvl,
                "adjoined": None if phi is None else form_to_json(phi),
            }
        return {
            "subject": form_to_json(self.subject),
            "level": self.level,
            "status": self.status.value,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "blocked": blocked,
        }


def _hoffmann_exponent(dim_subject: int, dim_adjoined: int) -> int | None:
    n = 0
    while 2**n < dim_subject:
        n += 1
    return n if 2**n < dim_adjoined else None


def derive_status(state: TowerState, subject: FormLike) -> TrackedStatement:
    """Walk the tower from the base, applying the certificate rules in order.

    Levels above an UNKNOWN are still scanned for generic-isotropy matches:
    the adjoined form is isotropic over its own function field no matter
    what happened below.
    """
    top = state.top_level
    cert: Certificate | None = None
    blocked: tuple[int, FormLike | None] | None = None
    if isinstance(state.base, RationalBase):
        if isinstance(subject, DiagonalForm):
            cert = base_certificate(subject)
            status = cert.status
        else:
            status = Status.UNKNOWN
            blocked = (0, None)
    else:
        found = state.base.find(subject)
        if found is not None:
            cert = assume_certificate(subject, found.ident)
            status = Status.ANISOTROPIC
        else:
            status = Status.UNKNOWN
            blocked = (0, None)
    for level, phi in enumerate(state.adjunctions, start=1):
        if status is Status.ISOTROPIC:
            continue
        if forms_match(subject, phi):
            cert = generic_certificate(subject, phi, level)
            status = Status.ISOTROPIC
            blocked = None
            continue
        if status is Status.UNKNOWN:
            continue
        assert cert is not None
        n = form_pfister_exponent(subject)
        trivialized = state.trivialized_below(level)
        if (
            n is not None
            and form_dim(phi) == 2**n
            and disc_mismatch(form_disc(subject), form_disc(phi), trivialized)
        ):
            cert = pfister_certificate(cert, phi, level, n, trivialized)
            continue
        nh = _hoffmann_exponent(form_dim(subject), form_dim(phi))
        if nh is not None:
            cert = hoffmann_certificate(cert, phi, level, nh)
            continue
        status = Status.UNKNOWN
        blocked = (level, phi)
        cert = None
    if status is Status.ISOTROPIC and cert is not None and cert.level < top:
        cert = monotone_certificate(cert, top)
    return TrackedStatement(subject, top, status, cert, blocked)


def _check_form_dimension(phi: FormLike) -> None:
    if form_dim(phi) < 2:
        raise InputError("adjoined forms must have dimension at least 2")


def adjoin(state: TowerState, phi: FormLike) -> tuple[TowerState, TrackedStatement]:
    """Strict adjunction: phi must be certified anisotropic over the whole tower."""
    _check_form_dimension(phi)
    gate = derive_status(state, phi)
    if gate.status is Status.ISOTROPIC:
        raise InputError(f"refusing to adjoin {phi}: isotropic over the current tower")
    if gate.status is Status.UNKNOWN:
        raise TruncationError(
            f"cannot certify {phi} anisotropic over the current tower"
        )
    new_state = TowerState(state.base, state.adjunctions + (phi,), state.tracked)
    return new_state.track(phi), gate


def _adjoin_gated(state: TowerState, phi: FormLike, step_base: TowerState) -> TowerState:
    """Append phi whose anisotropy certificate lives over the step base.

    The function field at this position must stay defined (phi nonhyperbolic
    over everything below it): guaranteed by odd dimension, by a nontrivial
    discriminant, or by the gate itself when nothing sits between the step
    base and this position.
    """
    _check_form_dimension(phi)
    defined = form_dim(phi) % 2 == 1 or state.top_level == step_base.top_level
    if not defined:
        disc = form_disc(phi)
        if isinstance(disc, int):
            defined = disc_mismatch(disc, 1, state.trivialized_below(state.top_level + 1))
        else:
            defined = not disc.is_one()
    if not defined:
        raise TruncationError(
            f"cannot certify the function field of {phi} stays defined at level "
            f"{state.top_level + 1}: trivial discriminant under an even dimension"
        )
    return TowerState(state.base, state.adjunctions + (phi,), state.tracked).track(phi)


def membership_form(c: int, alg: QuaternionAlgebra) -> DiagonalForm:
    """<c, -a, -b, ab>: anisotropic exactly when sqrt(c) generates no subfield."""
    return DiagonalForm.of([c, -alg.a, -alg.b, alg.a * alg.b])


def _validate_classes(classes: list[int]) -> list[int]:
    out: list[int] = []
    for c in classes:
        if c == 0:
            raise InputError("0 is not a square class")
        s = squarefree_part(c)
        if s == 1:
            raise InputError("c = 1 generates no quadratic extension")
        if s not in out:
            out.append(s)
    return out


def _validate_concrete_family(algebras: list[QuaternionAlgebra]) -> None:
    if not algebras:
        raise PreconditionError("the family must be nonempty")
    for alg in algebras:
        if not is_division(alg):
            raise PreconditionError(f"{alg} is split; the family must be division algebras")
    for i in range(len(algebras)):
        for j in range(i + 1, len(algebras)):
            if is_isomorphic(algebras[i], algebras[j]):
                raise PreconditionError(
                    f"family members {i} and {j} are isomorphic; the family must be a set"
                )
            assert is_linked(algebras[i], algebras[j])


@dataclass(frozen=True)
class MembershipEntry:
    klass: int
    algebra: int
    member: bool
    statement: TrackedStatement

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "algebra": self.algebra,
            "member": self.member,
            "statement": self.statement.to_json(),
        }


@dataclass(frozen=True)
class AdjoinedRecord:
    level: int
    form: FormLike
    klass: int | None
    algebra: int | None
    pair: tuple[int, int] | None
    gate: TrackedStatement

    def to_json(self) -> dict:
        out: dict = {"level": self.level, "form": form_to_json(self.form)}
        if self.klass is not None:
            out["class"] = self.klass
        if self.algebra is not None:
            out["algebra"] = self.algebra
        if self.pair is not None:
            out["pair"] = list(self.pair)
        out["gate"] = self.gate.to_json()
        return out


@dataclass(frozen=True)
class InjectivityBlock:
    norm_forms: tuple[tuple[int, TrackedStatement], ...]
    pair_forms: tuple[tuple[tuple[int, int], QuaternionAlgebra | None, TrackedStatement], ...]

    def to_json(self) -> dict:
        return {
            "norm_forms": [
                {"algebra": i, "statement": s.to_json()} for i, s in self.norm_forms
            ],
            "pair_forms": [
                {
                    "pair": list(p),
                    "connecting": None if alg is None else alg.to_json(),
                    "statement": s.to_json(),
                }
                for p, alg, s in self.pair_forms
            ],
        }

    def statements(self) -> list[TrackedStatement]:
        return [s for _, s in self.norm_forms] + [s for _, _, s in self.pair_forms]


@dataclass(frozen=True)
class PushingStep:
    classes: tuple[int, ...]
    membership: tuple[MembershipEntry, ...]
    adjoined: tuple[AdjoinedRecord, ...]
    injectivity: InjectivityBlock
    embeddings: tuple[MembershipEntry, ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "kind": "pushing",
            "classes": list(self.classes),
            "membership_at_base": [e.to_json() for e in self.membership],
            "adjoined": [r.to_json() for r in self.adjoined],
            "injectivity": self.injectivity.to_json(),
            "embeddings": [e.to_json() for e in self.embeddings],
            "notes": list(self.notes),
        }

    def required_statements(self) -> list[TrackedStatement]:
        out = [e.statement for e in self.membership]
        out += [r.gate for r in self.adjoined]
        out += self.injectivity.statements()
        out += [e.statement for e in self.embeddings]
        return out


def _injectivity_block(
    state: TowerState, algebras: list[QuaternionAlgebra]
) -> InjectivityBlock:
    norms = []
    for i, alg in enumerate(algebras):
        norms.append((i, derive_status(state, alg.norm_form())))
    pairs = []
    for i in range(len(algebras)):
        for j in range(i + 1, len(algebras)):
            conn = connecting_algebra(algebras[i], algebras[j])
            pairs.append(((i, j), conn, derive_status(state, conn.norm_form())))
    return InjectivityBlock(tuple(norms), tuple(pairs))


def step_pushing_extension(
    state: TowerState,
    algebras: list[QuaternionAlgebra],
    classes: list[int],
) -> tuple[TowerState, PushingStep]:
    """Adjoin the function field of <c,-a,-b,ab> for every non-member pair.

    Afterwards every class in `classes` embeds in every family member over
    the extension, while norm forms and connecting-pair norm forms stay
    anisotropic; each claim carries its certificate.
    """
    if not isinstance(state.base, RationalBase):
        raise PreconditionError("the pushing step needs a concrete base")
    _validate_concrete_family(algebras)
    wanted = _validate_classes(classes)
    notes: list[str] = []
    membership: list[MembershipEntry] = []
    pairs: list[tuple[int, int]] = []  # (class index into wanted, algebra index)
    for ci, c in enumerate(wanted):
        members = 0
        for ai, alg in enumerate(algebras):
            phi = membership_form(c, alg)
            stmt = derive_status(state, phi)
            if stmt.status is Status.UNKNOWN:
                raise TruncationError(
                    f"membership of {c} in algebra {ai} is UNKNOWN at the step base"
                )
            member = stmt.status is Status.ISOTROPIC
            membership.append(MembershipEntry(c, ai, member, stmt))
            if member:
                members += 1
            else:
                pairs.append((ci, ai))
        if members == len(algebras):
            notes.append(f"class {c} already embeds everywhere; nothing to adjoin")
    step_base = state
    current = state
    adjoined: list[AdjoinedRecord] = []
    for ci, ai in pairs:
        c = wanted[ci]
        phi = membership_form(c, algebras[ai])
        gate = next(
            e.statement
            for e in membership
            if e.klass == c and e.algebra == ai
        )
        assert gate.status is Status.ANISOTROPIC
        current = _adjoin_gated(current, phi, step_base)
        adjoined.append(
            AdjoinedRecord(current.top_level, phi, c, ai, None, gate)
        )
    for alg in algebras:
        current = current.track(alg.norm_form())
    injectivity = _injectivity_block(current, algebras)
    embeddings: list[MembershipEntry] = []
    for c in wanted:
        for ai, alg in enumerate(algebras):
            phi = membership_form(c, alg)
            stmt = derive_status(current, phi)
            embeddings.append(
                MembershipEntry(c, ai, stmt.status is Status.ISOTROPIC, stmt)
            )
    step = PushingStep(
        tuple(wanted),
        tuple(membership),
        tuple(adjoined),
        injectivity,
        tuple(embeddings),
        tuple(notes),
    )
    return current, step


@dataclass(frozen=True)
class LinkingStep:
    adjoined: tuple[AdjoinedRecord, ...]
    linked_now: tuple[tuple[tuple[int, int], TrackedStatement], ...]
    preserved: tuple[tuple[int, TrackedStatement], ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "kind": "linking",
            "adjoined": [r.to_json() for r in self.adjoined],
            "linked_now": [
                {"pair": list(p), "statement": s.to_json()} for p, s in self.linked_now
            ],
            "preserved": [
                {"algebra": i, "statement": s.to_json()} for i, s in self.preserved
            ],
            "notes": list(self.notes),
        }

    def required_statements(self) -> list[TrackedStatement]:
        out = [r.gate for r in self.adjoined]
        out += [s for _, s in self.linked_now]
        out += [s for _, s in self.preserved]
        return out


def step_linking_extension(
    state: TowerState,
    algebras: list[QuaternionAlgebra] | list[SymbolicAlgebra],
) -> tuple[TowerState, LinkingStep]:
    """Adjoin the function field of each unlinked pair's 6-dimensional form.

    Over Q every division pair is already linked and the step is the
    identity. Over an abstract base each pair needs a declared anisotropy
    assumption for its linkage form; norm forms persist by the dimension
    rule (4 <= 4 < 6 at every new level).
    """
    if not algebras:
        raise PreconditionError("the family must be nonempty")
    if all(isinstance(a, QuaternionAlgebra) for a in algebras):
        if not isinstance(state.base, RationalBase):
            raise PreconditionError("concrete algebras need the rational base")
        _validate_concrete_family(algebras)  # type: ignore[arg-type]
        notes = ("all pairs are already linked over the base; no extension needed",)
        preserved = tuple(
            (i, derive_status(state, alg.norm_form()))
            for i, alg in enumerate(algebras)  # type: ignore[union-attr]
        )
        return state, LinkingStep((), (), preserved, notes)
    if not all(isinstance(a, SymbolicAlgebra) for a in algebras):
        raise InputError("the family must be uniformly concrete or uniformly abstract")
    if not isinstance(state.base, AbstractBase):
        raise PreconditionError("abstract algebras need an abstract base")
    step_base = state
    current = state
    adjoined: list[AdjoinedRecord] = []
    notes: list[str] = []
    for i in range(len(algebras)):
        for j in range(i + 1, len(algebras)):
            phi = symbolic_albert_form(algebras[i], algebras[j])  # type: ignore[arg-type]
            gate = derive_status(step_base, phi)
            if gate.status is Status.UNKNOWN:
                raise InputError(
                    f"no anisotropy assumption covers the linkage form of pair ({i},{j}); "
                    "declare one in the base ledger"
                )
            if gate.status is Status.ISOTROPIC:
                notes.append(f"pair ({i},{j}) is already linked; nothing to adjoin")
                continue
            current = _adjoin_gated(current, phi, step_base)
            adjoined.append(AdjoinedRecord(current.top_level, phi, None, None, (i, j), gate))
    linked_now = []
    for rec in adjoined:
        stmt = derive_status(current, rec.form)
        assert rec.pair is not None
        linked_now.append((rec.pair, stmt))
    preserved = []
    for i, alg in enumerate(algebras):
        current = current.track(alg.norm_form())  # type: ignore[union-attr]
        preserved.append((i, derive_status(current, alg.norm_form())))  # type: ignore[union-attr]
    return current, LinkingStep(
        tuple(adjoined), tuple(linked_now), tuple(preserved), tuple(notes)
    )


@dataclass(frozen=True)
class WindowEntry:
    klass: int
    algebra: int
    status: str  # member | non-member | unresolved
    statement: TrackedStatement

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "algebra": self.algebra,
            "status": self.status,
            "statement": self.statement.to_json(),
        }


@dataclass(frozen=True)
class WindowReport:
    window: tuple[int, ...]
    entries: tuple[WindowEntry, ...]
    distinguishing: tuple[int, ...]
    unresolved: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "entries": [e.to_json() for e in self.entries],
            "distinguishing": list(self.distinguishing),
            "unresolved": list(self.unresolved),
        }


def compute_window(
    state: TowerState, algebras: list[QuaternionAlgebra], window: list[int]
) -> WindowReport:
    """Certified membership matrix over the window; S = certified splits only."""
    if not isinstance(state.base, RationalBase):
        raise PreconditionError("window membership needs a concrete base")
    wanted = _validate_classes(window)
    entries: list[WindowEntry] = []
    distinguishing: list[int] = []
    unresolved: list[int] = []
    for c in wanted:
        members = 0
        nonmembers = 0
        unknown = 0
        for ai, alg in enumerate(algebras):
            stmt = derive_status(state, membership_form(c, alg))
            if stmt.status is Status.ISOTROPIC:
                token = "member"
                members += 1
            elif stmt.status is Status.ANISOTROPIC:
                token = "non-member"
                nonmembers += 1
            else:
                token = "unresolved"
                unknown += 1
            entries.append(WindowEntry(c, ai, token, stmt))
        if members and nonmembers:
            distinguishing.append(c)
        elif unknown:
            unresolved.append(c)
    return WindowReport(
        tuple(wanted), tuple(entries), tuple(distinguishing), tuple(unresolved)
    )


@dataclass(frozen=True)
class IterateRound:
    index: int
    window: WindowReport
    step: PushingStep

    def to_json(self) -> dict:
        return {
            "round": self.index,
            "window": self.window.to_json(),
            "step": self.step.to_json(),
        }


@dataclass(frozen=True)
class IterateReport:
    window: tuple[int, ...]
    rounds: tuple[IterateRound, ...]
    stabilized: bool
    final_window: WindowReport
    final_injectivity: InjectivityBlock
    chain: tuple[Certificate, ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "kind": "iterate-pushing",
            "window": list(self.window),
            "rounds": [r.to_json() for r in self.rounds],
            "stabilized": self.stabilized,
            "final_window": self.final_window.to_json(),
            "final_injectivity": self.final_injectivity.to_json(),
            "chain": [c.to_json() for c in self.chain],
            "notes": list(self.notes),
        }

    def required_statements(self) -> list[TrackedStatement]:
        out: list[TrackedStatement] = []
        for r in self.rounds:
            out += r.step.required_statements()
        out += self.final_injectivity.statements()
        return out


_WINDOW_NOTE = (
    "square-class identities are compared over the base field; binary adjunctions "
    "would shrink the class group, and the engine refuses discriminant evidence "
    "inside the affected span"
)


def iterate_pushing(
    state: TowerState,
    algebras: list[QuaternionAlgebra],
    window: list[int],
    max_rounds: int,
) -> tuple[TowerState, IterateReport]:
    """Alternate window measurement and pushing until no certified split remains."""
    if max_rounds < 0:
        raise InputError("max_rounds must be nonnegative")
    rounds: list[IterateRound] = []
    current = state
    stabilized = False
    while True:
        report = compute_window(current, algebras, window)
        if not report.distinguishing:
            stabilized = True
            break
        if len(rounds) >= max_rounds:
            break
        current, step = step_pushing_extension(
            current, algebras, list(report.distinguishing)
        )
        rounds.append(IterateRound(len(rounds) + 1, report, step))
    final_window = compute_window(current, algebras, window)
    injectivity = _injectivity_block(current, algebras)
    chain = tuple(
        chain_certificate(s.certificate)
        for s in injectivity.statements()
        if s.status is Status.ANISOTROPIC and s.certificate is not None
    )
    notes = [_WINDOW_NOTE]
    if not stabilized:
        notes.append("round budget exhausted before stabilization")
    return current, IterateReport(
        tuple(final_window.window),
        tuple(rounds),
        stabilized,
        final_window,
        injectivity,
        chain,
        tuple(notes),
    )


@dataclass(frozen=True)
class AlternatingRound:
    index: int
    linking: LinkingStep
    pushing: IterateReport

    def to_json(self) -> dict:
        return {
            "round": self.index,
            "linking": self.linking.to_json(),
            "pushing": self.pushing.to_json(),
        }


@dataclass(frozen=True)
class AlternatingReport:
    rounds: tuple[AlternatingRound, ...]
    distinctness: InjectivityBlock
    chain: tuple[Certificate, ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "kind": "alternating-truncation",
            "rounds": [r.to_json() for r in self.rounds],
            "distinctness": self.distinctness.to_json(),
            "chain": [c.to_json() for c in self.chain],
            "notes": list(self.notes),
        }

    def required_statements(self) -> list[TrackedStatement]:
        out: list[TrackedStatement] = []
        for r in self.rounds:
            out += r.linking.required_statements()
            out += r.pushing.required_statements()
        out += self.distinctness.statements()
        return out


def run_alternating_truncation(
    state: TowerState,
    algebras: list[QuaternionAlgebra],
    window: list[int],
    rounds: int,
    max_rounds_per_iterate: int,
) -> tuple[TowerState, AlternatingReport]:
    """Alternate linking and pushing rounds; certify images stay pairwise distinct."""
    if not isinstance(state.base, RationalBase):
        raise PreconditionError("the alternating truncation needs a concrete base")
    if rounds < 0:
        raise InputError("rounds must be nonnegative")
    out_rounds: list[AlternatingRound] = []
    current = state
    for r in range(1, rounds + 1):
        current, link = step_linking_extension(current, algebras)
        current, push = iterate_pushing(
            current, algebras, window, max_rounds_per_iterate
        )
        out_rounds.append(AlternatingRound(r, link, push))
    distinctness = _injectivity_block(current, algebras)
    chain = tuple(
        chain_certificate(s.certificate)
        for s in distinctness.statements()
        if s.status is Status.ANISOTROPIC and s.certificate is not None
    )
    return current, AlternatingReport(
        tuple(out_rounds),
        distinctness,
        chain,
        (_WINDOW_NOTE,),
    )
