"""Script execution: parse a JSON construction script, run it, emit a report.

A script names a base, a family of algebras, and a list of steps. The
resulting report embeds every certificate the steps produced, replays each
one against the final tower before the report leaves this module, and
counts honest UNKNOWNs among the required claims. Reports are rendered
with sorted keys and fixed indentation so identical runs are identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import witness_sequence
from .certificates import (
    FormLike,
    ReplayContext,
    Status,
    form_from_json,
    iter_certificates,
    replay,
)
from .errors import InputError
from .quaternion import QuaternionAlgebra
from .symbolic import SymbolicAlgebra, SymbolicClass, symbolic_albert_form
from .tower import (
    AbstractBase,
    Assumption,
    RationalBase,
    TowerState,
    TrackedStatement,
    adjoin,
    derive_status,
    iterate_pushing,
    run_alternating_truncation,
    step_linking_extension,
    step_pushing_extension,
)

SCHEMA = "tower-report/1"

_KIND_ALIASES = {"iterateP": "iterate", "theoremC": "alternate"}


@dataclass(frozen=True)
class RunConfig:
    height_bound: int = 200
    witness_window: int = 10
    max_levels: int = 3
    output: str = "text"
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "height_bound": self.height_bound,
            "witness_window": self.witness_window,
            "max_levels": self.max_levels,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Script:
    base: RationalBase | AbstractBase
    concrete: tuple[QuaternionAlgebra, ...]
    abstract: tuple[SymbolicAlgebra, ...]
    steps: tuple[dict, ...]

    @property
    def is_concrete(self) -> bool:
        return isinstance(self.base, RationalBase)


def _parse_abstract_form(data: object, algebras: list[SymbolicAlgebra]) -> FormLike:
    if isinstance(data, dict) and "norm_of" in data:
        idx = data["norm_of"]
        if not isinstance(idx, int) or not 0 <= idx < len(algebras):
            raise InputError(f"norm_of index out of range: {idx!r}")
        return algebras[idx].norm_form()
    if isinstance(data, dict) and "albert_of" in data:
        pair = data["albert_of"]
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(i, int) and 0 <= i < len(algebras) for i in pair)
        ):
            raise InputError(f"albert_of needs two algebra indices: {pair!r}")
        return symbolic_albert_form(algebras[pair[0]], algebras[pair[1]])
    return form_from_json(data)


def parse_script(data: object) -> Script:
    if not isinstance(data, dict):
        raise InputError("a script must be a JSON object")
    raw_base = data.get("base", "rationals")
    raw_algebras = data.get("algebras", [])
    if not isinstance(raw_algebras, list):
        raise InputError("algebras must be a list")
    steps = data.get("steps", [])
    if not isinstance(steps, list) or not all(isinstance(s, dict) for s in steps):
        raise InputError("steps must be a list of objects")
    if raw_base == "rationals":
        concrete = []
        for entry in raw_algebras:
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, int) for x in entry)
            ):
                raise InputError(f"a concrete algebra is a [a, b] pair: {entry!r}")
            concrete.append(QuaternionAlgebra.of(entry[0], entry[1]))
        return Script(RationalBase(), tuple(concrete), (), tuple(steps))
    if isinstance(raw_base, dict) and "abstract" in raw_base:
        block = raw_base["abstract"]
        if not isinstance(block, dict):
            raise InputError("abstract base must be an object")
        symbols = block.get("symbols", [])
        if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
            raise InputError("abstract symbols must be strings")
        abstract: list[SymbolicAlgebra] = []
        for entry in raw_algebras:
            if (
                not isinstance(entry, dict)
                or not isinstance(entry.get("symbols"), list)
                or len(entry["symbols"]) != 2
            ):
                raise InputError(f"an abstract algebra is {{'symbols': [a, b]}}: {entry!r}")
            a, b = entry["symbols"]
            if a not in symbols or b not in symbols:
                raise InputError(f"algebra symbols {a!r}, {b!r} must be declared in the base")
            abstract.append(SymbolicAlgebra(SymbolicClass.named(a), SymbolicClass.named(b)))
        assumptions = []
        seen: set[str] = set()
        for raw in block.get("assumptions", []):
            if not isinstance(raw, dict) or "id" not in raw or "anisotropic" not in raw:
                raise InputError(f"an assumption needs 'id' and 'anisotropic': {raw!r}")
            ident = raw["id"]
            if not isinstance(ident, str) or ident in seen:
                raise InputError(f"assumption ids must be unique strings: {ident!r}")
            seen.add(ident)
            subject = _parse_abstract_form(raw["anisotropic"], abstract)
            assumptions.append(Assumption(ident, subject))
        base = AbstractBase(tuple(symbols), tuple(assumptions))
        return Script(base, (), tuple(abstract), tuple(steps))
    raise InputError(f"unknown base: {raw_base!r}")


def _window_classes(raw: object, config: RunConfig) -> list[int]:
    if raw is None:
        return witness_sequence(config.witness_window)
    if isinstance(raw, int):
        if raw < 1:
            raise InputError("window limit must be positive")
        return witness_sequence(raw)
    if isinstance(raw, list) and all(isinstance(c, int) for c in raw):
        return list(raw)
    raise InputError(f"window must be a limit or a list of classes: {raw!r}")


def execute_script(script: Script, config: RunConfig) -> dict:
    """Run the steps, replay every certificate, and assemble the report."""
    state = TowerState(script.base)
    step_reports: list[dict] = []
    required: list[TrackedStatement] = []
    for raw in script.steps:
        kind = raw.get("kind")
        kind = _KIND_ALIASES.get(kind, kind)
        if kind == "pushing":
            classes = raw.get("classes")
            if not isinstance(classes, list) or not all(isinstance(c, int) for c in classes):
                raise InputError("the pushing step needs a list of integer classes")
            state, step = step_pushing_extension(state, list(script.concrete), classes)
            step_reports.append(step.to_json())
            required += step.required_statements()
        elif kind == "linking":
            family = list(script.concrete) if script.is_concrete else list(script.abstract)
            state, step = step_linking_extension(state, family)
            step_reports.append(step.to_json())
            required += step.required_statements()
        elif kind == "iterate":
            window = _window_classes(raw.get("window"), config)
            max_rounds = raw.get("max_rounds", config.max_levels)
            if not isinstance(max_rounds, int):
                raise InputError("max_rounds must be an integer")
            state, report = iterate_pushing(state, list(script.concrete), window, max_rounds)
            step_reports.append(report.to_json())
            required += report.required_statements()
        elif kind == "alternate":
            window = _window_classes(raw.get("window"), config)
            rounds = raw.get("rounds", 1)
            max_rounds = raw.get("max_rounds", config.max_levels)
            if not isinstance(rounds, int) or not isinstance(max_rounds, int):
                raise InputError("rounds and max_rounds must be integers")
            state, report = run_alternating_truncation(
                state, list(script.concrete), window, rounds, max_rounds
            )
            step_reports.append(report.to_json())
            required += report.required_statements()
        elif kind == "adjoin":
            phi = form_from_json(raw.get("form"))
            state, gate = adjoin(state, phi)
            step_reports.append(
                {"kind": "adjoin", "form": phi.to_json(), "gate": gate.to_json()}
            )
            required.append(gate)
        else:
            raise InputError(f"unknown step kind: {raw.get('kind')!r}")
    context = state.replay_context()
    checked = passed = 0
    tracked_statements = [derive_status(state, f) for f in state.tracked]
    for stmt in required + tracked_statements:
        if stmt.certificate is None:
            continue
        for cert in iter_certificates(stmt.certificate):
            checked += 1
            if replay(cert, context):
                passed += 1
    unknowns = [stmt for stmt in required if stmt.status is Status.UNKNOWN]
    report = {
        "schema": SCHEMA,
        "base": script.base.to_json(),
        "algebras": [a.to_json() for a in (script.concrete or script.abstract)],
        "config": config.to_json(),
        "steps": step_reports,
        "final_state": {
            **state.to_json(),
            "tracked": [s.to_json() for s in tracked_statements],
        },
        "replay": {"checked": checked, "passed": passed},
        "unknown_count": len(unknowns),
        "unknown_subjects": [str(s.subject) for s in unknowns],
    }
    return report


def report_exit_code(report: dict) -> int:
    if report["unknown_count"] > 0:
        return 4
    if report["replay"]["checked"] != report["replay"]["passed"]:
        return 1
    return 0


def render_report(report: dict) -> str:
    """Canonical byte-stable JSON rendering."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def summarize_report(report: dict) -> str:
    lines = [
        f"base: {report['base'] if isinstance(report['base'], str) else 'abstract'}",
        f"algebras: {len(report['algebras'])}",
        f"steps: {len(report['steps'])}",
        f"levels: {len(report['final_state']['levels'])}",
        f"replay: {report['replay']['passed']}/{report['replay']['checked']}",
        f"unknown required claims: {report['unknown_count']}",
    ]
    for step in report["steps"]:
        kind = step.get("kind")
        if kind == "pushing":
            lines.append(
                f"  pushing classes={step['classes']} adjoined={len(step['adjoined'])}"
            )
        elif kind == "linking":
            lines.append(f"  linking adjoined={len(step['adjoined'])}")
        elif kind == "iterate-pushing":
            lines.append(
                f"  iterate rounds={len(step['rounds'])} stabilized={step['stabilized']}"
            )
        elif kind == "alternating-truncation":
            lines.append(f"  alternate rounds={len(step['rounds'])}")
        elif kind == "adjoin":
            lines.append(f"  adjoin {step['form']}")
    return "\n".join(lines) + "\n"


def run_script_data(data: object, config: RunConfig) -> tuple[dict, int]:
    script = parse_script(data)
    report = execute_script(script, config)
    return report, report_exit_code(report)


def context_from_report(report: dict) -> ReplayContext:
    """Rebuild the replay surroundings from a report alone."""
    base = report["base"]
    assumptions: tuple[tuple[str, FormLike], ...] = ()
    if isinstance(base, dict):
        assumptions = tuple(
            (a["id"], form_from_json(a["anisotropic"])) for a in base["assumptions"]
        )
    adjunctions = tuple(
        form_from_json(level["form"]) for level in report["final_state"]["levels"]
    )
    return ReplayContext(assumptions=assumptions, adjunctions=adjunctions)


def certificates_in_report(report: dict):
    """Yield every top-level certificate JSON object embedded in a report."""

    def walk(node: object):
        if isinstance(node, dict):
            if "rule" in node and "status" in node and "subject" in node:
                yield node
            else:
                for value in node.values():
                    yield from walk(value)
        elif isinstance(node, list):
            for value in node:
                yield from walk(value)

    yield from walk(report)
