"""Command-line surface: symbols, form reports, algebra comparisons, scripts, self-tests.

Output is deterministic: identical invocations print identical bytes. Exit
codes: 0 success, 1 property failure, 2 malformed input, 3 unmet
precondition, 4 truncation left a required claim unknown.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .arith import parse_rational
from .errors import InputError, PreconditionError, TruncationError
from .forms import (
    DiagonalForm,
    invariants,
    isotropic_vector,
    isotropy_failure,
    witt_decompose,
)
from .quaternion import (
    QuaternionAlgebra,
    common_subfield_witness,
    contains_subfield,
    distinguishing_witness,
    genus_report,
    is_isomorphic,
    is_linked,
    ramification,
)
from .runner import RunConfig, render_report, run_script_data, summarize_report
from .selftest import SUITES, run_suite
from .symbols import hilbert_symbol, parse_place


def _parse_form(text: str) -> DiagonalForm:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError("empty coefficient list")
    return DiagonalForm.of([parse_rational(p) for p in parts])


def _parse_algebra(text: str) -> QuaternionAlgebra:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != 2:
        raise InputError(f"an algebra is a pair 'a,b': {text!r}")
    return QuaternionAlgebra.of(parse_rational(parts[0]), parse_rational(parts[1]))


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_symbol(args: argparse.Namespace) -> int:
    value = hilbert_symbol(
        parse_rational(args.a), parse_rational(args.b), parse_place(args.place)
    )
    print(value)
    return 0


def _form_payload(q: DiagonalForm) -> dict:
    inv = invariants(q)
    failing = isotropy_failure(q)
    return {
        "coefficients": q.to_json(),
        **inv.to_json(),
        "isotropic": failing is None,
        "failing_place": None if failing is None else failing.to_json(),
    }


def cmd_form(args: argparse.Namespace) -> int:
    q = _parse_form(args.coefficients)
    if args.action == "analyze":
        payload = _form_payload(q)
        if args.json:
            _emit_json(payload)
            return 0
        inv = invariants(q)
        print(f"form: {q}")
        print(f"dimension: {inv.dimension}")
        print(f"determinant class: {inv.determinant}")
        print(f"signed discriminant: {inv.signed_discriminant}")
        print(f"signature: {inv.signature}")
        hasse = " ".join(f"{v}:{e:+d}" for v, e in inv.hasse)
        print(f"hasse symbols: {hasse if hasse else '(none)'}")
        verdict = "isotropic" if payload["isotropic"] else f"anisotropic (fails at {isotropy_failure(q)})"
        print(f"isotropy: {verdict}")
        return 0
    if args.action == "isotropic":
        failing = isotropy_failure(q)
        if failing is not None:
            if args.json:
                _emit_json({"isotropic": False, "failing_place": failing.to_json()})
            else:
                print(f"anisotropic (fails at {failing})")
            return 0
        vector = isotropic_vector(q, args.bound)
        if args.json:
            _emit_json({"isotropic": True, "witness": None if vector is None else list(vector)})
        elif vector is None:
            print(f"isotropic (no witness with max-norm <= {args.bound})")
        else:
            print(f"isotropic (witness {list(vector)})")
        return 0
    decomposition = witt_decompose(q)
    part = decomposition.anisotropic_part
    if args.json:
        _emit_json(decomposition.to_json())
        return 0
    print(f"witt index: {decomposition.witt_index}")
    print(f"anisotropic part: {'<>' if part is None else part}")
    for vector in decomposition.witnesses:
        print(f"isotropic witness: {list(vector)}")
    return 0


def cmd_quat(args: argparse.Namespace) -> int:
    if args.action == "compare":
        a1, a2 = _parse_algebra(args.first), _parse_algebra(args.second)
        isomorphic = is_isomorphic(a1, a2)
        linked = is_linked(a1, a2)
        witness = None if isomorphic else distinguishing_witness(a1, a2, args.limit)
        if args.json:
            _emit_json(
                {
                    "isomorphic": isomorphic,
                    "linked": linked,
                    "distinguishing_witness": witness,
                    "ramification": [
                        [v.to_json() for v in ramification(a1)],
                        [v.to_json() for v in ramification(a2)],
                    ],
                }
            )
            return 0
        pieces = [
            "isomorphic" if isomorphic else "not isomorphic",
            "linked" if linked else "not linked",
        ]
        pieces.append(
            "no distinguishing witness" if witness is None else f"distinguishing witness {witness}"
        )
        print("; ".join(pieces))
        return 0
    if args.action == "embeds":
        algebra = _parse_algebra(args.first)
        c = parse_rational(args.second)
        verdict = contains_subfield(algebra, c)
        if args.json:
            _emit_json({"embeds": verdict})
        else:
            print("true" if verdict else "false")
        return 0
    if args.action == "witness":
        a1, a2 = _parse_algebra(args.first), _parse_algebra(args.second)
        common = common_subfield_witness(a1, a2, args.limit)
        distinguishing = (
            None if is_isomorphic(a1, a2) else distinguishing_witness(a1, a2, args.limit)
        )
        if args.json:
            _emit_json({"common": common, "distinguishing": distinguishing})
            return 0
        print(f"common subfield witness: {common}")
        if distinguishing is None:
            print("distinguishing witness: none (isomorphic)")
        else:
            print(f"distinguishing witness: {distinguishing}")
        return 0
    algebras = [_parse_algebra(text) for text in [args.first, args.second] + args.rest]
    report = genus_report(algebras, args.limit)
    if args.json:
        _emit_json(report.to_json())
        return 0
    for index, algebra in enumerate(report.algebras):
        print(f"[{index}] {algebra}")
    for entry in report.entries:
        i, j = entry.pair
        if entry.isomorphic:
            print(f"({i},{j}): isomorphic")
        else:
            print(f"({i},{j}): distinct, witness {entry.witness}")
    return 0


def cmd_tower(args: argparse.Namespace) -> int:
    try:
        with open(args.script, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as error:
        raise InputError(f"cannot read script: {error}") from error
    except json.JSONDecodeError as error:
        raise InputError(f"script is not valid JSON: {error}") from error
    config = RunConfig(
        height_bound=args.height_bound,
        witness_window=args.witness_window,
        max_levels=args.max_levels,
        output=args.output,
        seed=args.seed,
    )
    report, code = run_script_data(data, config)
    rendered = render_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    if args.output == "json":
        sys.stdout.write(rendered)
    else:
        sys.stdout.write(summarize_report(report))
    return code


def cmd_selftest(args: argparse.Namespace) -> int:
    result = run_suite(args.suite, args.trials, args.seed)
    print(f"suite: {result.name}")
    print(f"result: {'PASS' if result.passed else 'FAIL'}")
    print(f"checks: {result.checks}")
    print(f"detail: {result.detail}")
    if result.counterexample is not None:
        print(f"counterexample: {result.counterexample}")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatgenus",
        description="Quadratic forms and quaternion algebras over the rationals, "
        "with certified field-tower constructions.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_symbol = commands.add_parser("symbol", help="Hilbert symbol (a,b) at a place")
    p_symbol.add_argument("a")
    p_symbol.add_argument("b")
    p_symbol.add_argument("place", help="'inf' or a prime")
    p_symbol.set_defaults(func=cmd_symbol)

    p_form = commands.add_parser("form", help="diagonal form reports")
    p_form.add_argument("action", choices=("analyze", "isotropic", "witt"))
    p_form.add_argument("coefficients", help="comma-separated nonzero rationals")
    p_form.add_argument("--bound", type=int, default=200, help="witness search max-norm")
    p_form.add_argument("--json", action="store_true")
    p_form.set_defaults(func=cmd_form)

    p_quat = commands.add_parser("quat", help="quaternion algebra comparisons")
    p_quat.add_argument("action", choices=("compare", "embeds", "witness", "genus"))
    p_quat.add_argument("first", help="algebra 'a,b' (or, for embeds, the algebra)")
    p_quat.add_argument("second", help="algebra 'a,b' (or, for embeds, the class c)")
    p_quat.add_argument("rest", nargs="*", help="further algebras (genus)")
    p_quat.add_argument("--limit", type=int, default=1000, help="witness search limit")
    p_quat.add_argument("--json", action="store_true")
    p_quat.set_defaults(func=cmd_quat)

    p_tower = commands.add_parser("tower", help="run a construction script")
    p_tower.add_argument("action", choices=("run",))
    p_tower.add_argument("script", help="path to a JSON script")
    p_tower.add_argument("--out", help="also write the JSON report to this file")
    p_tower.add_argument("--output", choices=("text", "json"), default="json")
    p_tower.add_argument("--height-bound", type=int, default=200)
    p_tower.add_argument("--witness-window", type=int, default=10)
    p_tower.add_argument("--max-levels", type=int, default=3)
    p_tower.add_argument("--seed", type=int, default=0)
    p_tower.set_defaults(func=cmd_tower)

    p_selftest = commands.add_parser("selftest", help="run a property suite")
    p_selftest.add_argument("suite", choices=sorted(SUITES))
    p_selftest.add_argument("--trials", type=int, default=None)
    p_selftest.add_argument("--seed", type=int, default=0)
    p_selftest.set_defaults(func=cmd_selftest)

    # Operands like "-2,1,3,3" and "-1,-1" start with a dash; none of the
    # registered flags are numeric, so widen the negative-number test that
    # argparse uses to tell operands from options.
    operand = re.compile(r"^-\d")
    for sub in (p_symbol, p_form, p_quat):
        sub._negative_number_matcher = operand

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 2
    try:
        return args.func(args)
    except InputError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except TruncationError as error:
        print(f"error: {error}", file=sys.stderr)
        return 4
    except PreconditionError as error:
        print(f"error: {error}", file=sys.stderr)
        return 3
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
