"""Acceptance gate: the nine primary guarantees.

Each test prints exactly one ``[PASS] criterion N: ...`` line on success
(or ``[FAIL] criterion N: ...`` before re-raising), written through the
capture layer so the lines are visible in normal pytest output.
"""

import json
from contextlib import contextmanager
from pathlib import Path

from quatgenus.cli import main
from quatgenus.runner import RunConfig, render_report, run_script_data
from quatgenus.selftest import run_suite

DATA = Path(__file__).parent / "data"

WORKED_PUSHING = {
    "base": "rationals",
    "algebras": [[-1, -1], [-1, -3]],
    "steps": [{"kind": "pushing", "classes": [-2]}],
}

WORKED_ITERATE = {
    "base": "rationals",
    "algebras": [[-1, -1], [-1, -3]],
    "steps": [{"kind": "iterate", "window": 10, "max_rounds": 3}],
}

ABSTRACT_LINKING = {
    "base": {
        "abstract": {
            "symbols": ["a1", "b1", "a2", "b2"],
            "assumptions": [
                {"id": "norms-1", "anisotropic": {"norm_of": 0}},
                {"id": "norms-2", "anisotropic": {"norm_of": 1}},
                {"id": "link-12", "anisotropic": {"albert_of": [0, 1]}},
            ],
        }
    },
    "algebras": [{"symbols": ["a1", "b1"]}, {"symbols": ["a2", "b2"]}],
    "steps": [{"kind": "linking"}],
}


@contextmanager
def criterion(capsys, number, label):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"[FAIL] criterion {number}: {label}")
        raise
    else:
        with capsys.disabled():
            print(f"[PASS] criterion {number}: {label}")


def test_criterion_1_product_formula(capsys):
    with criterion(capsys, 1, "Hilbert product formula on 1000 seeded pairs in <5s"):
        result = run_suite("product-formula", trials=1000, seed=0)
        assert result.passed, result.counterexample
        assert result.checks == 1000
        assert result.seconds < 5.0, f"took {result.seconds:.2f}s"


def test_criterion_2_isotropy_oracle(capsys):
    with criterion(
        capsys, 2, "dual-route isotropy oracle, exhaustive dims <=4, zero mismatches in <60s"
    ):
        result = run_suite("isotropy-oracle")
        assert result.passed, result.counterexample
        assert result.checks == 4844  # all multisets of size 1..4 from the 16-class pool
        assert result.counterexample is None
        assert result.seconds < 60.0, f"took {result.seconds:.2f}s"


def test_criterion_3_linkage(capsys):
    with criterion(capsys, 3, "200 seeded division pairs linked with common witness |c|<=50"):
        result = run_suite("linkage-q", trials=200, seed=0)
        assert result.passed, result.counterexample
        assert result.checks == 200


def test_criterion_4_genus_witnesses(capsys):
    with criterion(
        capsys, 4, "200 seeded non-isomorphic pairs: distinguishing witness |c|<=100, one-sided"
    ):
        result = run_suite("genus-q", trials=200, seed=0)
        assert result.passed, result.counterexample
        assert result.checks == 200


def test_criterion_5_worked_pushing_step(capsys):
    with criterion(
        capsys, 5, "worked pushing step matches checked-in report byte for byte"
    ):
        report, code = run_script_data(WORKED_PUSHING, RunConfig())
        assert code == 0

        rendered = render_report(report)
        golden = (DATA / "worked_pushing_report.json").read_text()
        assert rendered == golden

        step = report["steps"][0]
        membership = {
            (entry["algebra"], entry["class"]): entry["member"]
            for entry in step["membership_at_base"]
        }
        assert membership == {(0, -2): True, (1, -2): False}

        assert [rec["form"] for rec in step["adjoined"]] == [[-2, 1, 3, 3]]
        assert step["adjoined"][0]["level"] == 1

        injectivity_certs = [
            entry["statement"]["certificate"]
            for entry in step["injectivity"]["norm_forms"]
        ] + [
            entry["statement"]["certificate"]
            for entry in step["injectivity"]["pair_forms"]
        ]
        subjects = sorted(tuple(cert["subject"]) for cert in injectivity_certs)
        assert subjects == [(1, 1, -3, -3), (1, 1, 1, 1), (1, 1, 3, 3)]
        for cert in injectivity_certs:
            assert cert["rule"] == "R-PFISTER"
            assert cert["parameters"]["subject_disc"] == 1
            assert cert["parameters"]["adjoined_disc"] == -2

        assert [entry["pair"] for entry in step["injectivity"]["pair_forms"]] == [[0, 1]]
        assert step["injectivity"]["pair_forms"][0]["connecting"] == [-1, 3]

        embeddings = {
            (entry["algebra"], entry["class"]): (
                entry["member"],
                entry["statement"]["certificate"]["rule"],
            )
            for entry in step["embeddings"]
        }
        assert embeddings == {
            (0, -2): (True, "R-MONOTONE"),
            (1, -2): (True, "R-GENERIC"),
        }

        assert report["replay"] == {"checked": 17, "passed": 17}
        assert report["unknown_count"] == 0


def test_criterion_6_iterated_truncation_stabilizes(capsys):
    with criterion(
        capsys, 6, "iterated truncation (window 10, 3 levels) stabilizes with zero UNKNOWNs"
    ):
        report, code = run_script_data(WORKED_ITERATE, RunConfig())
        assert code == 0
        step = report["steps"][0]
        assert step["stabilized"] is True
        assert report["unknown_count"] == 0
        assert report["replay"]["checked"] == report["replay"]["passed"]


def test_criterion_7_abstract_linking(capsys):
    with criterion(
        capsys, 7, "abstract linking step: generic-splitting link, Hoffmann-preserved norms"
    ):
        report, code = run_script_data(ABSTRACT_LINKING, RunConfig())
        assert code == 0
        step = report["steps"][0]

        linked = step["linked_now"]
        assert [entry["pair"] for entry in linked] == [[0, 1]]
        link_cert = linked[0]["statement"]["certificate"]
        assert link_cert["rule"] == "R-GENERIC"
        assert link_cert["status"] == "isotropic"
        assert len(link_cert["parameters"]["adjoined"]["symbolic"]) == 6

        assert [entry["algebra"] for entry in step["preserved"]] == [0, 1]
        for entry in step["preserved"]:
            cert = entry["statement"]["certificate"]
            assert cert["rule"] == "R-HOFFMANN"
            assert cert["status"] == "anisotropic"
            exponent = cert["parameters"]["exponent"]
            subject_dim = len(cert["subject"]["symbolic"])
            adjoined_dim = len(cert["parameters"]["adjoined"]["symbolic"])
            assert exponent == 2
            assert subject_dim <= 2**exponent < adjoined_dim  # 4 <= 4 < 6
            assert [p["rule"] for p in cert["premises"]] == ["R-ASSUME"]

        assert report["replay"]["checked"] == report["replay"]["passed"] > 0
        assert report["unknown_count"] == 0


def test_criterion_8_certificate_fuzzing(capsys):
    with criterion(
        capsys, 8, "100 seeded scripts replay true; one tamper per rule replays false"
    ):
        result = run_suite("certificates", trials=100, seed=0)
        assert result.passed, result.counterexample


def test_criterion_9_determinism(capsys, tmp_path):
    with criterion(capsys, 9, "every command, run twice, emits byte-identical output"):
        pushing = tmp_path / "pushing.json"
        pushing.write_text(json.dumps(WORKED_PUSHING))
        iterate = tmp_path / "iterate.json"
        iterate.write_text(json.dumps(WORKED_ITERATE))
        abstract = tmp_path / "abstract.json"
        abstract.write_text(json.dumps(ABSTRACT_LINKING))

        invocations = [
            ["symbol", "-1", "-1", "2"],
            ["symbol", "-1", "-1", "inf"],
            ["form", "analyze", "-2,1,3,3"],
            ["form", "analyze", "-2,1,3,3", "--json"],
            ["form", "isotropic", "1,1,1,-7"],
            ["form", "witt", "1,1,1,1,-1,-1,-3,-3"],
            ["quat", "compare", "-1,-1", "-1,-3"],
            ["quat", "embeds", "-1,-1", "-2"],
            ["quat", "witness", "-1,-1", "-2,-5"],
            ["quat", "genus", "-1,-1", "-1,-3", "-1,-7", "--json"],
            ["tower", "run", str(pushing)],
            ["tower", "run", str(iterate), "--output", "text"],
            ["tower", "run", str(abstract)],
            ["selftest", "product-formula", "--trials", "50"],
            ["selftest", "linkage-q", "--trials", "20"],
        ]
        for argv in invocations:
            runs = []
            for _ in range(2):
                code = main(list(argv))
                captured = capsys.readouterr()
                runs.append((code, captured.out, captured.err))
            assert runs[0] == runs[1], argv
