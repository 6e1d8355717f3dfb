"""Command-line surface: output shapes, exit codes, determinism."""

import json

import pytest

from quatgenus.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_symbol_examples(capsys):
    assert run_cli(capsys, "symbol", "-1", "-1", "inf") == (0, "-1\n", "")
    assert run_cli(capsys, "symbol", "-1", "-1", "2") == (0, "-1\n", "")
    assert run_cli(capsys, "symbol", "1", "7", "3") == (0, "1\n", "")


def test_symbol_malformed_place(capsys):
    code, _out, err = run_cli(capsys, "symbol", "1", "7", "4")
    assert code == 2
    assert "error:" in err


def test_form_isotropic_text(capsys):
    code, out, _ = run_cli(capsys, "form", "isotropic", "1,1,1,-7")
    assert code == 0
    assert out == "anisotropic (fails at 2)\n"
    code, out, _ = run_cli(capsys, "form", "isotropic", "1,1,-2")
    assert code == 0
    assert out == "isotropic (witness [1, 1, 1])\n"


def test_form_analyze_json(capsys):
    code, out, _ = run_cli(capsys, "form", "analyze", "-2,1,3,3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 4
    assert payload["determinant"] == -2
    assert payload["signature"] == [3, 1]
    assert payload["isotropic"] is False
    assert payload["failing_place"] == 3


def test_form_witt_text(capsys):
    code, out, _ = run_cli(capsys, "form", "witt", "1,1,1,1,-1,-1,-3,-3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "witt index: 2"
    assert lines[1] == "anisotropic part: <1,1,-3,-3>"


def test_form_rejects_zero_coefficient(capsys):
    code, _out, err = run_cli(capsys, "form", "analyze", "1,0,3")
    assert code == 2
    assert "error:" in err


def test_quat_compare_text(capsys):
    code, out, _ = run_cli(capsys, "quat", "compare", "-1,-1", "-1,-3")
    assert code == 0
    assert out == "not isomorphic; linked; distinguishing witness -2\n"
    code, out, _ = run_cli(capsys, "quat", "compare", "-1,-1", "-2,-1")
    assert code == 0
    assert out == "isomorphic; linked; no distinguishing witness\n"


def test_quat_compare_split_is_precondition_error(capsys):
    code, _out, err = run_cli(capsys, "quat", "compare", "-1,-1", "1,5")
    assert code == 3
    assert "error:" in err


def test_quat_embeds(capsys):
    assert run_cli(capsys, "quat", "embeds", "-1,-1", "-2") == (0, "true\n", "")
    assert run_cli(capsys, "quat", "embeds", "-1,-1", "7") == (0, "false\n", "")


def test_quat_witness(capsys):
    code, out, _ = run_cli(capsys, "quat", "witness", "-1,-1", "-2,-5")
    assert code == 0
    assert "common subfield witness: -2" in out
    assert "distinguishing witness: -1" in out


def test_quat_genus_json(capsys):
    code, out, _ = run_cli(
        capsys, "quat", "genus", "-1,-1", "-1,-3", "-1,-7", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    witnesses = {tuple(e["pair"]): e["witness"] for e in payload["entries"]}
    assert witnesses == {(0, 1): -2, (0, 2): -3, (1, 2): -2}


def test_tower_run_json_and_exit_codes(tmp_path, capsys):
    script = tmp_path / "worked.json"
    script.write_text(
        json.dumps(
            {
                "base": "rationals",
                "algebras": [[-1, -1], [-1, -3]],
                "steps": [{"kind": "pushing", "classes": [-2]}],
            }
        )
    )
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "tower", "run", str(script), "--out", str(out_path))
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "tower-report/1"
    assert report["replay"]["checked"] == report["replay"]["passed"]
    assert out_path.read_text() == out


def test_tower_run_isotropic_adjoin_is_input_error(tmp_path, capsys):
    script = tmp_path / "bad.json"
    script.write_text(
        json.dumps(
            {
                "base": "rationals",
                "algebras": [],
                "steps": [{"kind": "adjoin", "form": [1, -1]}],
            }
        )
    )
    code, _out, err = run_cli(capsys, "tower", "run", str(script))
    assert code == 2
    assert "isotropic" in err


def test_tower_run_unknown_gate_is_truncation(tmp_path, capsys):
    script = tmp_path / "stuck.json"
    script.write_text(
        json.dumps(
            {
                "base": "rationals",
                "algebras": [],
                "steps": [
                    {"kind": "adjoin", "form": [1, 1, 1, 1]},
                    {"kind": "adjoin", "form": [-2, 1, 3, 3]},
                ],
            }
        )
    )
    code, _out, err = run_cli(capsys, "tower", "run", str(script))
    assert code == 4
    assert "error:" in err


def test_tower_run_missing_file(tmp_path, capsys):
    code, _out, err = run_cli(capsys, "tower", "run", str(tmp_path / "nope.json"))
    assert code == 2
    assert "cannot read script" in err


def test_tower_text_summary(tmp_path, capsys):
    script = tmp_path / "worked.json"
    script.write_text(
        json.dumps(
            {
                "base": "rationals",
                "algebras": [[-1, -1], [-1, -3]],
                "steps": [{"kind": "pushing", "classes": [-2]}],
            }
        )
    )
    code, out, _ = run_cli(capsys, "tower", "run", str(script), "--output", "text")
    assert code == 0
    assert "replay: 17/17" in out
    assert "unknown required claims: 0" in out


def test_selftest_command(capsys):
    code, out, _ = run_cli(capsys, "selftest", "product-formula", "--trials", "50")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "suite: product-formula"
    assert lines[1] == "result: PASS"
    assert "seconds" not in out


def test_selftest_rejects_unknown_suite(capsys):
    code, _out, _err = run_cli(capsys, "selftest", "nonsense")
    assert code == 2


def test_output_is_deterministic(capsys, tmp_path):
    script = tmp_path / "worked.json"
    script.write_text(
        json.dumps(
            {
                "base": "rationals",
                "algebras": [[-1, -1], [-1, -3]],
                "steps": [{"kind": "iterate", "window": 10, "max_rounds": 3}],
            }
        )
    )
    invocations = [
        ("symbol", "-1", "-1", "2"),
        ("form", "analyze", "-2,1,3,3", "--json"),
        ("quat", "compare", "-1,-1", "-1,-3", "--json"),
        ("tower", "run", str(script)),
        ("selftest", "product-formula", "--trials", "25"),
    ]
    for argv in invocations:
        first = run_cli(capsys, *argv)
        second = run_cli(capsys, *argv)
        assert first == second, argv
