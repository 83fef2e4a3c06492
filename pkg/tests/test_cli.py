import json

import pytest

from wpid.cli import main
from wpid.poly import parse_text


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


def test_emit_bilinear_json(capsys):
    code, out = run(capsys, "emit", "--genus", "2", "--set", "bilinear",
                    "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 4
    for ident in data["identities"]:
        assert parse_text(ident["relation"]).to_text() == ident["relation"]


def test_emit_appendix1_latex(capsys):
    code, out = run(capsys, "emit", "--genus", "3", "--set", "appendix1",
                    "--format", "latex")
    assert code == 0
    assert out.count("\\\\") == 15
    assert "\\wp_{3333}" in out


def test_emit_ode_single_weight_zero(capsys):
    code, out = run(capsys, "emit", "--genus", "1", "--set", "ode",
                    "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 1
    assert data["identities"][0]["weight"] == 0


def test_emit_deterministic(capsys):
    _, out1 = run(capsys, "emit", "--genus", "2", "--set", "quadratic",
                  "--format", "json")
    _, out2 = run(capsys, "emit", "--genus", "2", "--set", "quadratic",
                  "--format", "json")
    assert out1 == out2


def test_emit_unknown_set(capsys):
    code, _ = run(capsys, "emit", "--genus", "2", "--set", "nope")
    assert code == 2


def test_emit_discrepancies(capsys):
    code, out = run(capsys, "emit", "--genus", "3", "--set", "discrepancies",
                    "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["hA-span"]["dimension"] == 24
    four = {d["symbol"]: d for d in data["fourindex-printed-vs-generated"]}
    assert not four["wp[2,2,2,2]"]["match"]
    baker = {d["symbol"]: d for d in data["baker-transform"]}
    assert not baker["wp[2,2,2,3]"]["match"]


def test_multiplet_dimensions(capsys):
    code, out = run(capsys, "multiplet", "--genus", "3", "--hw", "P9",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["dimension"] == 9
    code, out = run(capsys, "multiplet", "--genus", "3", "--hw", "P7",
                    "--format", "json")
    assert json.loads(out)["dimension"] == 7
    code, out = run(capsys, "multiplet", "--genus", "2", "--hw", "baker4",
                    "--format", "json")
    assert json.loads(out)["dimension"] == 5


def test_multiplet_unknown(capsys):
    code, _ = run(capsys, "multiplet", "--genus", "3", "--hw", "P11")
    assert code == 2


def test_check_genus1_all(capsys):
    code, out = run(capsys, "check", "--genus", "1", "--suite", "all")
    assert code == 0
    data = json.loads(out)
    assert data["symbolic"]["pass"]
    assert all(v["vanishes"] for v in data["oracle"]["verdicts"])


def test_check_symbolic_genus2(capsys):
    code, out = run(capsys, "check", "--genus", "2", "--suite", "symbolic")
    assert code == 0
    assert json.loads(out)["symbolic"]["pass"]


def test_check_degenerate_curve_exit(capsys):
    code, _ = run(capsys, "check", "--genus", "1", "--suite", "oracle",
                  "--curve", "1,0,0,0,3")
    assert code == 3


def test_check_bad_curve_length(capsys):
    code, _ = run(capsys, "check", "--genus", "2", "--suite", "oracle",
                  "--curve", "1,2,3")
    assert code == 2


def test_check_appendix2_as_printed_fails(capsys):
    code, out = run(capsys, "check", "--genus", "3", "--suite", "oracle",
                    "--set", "appendix2-as-printed")
    assert code == 1
    data = json.loads(out)
    fails = [v["name"] for v in data["oracle"]["verdicts"]
             if not v["vanishes"]]
    assert "baker-wp[2,2,2,3]" in fails
