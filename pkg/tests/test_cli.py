from __future__ import annotations

import json
from pathlib import Path

import pytest

from pelements.cli import main
from pelements.constructions import q8_in_gl2, sym
from pelements.expr import ExprError, bound_from_text, group_from_text, parse
from pelements.serialize import FormatError, dumps, load, loads, save


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "-p", "3", "gl(2,3)")
    data = json.loads(out)
    assert code == 0
    assert data["count"] == 9 and data["proportion"] == "3/16" and data["order"] == 48


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "i(4,3)")
    assert code == 0
    data = json.loads(out)
    assert data["exact"] == "640" and data["approx"] == 640.0
    _, out, _ = run(capsys, "bounds", "h(5, 6)")
    assert json.loads(out)["exact"] == "32 * 3^(5/3)"


def test_mp_json_and_csv(capsys):
    code, out, _ = run(capsys, "mp", "-p", "2", "alt(5)")
    data = json.loads(out)
    assert code == 0 and data["mp"] == 4
    assert all(isinstance(w["element"], str) for w in data["factors"][0]["witnesses"])
    code, out, _ = run(capsys, "mp", "--primes", "2,3,5", "--format", "csv", "sym(5)")
    # composition factors Alt_5 and C_2: M_2 = 4 * 1, M_3 = 3 * 2, M_5 = 5 * 2
    assert out.splitlines() == ["group,p,mp", "sym(5),2,4", "sym(5),3,6", "sym(5),5,10"]


def test_construct_round_trip(capsys, tmp_path: Path):
    target = tmp_path / "s4.grp"
    code, _, _ = run(capsys, "construct", "sym(4)", "--out", str(target))
    assert code == 0
    G = load(target)
    assert G.order == 24
    code, out, _ = run(capsys, "census", "-p", "2", f"gens@{target}")
    # identity, 6 transpositions, 3 double transpositions, 6 four-cycles
    assert json.loads(out)["count"] == 16


def test_lemmas_csv(capsys):
    code, out, _ = run(capsys, "lemmas", "bothcases", "--max", "4", "--failures-only")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "q,s,t,verdict"
    assert {tuple(r.split(",")[1:3]) for r in rows[1:]} == {("2", "2")}


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "mp-values")
    assert code == 0
    assert "suite mp-values: pass" in out
    code2, out2, _ = run(capsys, "verify", "--suite", "mp-values")
    assert out2 == out


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    names = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0
    assert names == [
        "steinberg",
        "extremal",
        "mp-values",
        "alt-theorem",
        "lemma-grids",
        "table1-witnesses",
        "cor23-corpus",
        "thmF-rank1",
    ]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["census", "-p", "4", "sym(3)"], 2),
        (["census", "sym(3)"], 2),
        (["census", "-p", "2", "sym(3"], 2),
        (["census", "-p", "2", "gl(2,6)"], 2),
        (["census", "-p", "2", "--cap", "10", "sym(5)"], 3),
        (["construct", "--cap", "0", "sym(3)"], 2),
        (["frobnicate"], 2),
        (["verify", "--suite", "nope"], 2),
        (["construct", "gens@/nonexistent/file.grp"], 2),
    ],
)
def test_exit_codes(capsys, argv: list[str], code: int):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    capsys.readouterr()
    assert got == code


def test_parse_offsets():
    with pytest.raises(ExprError) as err:
        parse("sym(5")
    assert err.value.offset == 5
    with pytest.raises(ExprError) as err:
        parse("wreath(sym(2), $)")
    assert err.value.offset == 15
    with pytest.raises(ExprError) as err:
        group_from_text("sym(2, 3)")
    assert err.value.offset == 0
    with pytest.raises(ExprError):
        parse("sym(5) x")


def test_expression_forms():
    assert group_from_text("hall(gammaL1(3,2),p=2)").order == 21
    assert group_from_text("wreath(gl(1,5), sym(2))").order == 32
    assert group_from_text("extremal_perm(p=2,k=2)").order == 81
    assert group_from_text("extremal_linear(q=9,k=0)").order == 160
    assert group_from_text("direct(cyclic(2), cyclic(3))").order == 6
    assert str(parse("gl(n=2, q=3)")) == "gl(n=2,q=3)"
    assert bound_from_text("f(3,2)") == 21
    assert bound_from_text("thmC(2,9,3)") == 160


def test_serialize_round_trip(tmp_path: Path):
    for G in (sym(4), q8_in_gl2(7)):
        path = tmp_path / "g.grp"
        save(G, path)
        H = load(path)
        assert H.order == G.order and dumps(H) == dumps(G)
    with pytest.raises(FormatError):
        loads("BOGUS 3\n(1 2)\n")
    with pytest.raises(FormatError):
        loads("MAT 2 GF 5 1 0 1\n1 2 3\n")
