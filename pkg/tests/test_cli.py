import json

import pytest

from boolspectra.cli import main
from boolspectra.core import classify_function, wht
from boolspectra.decomp import concatenate_4
from boolspectra.expr import parse_expression
from boolspectra.io import emit_truth_table_hex, load_fixture, parse_truth_table_hex
from boolspectra.spectral import DisjointPair
from boolspectra.support import DualFunction, OrderedSupport, five_valued_profile


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- classify ---------------------------------------------------------------------


def test_classify_reference(capsys):
    code, out, _ = run(capsys, "classify", "fixture:example1.f.hex")
    assert code == 0
    rep = json.loads(out)
    assert rep["kind"] == "five_valued" and rep["n"] == 6
    assert rep["support_sizes"] == {"16": 8, "8": 32}
    assert rep["resiliency"] == -1


def test_classify_human(capsys):
    code, out, _ = run(capsys, "classify", "fixture:example1.f.hex", "--human")
    assert code == 0
    assert out.splitlines()[0] == "FiveValued |W| ∈ {0,8,16}, supports 32/8, resiliency -1"


def test_classify_constant(capsys):
    code, out, _ = run(capsys, "classify", "fixture:zero4.tt.hex")
    assert code == 0 and json.loads(out)["point"] == {"omega": 0, "value": 16}


def test_classify_truncated(capsys, tmp_path):
    p = tmp_path / "bad.tt.hex"
    p.write_text("abc")
    code, _, err = run(capsys, "classify", str(p))
    assert code == 2 and "parse error" in err


def test_classify_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", str(tmp_path / "nope.tt.hex"))
    assert code == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "classify", "fixture:plateaued6.tt.hex")
    b = run(capsys, "classify", "fixture:plateaued6.tt.hex")
    assert a == b


# -- build ------------------------------------------------------------------------


def test_build_reference_recipe(capsys, tmp_path):
    out_path = tmp_path / "f.tt.hex"
    code, out, _ = run(capsys, "build", "fixture:example1.recipe.json", "--out", str(out_path))
    assert code == 0
    f = parse_truth_table_hex(out_path.read_text())
    assert classify_function(f).is_five_valued
    assert wht(f) == -load_fixture("example1.spec.csv").payload


def test_build_pinned_form(capsys):
    code, out, _ = run(capsys, "build", "fixture:plateaued6.recipe.json")
    assert code == 0 and json.loads(out)["result"]["hex"] == "0123456789abcdef"


def test_build_non_bent(capsys):
    code, _, err = run(capsys, "build", "fixture:construction_one_bad.recipe.json")
    assert code == 3 and "g not bent" in err


def test_build_second_family_writes_four(capsys, tmp_path):
    stem = tmp_path / "q.tt.hex"
    code, out, _ = run(capsys, "build", "fixture:c2.recipe.json", "--out", str(stem))
    assert code == 0
    fs = [parse_truth_table_hex((tmp_path / f"q_{i}.tt.hex").read_text()) for i in range(1, 5)]
    assert classify_function(concatenate_4(fs, 32, 16)).is_bent
    assert "Bent" in out


def test_build_inline_recipe(capsys, tmp_path):
    r = tmp_path / "r.recipe.json"
    r.write_text(json.dumps({"op": "construct_plateaued", "support": {"points": [0, 1, 2, 3], "n": 3}, "dual": "1"}))
    code, out, _ = run(capsys, "build", str(r))
    # hex "1" is x1x2 on F2^2; on the flat {0} x F2^2 this gives x2x3
    assert code == 0 and json.loads(out)["result"]["anf"] == "x2x3"
    r.write_text(json.dumps({"op": "no_such_op"}))
    code, _, _ = run(capsys, "build", str(r))
    assert code == 2


def test_build_gmm_seeded(capsys):
    a = run(capsys, "build", "fixture:gmm_a.recipe.json", "--seed", "5")
    b = run(capsys, "build", "fixture:gmm_a.recipe.json", "--seed", "5")
    assert a[0] == 0 and a == b


def test_build_bad_json(capsys, tmp_path):
    r = tmp_path / "x.recipe.json"
    r.write_text("{not json")
    assert run(capsys, "build", str(r))[0] == 2


# -- decompose ----------------------------------------------------------------------


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "fixture:bent4.tt.hex", "--alpha", "1", "--beta", "2")
    rep = json.loads(out)
    assert code == 0 and rep["alpha"] == 1 and rep["beta"] == 2
    assert rep["kind"] == "Bent4" and rep["criteria"] == {"dual_sum_one": True}


def test_decompose_not_bent(capsys):
    code, _, err = run(capsys, "decompose", "fixture:example1.f.hex")
    assert code == 4


def test_decompose_all(capsys):
    code, out, _ = run(capsys, "decompose", "fixture:bent4.tt.hex", "--all")
    assert code == 0 and len(json.loads(out)) == 15 * 14


# -- certify and profile -----------------------------------------------------------


def test_certify(capsys, tmp_path):
    p = five_valued_profile(load_fixture("example1.spec.csv").payload)
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(DisjointPair(p.d1, p.d2).to_json()))
    code, out, _ = run(capsys, "certify", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["ok"]


def test_certify_overlap(capsys, tmp_path):
    g = parse_expression("x1x2", 2)
    pair = DisjointPair(
        DualFunction(OrderedSupport.from_offsets(4, 0, range(4)), g),
        DualFunction(OrderedSupport.from_offsets(4, 4, range(4)), g),
    )
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(pair.to_json()))
    code, out, _ = run(capsys, "certify", str(path))
    rep = json.loads(out)
    assert code == 0 and not rep["ok"] and rep["violation"] == "overlap" and rep["u"] == 0


def test_profile_support_with_dual(capsys):
    code, out, _ = run(capsys, "profile", "fixture:plateaued6.support.json", "--dual", "x1x3 + x2x4")
    rep = json.loads(out)
    assert code == 0 and rep["bent_distance"] is True and rep["m"] == 4


def test_profile_of_hex(capsys, tmp_path):
    p = tmp_path / "f.tt.hex"
    p.write_text(emit_truth_table_hex(load_fixture("plateaued6.tt.hex").payload))
    code, out, _ = run(capsys, "profile", str(p))
    assert code == 0 and json.loads(out)["m"] == 4


def test_no_subcommand(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
