import json
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolspectra.core import BooleanFunction, WalshSpectrum, wht
from boolspectra.errors import BadDigit, BadLength, BadRow, ParsevalWarning
from boolspectra.expr import parse_expression
from boolspectra.io import (
    KINDS,
    emit_dual_json,
    emit_spectrum_csv,
    emit_support_json,
    emit_truth_table_hex,
    function_from_json,
    function_to_json,
    list_fixtures,
    load_fixture,
    load_path,
    parse_dual_json,
    parse_spectrum_csv,
    parse_support_json,
    parse_truth_table_hex,
    spectrum_from_json,
    spectrum_to_json,
)
from boolspectra.support import DualFunction, OrderedSupport


def functions(min_n=2, max_n=10):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n).map(
            lambda t: BooleanFunction(n, t)
        )
    )


# -- hex truth tables -------------------------------------------------------------


def test_single_digit():
    assert parse_truth_table_hex("8").table.tolist() == [1, 0, 0, 0]


def test_last_bit():
    f = parse_truth_table_hex("0001")
    assert f.n == 4 and f.table.nonzero()[0].tolist() == [15]


def test_prefix_whitespace_and_case():
    assert parse_truth_table_hex("0xAB cd\n") == parse_truth_table_hex("abcd")


@pytest.mark.parametrize("bad,err", [("", BadLength), ("abc", BadLength), ("0g", BadDigit), ("12-4", BadDigit)])
def test_hex_errors(bad, err):
    with pytest.raises(err):
        parse_truth_table_hex(bad)


def test_emit_needs_two_variables():
    with pytest.raises(BadLength):
        emit_truth_table_hex(BooleanFunction(1, [0, 1]))


@settings(max_examples=200)
@given(functions())
def test_hex_round_trip(f):
    assert parse_truth_table_hex(emit_truth_table_hex(f)) == f


def test_reference_function_fixture():
    f = load_fixture("example1.f.hex").payload
    assert f == parse_expression("1 + x1x6 + x2x3x6 + x4(x5 + x6)", 6)
    assert wht(f) == load_fixture("example1.spec.csv").payload


# -- function json ------------------------------------------------------------------


@settings(max_examples=100)
@given(functions(min_n=0, max_n=8))
def test_function_json_round_trip(f):
    assert function_from_json(json.loads(json.dumps(function_to_json(f)))) == f


def test_function_json_forms():
    assert function_from_json({"n": 2, "anf": "x1x2"}).table.tolist() == [0, 0, 0, 1]
    assert function_from_json({"bits": [0, 1]}) == function_from_json({"bits": "01"})
    assert function_to_json(BooleanFunction(1, [0, 1])) == {"n": 1, "bits": "01"}
    with pytest.raises(BadRow):
        function_from_json({"n": 2})
    with pytest.raises(BadLength):
        function_from_json({"n": 3, "hex": "8"})
    with pytest.raises(BadLength):
        function_from_json({"bits": [0, 1, 1]})
    with pytest.raises(BadDigit):
        function_from_json({"bits": [0, 2]})


# -- spectra ----------------------------------------------------------------------


def test_point_mass_csv():
    text = emit_spectrum_csv(WalshSpectrum(2, [4, 0, 0, 0]))
    lines = text.strip().splitlines()
    assert lines[0] == "omega,value" and len(lines) == 5
    assert lines[1] == "0,4"


def test_reference_spectrum_round_trip():
    W = load_fixture("example1.spec.csv").payload
    assert W.n == 6 and len(W.values) == 64
    assert parse_spectrum_csv(emit_spectrum_csv(W)) == W


@settings(max_examples=200)
@given(functions(min_n=1, max_n=8))
def test_spectrum_csv_round_trip(f):
    W = wht(f)
    assert parse_spectrum_csv(emit_spectrum_csv(W)) == W
    assert spectrum_from_json(spectrum_to_json(W)) == W


def test_non_integer_value():
    with pytest.raises(BadRow):
        parse_spectrum_csv("omega,value\n0,4.5\n1,0\n")


@pytest.mark.parametrize(
    "text",
    ["0,4\n1,0\n", "omega,value\n0,4\n0,0\n", "omega,value\n0,4,1\n1,0\n", "omega,value\n0,4\n5,0\n"],
)
def test_csv_row_errors(text):
    with pytest.raises(BadRow):
        parse_spectrum_csv(text)


def test_csv_length_error():
    with pytest.raises(BadLength):
        parse_spectrum_csv("omega,value\n0,4\n1,0\n2,0\n")


def test_parseval_warning_keeps_value():
    with pytest.warns(ParsevalWarning):
        W = parse_spectrum_csv("omega,value\n0,2\n1,0\n2,0\n3,0\n")
    assert W.values.tolist() == [2, 0, 0, 0]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_spectrum_csv(emit_spectrum_csv(WalshSpectrum(2, [2, 2, 2, -2])))


def test_spectrum_json_errors():
    with pytest.raises(BadLength):
        spectrum_from_json([1, 2, 3])
    with pytest.raises(BadRow):
        spectrum_from_json([1.5, 0])


# -- supports and duals -------------------------------------------------------------


@settings(max_examples=100)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), min_size=1))))
def test_support_json_round_trip(arg):
    n, pts = arg
    rng = np.random.default_rng(len(pts))
    seq = rng.permutation(sorted(pts)).tolist()
    s = OrderedSupport.from_sequence(n, seq)
    assert parse_support_json(emit_support_json(s)) == s


def test_dual_json_round_trip():
    s = OrderedSupport.from_sequence(5, [17, 21, 26, 30])
    d = DualFunction(s, parse_expression("x1x2", 2))
    assert parse_dual_json(emit_dual_json(d)) == d


# -- fixtures -----------------------------------------------------------------------


def test_every_fixture_parses():
    names = list_fixtures()
    assert "example1.spec.csv" in names and "plateaued6.tt.hex" in names
    for name, origin in names.items():
        fx = load_fixture(name)
        assert fx.kind in KINDS.values()
        assert fx.origin == origin and origin


def test_load_path_by_extension(tmp_path):
    p = tmp_path / "x.tt.hex"
    p.write_text("8\n")
    assert load_path(p).table.tolist() == [1, 0, 0, 0]
    q = tmp_path / "x.txt"
    q.write_text("8")
    with pytest.raises(BadRow):
        load_path(q)
