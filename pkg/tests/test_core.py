import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolspectra.core import (
    AnfPolynomial,
    BooleanFunction,
    WalshSpectrum,
    algebraic_degree,
    anf_to_truth_table,
    bent_distance_check,
    classify,
    correlation,
    hadamard_transform,
    hamming_distance,
    inverse_wht,
    resiliency_order,
    truth_table_to_anf,
    var_mask,
    wht,
    wht_many,
)
from boolspectra.errors import DimensionMismatch, NotAFunctionSpectrum, NotBooleanSpectrum
from boolspectra.expr import parse_expression
from boolspectra.io import load_fixture

from oracles import all_tables, naive_anf_to_table, naive_inverse, naive_table_to_anf, naive_wht


def tables(max_n=8, min_n=1):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n).map(
            lambda t: BooleanFunction(n, t)
        )
    )


# -- representation -----------------------------------------------------------


def test_bit_order_x1_is_msb():
    assert var_mask(3, 1) == 4 and var_mask(3, 3) == 1
    x1 = parse_expression("x1", 3)
    assert x1.table.tolist() == [0, 0, 0, 0, 1, 1, 1, 1]


def test_table_length_must_be_power_of_n():
    with pytest.raises(DimensionMismatch):
        BooleanFunction(3, [0, 1])


def test_function_is_immutable():
    f = BooleanFunction(2, [0, 0, 0, 1])
    with pytest.raises(ValueError):
        f.table[0] = 1
    with pytest.raises(AttributeError):
        f.n = 3


def test_xor_and_operators():
    a, b = parse_expression("x1", 2), parse_expression("x2", 2)
    assert (a & b).table.tolist() == [0, 0, 0, 1]
    assert (a ^ b).table.tolist() == [0, 1, 1, 0]
    assert (~a).table.tolist() == [1, 1, 0, 0]
    assert (a ^ 1) == ~a


# -- transforms ---------------------------------------------------------------


def test_wht_constant_zero():
    assert wht(BooleanFunction.zero(2)).values.tolist() == [4, 0, 0, 0]


def test_wht_x1x2():
    assert wht(BooleanFunction(2, [0, 0, 0, 1])).values.tolist() == [2, 2, 2, -2]


def test_wht_reference_anf_matches_printed_spectrum():
    f = parse_expression("1 + x1x6 + x2x3x6 + x4(x5 + x6)", 6)
    W = load_fixture("example1.spec.csv").payload
    assert wht(f) == W
    assert W.values[:8].tolist() == [-16, -16, -16, -16, -16, -16, 16, 16]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fast_equals_naive_exhaustive(n):
    T = all_tables(n)
    fast = wht_many(T)
    for t, w in zip(T, fast):
        assert w.tolist() == naive_wht(t)


def test_wht_many_matches_single():
    rng = np.random.default_rng(3)
    T = rng.integers(0, 2, size=(20, 1 << 7), dtype=np.uint8)
    W = wht_many(T)
    for t, w in zip(T, W):
        assert np.array_equal(wht(BooleanFunction(7, t)).values, w)


def test_hadamard_transform_rejects_non_power_of_two():
    with pytest.raises(DimensionMismatch):
        hadamard_transform([1, 2, 3])


def test_inverse_of_point_mass():
    assert inverse_wht(WalshSpectrum(2, [4, 0, 0, 0])) == BooleanFunction.zero(2)


def test_inverse_printed_spectrum_gives_reference_anf():
    f = inverse_wht(load_fixture("example1.spec.csv").payload)
    assert str(truth_table_to_anf(f)) == "1 + x1x6 + x4x5 + x4x6 + x2x3x6"


def test_inverse_rejects_non_boolean_spectrum():
    with pytest.raises(NotBooleanSpectrum) as e:
        inverse_wht(WalshSpectrum(2, [2, 2, 2, 2]))
    assert e.value.x == 0 and e.value.raw_sum == 8


def test_inverse_agrees_with_naive_on_random_spectra():
    rng = np.random.default_rng(7)
    for _ in range(200):
        W = WalshSpectrum(3, rng.choice([-8, -4, 0, 4, 8], size=8))
        expect = naive_inverse(W.values)
        try:
            got = inverse_wht(W).table.tolist()
        except NotBooleanSpectrum:
            got = None
        assert got == expect


# -- ANF ----------------------------------------------------------------------


def test_anf_empty_is_zero():
    assert anf_to_truth_table(AnfPolynomial(3, frozenset())) == BooleanFunction.zero(3)


def test_anf_single_monomial():
    assert anf_to_truth_table(AnfPolynomial(2, frozenset({3}))).table.tolist() == [0, 0, 0, 1]


def test_table_to_anf_examples():
    assert truth_table_to_anf(BooleanFunction(2, [0, 0, 0, 1])).monomials == {3}
    assert truth_table_to_anf(BooleanFunction.one(3)).monomials == {0}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_moebius_matches_naive_exhaustive(n):
    for t in all_tables(n):
        f = BooleanFunction(n, t)
        assert set(truth_table_to_anf(f).monomials) == naive_table_to_anf(t)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_anf_evaluation_matches_naive(arg):
    n, mons = arg
    assert anf_to_truth_table(AnfPolynomial(n, frozenset(mons))).table.tolist() == naive_anf_to_table(n, mons)


def test_degree():
    assert algebraic_degree(parse_expression("1 + x1x6 + x2x3x6 + x4x5", 6)) == 3
    assert algebraic_degree(BooleanFunction.one(3)) == 0


# -- classification -----------------------------------------------------------


def test_classify_bent():
    c = classify(wht(BooleanFunction(2, [0, 0, 0, 1])))
    assert c.is_bent and str(c) == "Bent"


def test_classify_two_plateaued_form():
    c = classify(wht(load_fixture("plateaued6.tt.hex").payload))
    assert c.is_plateaued and c.s == 2 and c.semi_bent
    assert c.support_sizes() == {16: 16}


def test_classify_five_valued_reference():
    c = classify(load_fixture("example1.spec.csv").payload)
    assert c.is_five_valued
    assert c.amplitudes == (8, 16) and c.exponents == (3, 4)


def test_classify_rejects_parseval_violation():
    with pytest.raises(NotAFunctionSpectrum):
        classify(WalshSpectrum(2, [4, 4, 0, 0]))


def test_parseval_alone_does_not_make_a_spectrum():
    # sum of squares is 16 = 2^(2n), yet the inverse leaves {+1, -1}
    W = WalshSpectrum(2, [2, 2, 2, 2])
    assert W.parseval_ok()
    with pytest.raises(NotBooleanSpectrum):
        inverse_wht(W)


def test_classify_other():
    f = parse_expression("x1x2x3", 3)
    assert classify(wht(f)).kind == "other"


@settings(max_examples=300)
@given(tables(max_n=7))
def test_plateaued_support_size(f):
    c = classify(wht(f))
    if c.is_plateaued:
        assert len(wht(f).support()) == 1 << (f.n - c.s)
    if c.is_bent:
        assert f.n % 2 == 0


# -- distances ----------------------------------------------------------------


def test_bent_distance_examples():
    f = BooleanFunction(2, [0, 0, 0, 1])
    assert not bent_distance_check(f, f)
    assert bent_distance_check(f, BooleanFunction.zero(2))


def test_bent_dual_at_bent_distance_to_all_linear():
    g = parse_expression("x1x3 + x2x4", 4)
    dists = {hamming_distance(g, BooleanFunction.linear(4, a)) for a in range(16)}
    assert dists <= {6, 10}
    assert all(bent_distance_check(g, BooleanFunction.linear(4, a)) for a in range(16))


def test_bent_distance_odd_n_is_false():
    assert not bent_distance_check(BooleanFunction.zero(3), parse_expression("x1x2", 3))


def test_distance_correlation_identity_exhaustive():
    for n in (1, 2, 3):
        T = all_tables(n)
        for a in T:
            for b in T[:: max(1, len(T) // 16)]:
                f, g = BooleanFunction(n, a), BooleanFunction(n, b)
                assert hamming_distance(f, g) == (1 << (n - 1)) - correlation(f, g) // 2


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hamming_distance(BooleanFunction.zero(2), BooleanFunction.zero(3))


# -- resiliency ---------------------------------------------------------------


def test_resiliency_linear_full_weight():
    assert resiliency_order(parse_expression("x1 + x2", 2)) == 1


def test_resiliency_unbalanced():
    assert resiliency_order(parse_expression("x1x2", 2)) == -1


def test_resiliency_matches_definition():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        f = BooleanFunction(n, rng.integers(0, 2, 1 << n))
        W = naive_wht(f.table)
        m = -1
        while all(W[w] == 0 for w in range(1 << n) if bin(w).count("1") <= m + 1):
            m += 1
        assert resiliency_order(f) == m


# -- properties ---------------------------------------------------------------


@settings(max_examples=200)
@given(tables(max_n=10))
def test_parseval(f):
    assert int(np.sum(wht(f).values ** 2)) == 1 << (2 * f.n)


@settings(max_examples=200)
@given(tables(max_n=10))
def test_inverse_round_trip(f):
    assert inverse_wht(wht(f)) == f


@settings(max_examples=200)
@given(tables(max_n=10))
def test_moebius_round_trip(f):
    assert anf_to_truth_table(truth_table_to_anf(f)) == f


@settings(max_examples=100)
@given(tables(max_n=8))
def test_spectrum_values_even(f):
    assert (wht(f).values % 2 == 0).all()
