from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pelements.bounds import (
    HypothesisViolated,
    NoSuchRow,
    NotPrimePower,
    StrangeItem,
    UnsupportedCase,
    Verdict,
    alt_small_centralizer_element,
    base_p_expansion,
    check_bothcases,
    check_lemma_basep,
    check_lemma_basepbound,
    check_lemma_parity,
    check_mtbound,
    check_mtbound_extra,
    check_strange,
    f_bound,
    h_p,
    i_bound,
    lie_centralizer_cap,
    p_prime_part,
    perm_simple_check,
    rep_simple_out_check,
    steinberg_count,
    sym_centralizer_order,
    table1_lookup,
    table4_lookup,
    thmC_bound,
    thmD_bound,
    thmD_check,
    x_p_element,
)
from pelements.constructions import alt, sym
from pelements.exact import eb_from_integer, eb_root_power


def test_base_p_expansion_examples():
    assert base_p_expansion(10, 3).terms == ((1, 0), (1, 2))
    assert base_p_expansion(7, 2).terms == ((1, 0), (1, 1), (1, 2))
    assert base_p_expansion(12, 5).terms == ((2, 0), (2, 1))


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7, 11, 97]))
def test_base_p_expansion_reconstructs(n, p):
    e = base_p_expansion(n, p)
    assert e.n == n
    assert all(0 < a < p for a, _ in e.terms)


def test_h_p_examples():
    assert h_p(2, 9) == 81
    assert all(h_p(p, 1) == 1 for p in (2, 3, 5, 7))
    assert h_p(5, 6) == eb_root_power(24, Fraction(5, 3))
    assert h_p(3, 5) == 20


def test_f_and_i_examples():
    assert f_bound(1, 13) == 12
    assert i_bound(4, 3) == 640
    assert f_bound(3, 2) == 21
    assert i_bound(2, 9) == 160
    with pytest.raises(NotPrimePower):
        f_bound(2, 6)


def test_thmC_examples():
    assert thmC_bound(3, 2, 2) == 21
    assert thmC_bound(2, 9, 3) == 160
    assert p_prime_part(12, 2) == 3
    assert steinberg_count(2, 3) == 9


def test_table_lookups():
    assert table1_lookup("(q−1)∘2^{1+2}.Sp_2(2)", 2, 5) == 96
    assert table1_lookup("(q-1)∘2.Alt_5", 2, 19) == 1140
    assert table4_lookup("Alt_5", 2, 19) == 60
    assert table4_lookup("2^4.Sp_4(2)", 4, 13) == 11520
    with pytest.raises(NoSuchRow):
        table4_lookup("Alt_5", 2, 7)


def test_lie_caps():
    q = 9
    assert lie_centralizer_cap("G2", 3, q, 2) == 3 * q**2
    assert lie_centralizer_cap("²B₂", 2, 8, 1) == 16
    assert lie_centralizer_cap("PSL", 5, 25, 3) == 25**3


def test_x_p_element_examples():
    assert x_p_element(10, 3).cycle_type() == [1, 9]
    assert sym_centralizer_order(base_p_expansion(10, 3)) == 9
    assert x_p_element(4, 2).cycle_type() == [4]
    assert sym_centralizer_order(base_p_expansion(4, 2)) == 4
    assert x_p_element(6, 5).cycle_type() == [1, 5]
    assert sym_centralizer_order(base_p_expansion(6, 5)) == 5


def centralizer_count(G, x) -> int:
    """|C_G(x)| by direct scan, independent of the class machinery."""
    return sum(1 for g in G.elements if g * x == x * g)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sym_centralizer_matches_engine(n: int, p: int):
    S = sym(n)
    x = x_p_element(n, p)
    assert sym_centralizer_order(base_p_expansion(n, p)) == S.centralizer_order(x)


@pytest.mark.parametrize("n", [9, 10])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sym_centralizer_matches_cycle_count(n: int, p: int):
    # Sym_9 and Sym_10 exceed the enumeration cap; count the class of x_p(n) instead.
    lengths = x_p_element(n, p).cycle_type()
    counts = {c: lengths.count(c) for c in set(lengths)}
    class_size = math.factorial(n) // math.prod(math.factorial(k) * c**k for c, k in counts.items())
    assert sym_centralizer_order(base_p_expansion(n, p)) == math.factorial(n) // class_size


def test_alt_small_centralizer_examples():
    A5 = alt(5)
    y = alt_small_centralizer_element(5, 2, 0)
    assert y.cycle_type() == [1, 2, 2]
    assert centralizer_count(A5, y) == 4
    assert eb_from_integer(4) <= eb_root_power(2, Fraction(5, 2))
    A8 = alt(8)
    y = alt_small_centralizer_element(8, 2, 0)
    assert y.is_even() and centralizer_count(A8, y) <= 16
    # the 8-cycle x_2(8) is odd, so it cannot serve the even coset
    assert not x_p_element(8, 2).is_even()
    with pytest.raises(UnsupportedCase):
        alt_small_centralizer_element(6, 2, 0)


def test_alt7_odd_coset_minimum():
    # odd 2-elements of Sym_7 and their centralizers in Alt_7; the least is 12 > 2^{7/2}
    A7 = alt(7)
    S7 = sym(7)
    odd = [x for x in S7.elements if not x.is_even() and x.order() in (2, 4)]
    best = min(centralizer_count(A7, x) for x in {tuple(x.cycle_type()): x for x in odd}.values())
    assert best == 12
    y = alt_small_centralizer_element(7, 2, 1)
    assert centralizer_count(A7, y) == 12
    assert eb_from_integer(12) > eb_root_power(2, Fraction(7, 2))


def test_digit_lemma_examples():
    assert check_lemma_basep(10, 3) == (True, None)
    assert check_lemma_parity(13) == 1
    assert check_lemma_parity(10) == 2
    assert check_lemma_basepbound(6, 5) == (True, True)


def test_parity_at_multiples_of_four():
    # 12 = 1100b; 11 = 1011b has three ones against two, so m = 1 already flips parity
    assert check_lemma_parity(12) == 1
    assert check_lemma_parity(4) == 1
    assert check_lemma_parity(6) == 2


def test_basep_part_i_small_counterexample():
    # n = 2p - 3 at p = 5: digits (2,0),(1,1) give 2*(2 + 0 + 1 + 1) = 8 > 7
    assert base_p_expansion(7, 5).terms == ((2, 0), (1, 1))
    assert check_lemma_basep(7, 5) == (False, None)


def test_hypothesis_violations():
    with pytest.raises(HypothesisViolated):
        check_lemma_basep(2, 3)
    with pytest.raises(HypothesisViolated):
        check_lemma_basepbound(5, 3)
    with pytest.raises(HypothesisViolated):
        check_mtbound("iii", 4, 1, 3)


def test_bothcases_examples():
    assert check_bothcases(5, 2, 2) is False
    assert check_bothcases(3, 2, 3) is True
    # (q, s, t) = (2, 2, 3): 3^3 * 4 = 108 against 2^8 - 1 = 255
    assert check_bothcases(2, 2, 3) is True


def test_mtbound_examples():
    assert check_mtbound("vii", 4, 1, 13)
    assert check_mtbound_extra(13, 4)
    assert check_mtbound("i", 3, 2, 2)


def test_order_checks():
    assert perm_simple_check(60, 5) is Verdict.TRUE
    assert rep_simple_out_check(12, 4) is True
    assert rep_simple_out_check(13, 4) is False
    assert thmD_bound(4) == 2**10
    assert thmD_check(2**10, 4) is Verdict.TRUE
    assert thmD_check(2**10 + 1, 4) is Verdict.FALSE
    assert thmD_check(20160, 8) is Verdict.TRUE


def test_strange_validation():
    # generic M at (d, q) = (2, 7) is 2 * 48 / 6 = 16; 6 * 16 * 16 = 1536 <= 4 * 2400
    assert check_strange(7, [StrangeItem(16, 2), StrangeItem(16, 2)])
    assert check_strange(7, [StrangeItem(16, 2), StrangeItem(24, 2, 2)])
    with pytest.raises(HypothesisViolated):
        check_strange(7, [StrangeItem(9, 2)])
    with pytest.raises(HypothesisViolated):
        check_strange(7, [StrangeItem(24, 2, 2), StrangeItem(24, 2, 2)])


positive_rationals = st.fractions(min_value=Fraction(1, 8), max_value=40, max_denominator=12)


@given(st.sampled_from([2, 3, 5, 7, 11]), positive_rationals, positive_rationals)
def test_h_p_supermultiplicative(p, a, b):
    assert h_p(p, a) * h_p(p, b) <= h_p(p, a + b)


def _i_row_key(n: int, q: int) -> tuple:
    return (q == 3 and n % 4 != 0, q in (5, 7, 11) and n % 2 == 1)


@given(
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=1, max_value=30),
    st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]),
)
def test_i_submultiplicative_where_rows_agree(r, s, q):
    if len({_i_row_key(r, q), _i_row_key(s, q), _i_row_key(r + s, q)}) == 1:
        assert i_bound(r, q) * i_bound(s, q) <= i_bound(r + s, q)


@given(st.integers(min_value=1, max_value=64), st.sampled_from([2, 3, 4, 5, 7, 9, 11, 13, 17, 19, 27, 49, 125]))
def test_i_at_most_f(n, q):
    assert i_bound(n, q) <= f_bound(n, q)
