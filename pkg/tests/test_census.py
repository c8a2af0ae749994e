from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelements.census import (
    IncompatibleMultiplier,
    coset_census,
    count_pi_elements,
    exp_p_prime,
    o_p_prime_index,
    order_histogram,
    proportion_p,
)
from pelements.constructions import alt, cyclic, gl, sym
from pelements.elements import Permutation
from pelements.engine import closure

PRIMES = [2, 3, 5, 7]


def test_count_examples():
    r = count_pi_elements(sym(3), {2})
    assert (r.count, r.proportion) == (4, Fraction(2, 3))
    assert count_pi_elements(sym(4), {2, 3}).count == 24
    assert count_pi_elements(gl(2, 3), {3}).count == 9


def test_proportion_examples():
    assert proportion_p(gl(2, 2), 2) == Fraction(2, 3)
    assert proportion_p(gl(2, 3), 3) == Fraction(3, 16)
    assert Fraction(1, 9) <= Fraction(3, 16) <= Fraction(2, 9)
    trivial = closure([], identity=Permutation(range(1)))
    assert proportion_p(trivial, 5) == 1


def test_json_shape():
    data = count_pi_elements(sym(3), 2).to_json()
    assert data == {"order": 6, "primes": [2], "count": 4, "proportion": "2/3", "histogram": {"1": 1, "2": 3, "3": 2}}


def test_coset_census_examples():
    A5 = alt(5)
    assert coset_census(A5, Permutation.parse(5, "(1 2)"), 2) >= 10
    assert coset_census(A5, A5.identity, 3) == count_pi_elements(A5, 3).count
    A3 = alt(3)
    assert coset_census(A3, Permutation.parse(3, "(1 2)"), 3) == 0
    with pytest.raises(IncompatibleMultiplier):
        coset_census(closure([Permutation.parse(4, "(1 2)")]), Permutation.parse(4, "(1 3)"), 2)


def test_exp_and_index_examples():
    assert exp_p_prime(sym(4), 2) == 3
    assert exp_p_prime(alt(5), 5) == 6
    assert exp_p_prime(cyclic(8), 2) == 1
    assert o_p_prime_index(sym(3), 3) == 2
    assert o_p_prime_index(alt(5), 2) == 1
    assert o_p_prime_index(cyclic(15), 2) == 15


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_unipotent_count_gl2(q: int):
    p = {2: 2, 3: 3, 4: 2, 5: 5}[q]
    assert count_pi_elements(gl(2, q), p).count == q**2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_coset_sum_over_sym_alt_split(n: int, p: int):
    S, A = sym(n), alt(n)
    t = Permutation.parse(n, "(1 2)")
    split = coset_census(A, A.identity, p) + coset_census(A, t, p)
    assert split == count_pi_elements(S, p).count


@settings(max_examples=25)
@given(
    st.sampled_from(["sym4", "alt5", "gl23", "sym5"]),
    st.sets(st.sampled_from(PRIMES), min_size=1),
    st.sets(st.sampled_from(PRIMES), min_size=1),
)
def test_union_monotone(name, pi1, pi2):
    G = {"sym4": lambda: sym(4), "alt5": lambda: alt(5), "gl23": lambda: gl(2, 3), "sym5": lambda: sym(5)}[name]()
    both = count_pi_elements(G, pi1 | pi2)
    a, b = count_pi_elements(G, pi1), count_pi_elements(G, pi2)
    assert both.count >= max(a.count, b.count)
    assert 1 <= both.count <= G.order
    assert sum(order_histogram(G).values()) == G.order
