from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pelements.gf import (
    FieldDivisionByZero,
    NotPrime,
    TooLarge,
    fe,
    fe_add,
    fe_inv,
    fe_mul,
    fe_pow,
    make_field,
    multiplicative_order,
    parse_field_header,
    primitive_element,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (2, 4), (11, 1), (13, 1)]


def naive_root_order(p: int, mod: tuple[int, ...]) -> int | None:
    """Order of x modulo ``mod`` over GF(p) by repeated multiplication; None if x^k never returns to 1."""
    f = len(mod) - 1
    one = [1] + [0] * (f - 1)
    cur = list(one)
    for k in range(1, p**f):
        shifted = [0] + cur
        top = shifted[f]
        cur = [(shifted[i] - top * mod[i]) % p for i in range(f)]
        if cur == one:
            return k
    return None


def test_gf4_modulus():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_prime_field_modulus_placeholder():
    F = make_field(3, 1)
    assert F.q == 3 and F.modulus == (0, 1)


def test_gf9_modulus_is_least_primitive():
    # monic quadratics x^2 + b x + c, ordered lexicographically from the constant term
    expected = next(
        (c, b, 1) for c, b in itertools.product(range(3), repeat=2) if naive_root_order(3, (c, b, 1)) == 8
    )
    assert make_field(3, 2).modulus == expected


@pytest.mark.parametrize("p,f", [(2, 3), (2, 4), (5, 2), (3, 3)])
def test_modulus_is_primitive_by_naive_order(p: int, f: int):
    F = make_field(p, f)
    assert naive_root_order(p, F.modulus) == p**f - 1


def test_small_arithmetic():
    F7 = make_field(7)
    assert fe_inv(fe(F7, 3)).value == 5
    F4 = make_field(2, 2)
    x = fe(F4, 2)
    assert fe_mul(x, x).coeffs == (1, 1)
    assert fe_add(x, fe(F4, 0)) == x


def test_primitive_elements():
    assert primitive_element(make_field(2)).value == 1
    assert primitive_element(make_field(7)).value == 3
    F4 = make_field(2, 2)
    assert primitive_element(F4).coeffs == (0, 1)


def test_errors():
    with pytest.raises(NotPrime):
        make_field(6)
    with pytest.raises(TooLarge):
        make_field(2, 40)
    with pytest.raises(FieldDivisionByZero):
        fe_inv(fe(make_field(5), 0))


def test_header_round_trip():
    F = make_field(3, 2)
    assert F.header().startswith("GF 3 2 ")
    assert parse_field_header(F.header()) == F


@given(st.sampled_from(FIELDS), st.data())
def test_fermat_and_frobenius(pf, data):
    F = make_field(*pf)
    a = data.draw(st.integers(min_value=0, max_value=F.q - 1))
    if a:
        assert F.pow(a, F.q - 1) == 1
    y = a
    for _ in range(F.f):
        y = F.pow(y, F.p)
    assert y == a


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pf, data):
    F = make_field(*pf)
    a, b, c = (fe(F, data.draw(st.integers(min_value=0, max_value=F.q - 1))) for _ in range(3))
    assert fe_mul(a, fe_add(b, c)) == fe_add(fe_mul(a, b), fe_mul(a, c))
    assert fe_mul(a, b) == fe_mul(b, a)
    if a.value:
        assert fe_mul(a, fe_inv(a)).value == 1
        assert fe_pow(a, -1) == fe_inv(a)


@pytest.mark.parametrize("p,f", FIELDS)
def test_primitive_element_order(p: int, f: int):
    F = make_field(p, f)
    g = primitive_element(F).value
    assert multiplicative_order(F, g) == F.q - 1
    powers = {F.pow(g, k) for k in range(F.q - 1)}
    assert len(powers) == F.q - 1
