from __future__ import annotations

from pathlib import Path

import pytest

from pelements.bounds import h_p, i_bound, thmC_bound
from pelements.census import count_pi_elements
from pelements.constructions import (
    Unsupported,
    alt,
    cyclic,
    direct_product,
    extremal_case_matches,
    extremal_expected_order,
    extremal_linear,
    extremal_perm,
    gamma_l1,
    gl,
    hall_pprime_gamma_l1,
    is_irreducible,
    is_p_prime_group,
    normalizer_in,
    normalizer_subgroup,
    q8_in_gl2,
    singer,
    sl,
    sym,
    trivial_perm,
    two_alt5_in_sl2,
    with_scalars,
    wreath_mat,
    wreath_perm,
)
from pelements.engine import CapExceeded, composition_factors
from pelements.serialize import dumps

FIXTURES = Path(__file__).parent / "fixtures"


def test_wreath_perm_examples():
    C3 = cyclic(3)
    W = wreath_perm(C3, C3)
    assert W.order == 81 and W.identity.degree == 9
    S2 = sym(2)
    D8 = wreath_perm(S2, S2)
    assert D8.order == 8 and D8.identity.degree == 4
    assert wreath_perm(sym(3), trivial_perm()).order == 6


@pytest.mark.parametrize("p,k,degree", [(2, 1, 3), (2, 2, 9), (3, 1, 5), (5, 1, 4), (7, 1, 6)])
def test_extremal_perm_orders(p: int, k: int, degree: int):
    G = extremal_perm(p, k)
    assert G.identity.degree == degree
    assert G.order == h_p(p, degree)
    assert is_p_prime_group(G, p)
    assert count_pi_elements(G, p).count == 1


def test_extremal_perm_cap():
    with pytest.raises(CapExceeded):
        extremal_perm(3, 2)


def test_linear_families():
    assert gl(2, 3).order == 48
    assert gl(1, 7).order == 6
    assert sl(2, 5).order == 120
    assert singer(3, 2).order() == 7
    assert singer(2, 9).order() == 80


@pytest.mark.parametrize("n,q", [(3, 2), (2, 9), (2, 4), (3, 3), (4, 2), (2, 5)])
def test_semilinear_orders(n: int, q: int):
    p = next(r for r in range(2, q + 1) if q % r == 0)
    assert gamma_l1(n, q).order == n * (q**n - 1)
    H = hall_pprime_gamma_l1(n, q)
    assert H.order == thmC_bound(n, q, p)
    assert is_p_prime_group(H, p)


def test_hall_examples():
    assert hall_pprime_gamma_l1(3, 2).order == 21
    assert hall_pprime_gamma_l1(2, 9).order == 160 == i_bound(2, 9)


def test_wreath_mat_examples():
    for q in (3, 4, 5):
        assert wreath_mat(gl(1, q), sym(2)).order == (q - 1) ** 2 * 2
    assert wreath_mat(gl(2, 3), trivial_perm()).order == 48
    assert wreath_mat(gl(1, 5), extremal_perm(5, 1)).order == 4**4 * 24


def test_q8_and_normalizers():
    Q = q8_in_gl2(5)
    assert Q.order == 8
    involutions = [x for x in Q.elements if x.order() == 2]
    assert len(involutions) == 1
    G5 = gl(2, 5)
    assert len(normalizer_in(G5, [G5.idx(x) for x in Q.elements])) == 96
    assert normalizer_subgroup(gl(2, 7), q8_in_gl2(7)).order == 144
    S4 = sym(4)
    assert normalizer_in(S4, range(S4.order)) == list(range(S4.order))


def test_two_alt5():
    R = two_alt5_in_sl2(11)
    assert R.order == 120
    assert with_scalars(R).order == 600
    assert sorted(F.order for F in composition_factors(R)) == [2, 60]


@pytest.mark.parametrize(
    "name,build",
    [
        ("q8_gl2_5.grp", lambda: q8_in_gl2(5)),
        ("q8_gl2_7.grp", lambda: q8_in_gl2(7)),
        ("two_alt5_sl2_11.grp", lambda: two_alt5_in_sl2(11)),
        ("two_alt5_sl2_19.grp", lambda: two_alt5_in_sl2(19)),
    ],
)
def test_fixtures_reproduce(name: str, build):
    text = (FIXTURES / name).read_text()
    body = "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))
    assert body == dumps(build())


def test_irreducibility():
    assert is_irreducible(gamma_l1(3, 2))
    assert is_irreducible(gl(2, 3))
    assert not is_irreducible(direct_product(gl(1, 5), gl(1, 5)))


@pytest.mark.parametrize("q", [2, 5, 7, 9, 11, 13, 17])
def test_extremal_linear_base_level(q: int):
    G = extremal_linear(q, 0)
    p = next(r for r in range(2, q + 1) if q % r == 0)
    assert is_p_prime_group(G, p)
    assert is_irreducible(G)
    assert extremal_case_matches(q)
    assert G.order == extremal_expected_order(q, 0)


def test_extremal_linear_examples():
    assert extremal_linear(2, 0).order == 21 == i_bound(3, 2)
    assert extremal_linear(9, 0).order == 160 == i_bound(2, 9)
    G = extremal_linear(2, 1)
    assert G.order == 21**3 * 3 == i_bound(9, 2)
    with pytest.raises(Unsupported):
        extremal_linear(3, 0)
    with pytest.raises(CapExceeded):
        extremal_linear(13, 1)
    assert not extremal_case_matches(4)


def test_alt_sym_orders():
    assert alt(6).order == 360
    assert sym(5).order == 120
