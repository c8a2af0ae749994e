from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelements.census import count_pi_elements
from pelements.constructions import alt, cyclic, direct_product, psl2_perm, sym
from pelements.elements import Permutation
from pelements.engine import closure
from pelements.mp import coset_minima, lemma22_coset_count, mp_abelian, mp_group, mp_simple, verify_cor23


def perm(n: int, text: str) -> Permutation:
    return Permutation.parse(n, text)


def test_mp_abelian():
    assert mp_abelian(3, 2) == 3
    assert mp_abelian(2, 2) == 1
    assert mp_abelian(7, 3) == 7
    with pytest.raises(ValueError):
        mp_abelian(4, 2)


@pytest.mark.parametrize(
    "build,p,value",
    [
        (lambda: alt(5), 2, 4),
        (lambda: alt(5), 3, 3),
        (lambda: alt(5), 5, 5),
        (lambda: psl2_perm(11), 2, 12),
        (lambda: psl2_perm(11), 3, 6),
        (lambda: psl2_perm(11), 5, 5),
        (lambda: alt(6), 2, 4),
    ],
)
def test_mp_simple_quoted_values(build, p: int, value: int):
    assert mp_simple(build(), p) == value


def test_witnesses_bound_the_value():
    S = alt(6)
    witnesses = [w for w in coset_minima(S, 3) if w is not None]
    value = mp_simple(S, 3)
    assert max(w.fixed for w in witnesses) == value
    for w in witnesses:
        assert S.order % w.fixed == 0


def test_mp_group_examples():
    assert mp_group(sym(5), 2).value == 4
    assert mp_group(cyclic(8), 2).value == 1
    r = mp_group(sym(4), 2)
    assert r.value == 3
    assert sorted(f.value for f in r.factors) == [1, 1, 1, 3]


def test_report_json():
    data = mp_group(sym(5), 2).to_json()
    assert data["mp"] == 4
    assert sorted(f["order"] for f in data["factors"]) == [2, 60]
    assert all(set(w) == {"coset", "element", "order", "centralizer"} for f in data["factors"] for w in f["witnesses"])


def test_cor23_examples():
    assert verify_cor23(sym(5), 2)
    A5 = alt(5)
    assert count_pi_elements(A5, 5).count == 25
    assert verify_cor23(A5, 5)
    assert verify_cor23(closure([], identity=Permutation(range(1))), 3)


def test_lemma22_alt5():
    A5 = alt(5)
    e = A5.identity
    direct, factored = lemma22_coset_count(A5, 2, [e, e], 2)
    assert direct == factored == 960
    assert factored >= 15**2
    g = perm(5, "(1 2)")
    assert lemma22_coset_count(A5, 2, [g, g.inverse()], 2) == (960, 960)


def test_lemma22_twisted():
    A5 = alt(5)
    g = perm(5, "(1 2)")
    direct, factored = lemma22_coset_count(A5, 2, [g, A5.identity], 2)
    assert direct == factored
    with pytest.raises(ValueError):
        lemma22_coset_count(A5, 3, [g, g, g], 2)


def test_regeneration_invariance():
    A5 = alt(5)
    other = closure([perm(5, "(1 2 3)"), perm(5, "(3 4 5)"), perm(5, "(1 2)(4 5)")])
    assert other.order == 60 and other.elements != A5.elements
    for p in (2, 3, 5):
        assert mp_simple(other, p) == mp_simple(A5, p)


@settings(max_examples=10)
@given(
    st.sampled_from(["sym3", "sym4", "alt4", "c6", "alt5"]),
    st.sampled_from(["sym3", "c4", "c5", "alt4"]),
    st.sampled_from([2, 3, 5]),
)
def test_direct_product_multiplicative(a, b, p):
    groups = {
        "sym3": lambda: sym(3),
        "sym4": lambda: sym(4),
        "alt4": lambda: alt(4),
        "c6": lambda: cyclic(6),
        "c4": lambda: cyclic(4),
        "c5": lambda: cyclic(5),
        "alt5": lambda: alt(5),
    }
    G, H = groups[a](), groups[b]()
    D = direct_product(G, H)
    assert D.order == G.order * H.order
    assert mp_group(D, p).value == mp_group(G, p).value * mp_group(H, p).value
    assert verify_cor23(D, p)
