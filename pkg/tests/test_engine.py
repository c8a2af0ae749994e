from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelements.constructions import alt, gl, psl2_perm, singer, sym
from pelements.elements import AutElt, Permutation
from pelements.engine import (
    CapExceeded,
    CosetSlice,
    NotMember,
    NotNormal,
    automorphism_group,
    center,
    closure,
    composition_factors,
    coset_p_elements,
    is_normal,
    normal_closure,
    quotient,
    verify_automorphism,
)


def perm(n: int, text: str) -> Permutation:
    return Permutation.parse(n, text)


def identity_aut(S) -> AutElt:
    return AutElt(list(range(S.order)))


def test_closure_examples():
    S3 = closure([perm(3, "(1 2)"), perm(3, "(1 2 3)")])
    assert S3.order == 6
    assert gl(2, 3).order == 48
    trivial = closure([], identity=Permutation(range(3)))
    assert trivial.order == 1 and trivial.elements[0].is_identity()


def test_closure_cap():
    with pytest.raises(CapExceeded):
        closure(sym(5).gens, cap=100)


def test_element_orders():
    assert perm(5, "()").order() == 1
    assert perm(5, "(1 2 3 4 5)").order() == 5
    assert singer(3, 2).order() == 7


def test_class_sizes():
    assert sorted(s for _, s in sym(3).conjugacy_classes()) == [1, 2, 3]
    assert sorted(s for _, s in alt(5).conjugacy_classes()) == [1, 12, 12, 15, 20]
    assert closure([], identity=Permutation(range(2))).conjugacy_classes() == [(0, 1)]


def test_class_representative_is_least_index():
    G = sym(4)
    for rep, _ in G.conjugacy_classes():
        cid = G.class_of(rep)
        assert rep == min(G.class_members(cid))


def test_centralizer_orders():
    A5 = alt(5)
    assert A5.centralizer_order(perm(5, "(1 2)(3 4)")) == 4
    assert A5.centralizer_order(A5.identity) == 60
    assert A5.centralizer_order(perm(5, "(1 2 3)")) == 3
    with pytest.raises(NotMember):
        A5.centralizer_order(perm(5, "(1 2)"))


def test_normal_closure_examples():
    S3 = sym(3)
    assert len(normal_closure(S3, [S3.idx(perm(3, "(1 2 3)"))])) == 3
    S4 = sym(4)
    assert len(normal_closure(S4, [S4.idx(perm(4, "(1 2)(3 4)"))])) == 4
    assert normal_closure(S4, [0]) == [0]


def test_quotients():
    S3 = sym(3)
    A3 = normal_closure(S3, [S3.idx(perm(3, "(1 2 3)"))])
    assert quotient(S3, A3).order == 2
    G = gl(2, 3)
    assert quotient(G, center(G)).order == 24
    assert quotient(G, range(G.order)).order == 1
    with pytest.raises(NotNormal):
        quotient(S3, [0, S3.idx(perm(3, "(1 2)"))])


def test_composition_factors():
    assert sorted(F.order for F in composition_factors(sym(5))) == [2, 60]
    assert sorted(F.order for F in composition_factors(sym(4))) == [2, 2, 2, 3]
    assert [F.order for F in composition_factors(alt(5))] == [60]


@pytest.mark.parametrize("S,cosets", [(lambda: alt(5), 2), (lambda: alt(6), 4), (lambda: psl2_perm(7), 2)])
def test_automorphism_cosets(S, cosets: int):
    G = S()
    aut = automorphism_group(G)
    assert aut.out_order == cosets
    assert all(verify_automorphism(G, gamma) for gamma in aut.outer)


def test_coset_streams_alt5():
    A5 = alt(5)
    aut = automorphism_group(A5)
    inner = identity_aut(A5)
    assert min(fixed for _, _, fixed in coset_p_elements(A5, inner, 5)) == 5
    outer = next(g for g in aut.outer if not all(g.perm[i] == i for i in range(A5.order)))
    assert list(coset_p_elements(A5, outer, 3)) == []
    stream2 = {s: fixed for s, _, fixed in coset_p_elements(A5, inner, 2)}
    assert stream2[0] == 60


def test_coset_slice():
    S5 = sym(5)
    A5 = alt(5)
    t = perm(5, "(1 2)")
    sl = list(CosetSlice(A5, t))
    assert len(sl) == A5.order
    assert all(x not in A5.index and x in S5.index for x in sl)


def test_class_equation_and_divisibility():
    for G in (sym(4), alt(5), gl(2, 3)):
        total = 0
        for rep, size in G.conjugacy_classes():
            assert G.order % size == 0
            assert size * G.centralizer_order(G.elements[rep]) == G.order
            total += size
        assert total == G.order


def test_closure_idempotent_and_deterministic():
    G = sym(4)
    again = closure(G.elements)
    assert again.order == G.order
    assert closure(G.gens).elements == G.elements
    assert closure(list(reversed(G.gens))).elements == G.elements


@settings(max_examples=20)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=3))
def test_random_generated_groups(images):
    G = closure([Permutation(img) for img in images])
    assert G.elements[0].is_identity()
    for x in G.elements[:10]:
        assert x.inverse() in G.index
        for y in G.gens:
            assert x * y in G.index
    assert sum(s for _, s in G.conjugacy_classes()) == G.order
    N = normal_closure(G, G.gen_indices()[:1] or [0])
    assert is_normal(G, N)
    assert quotient(G, N).order * len(N) == G.order
    orders = 1
    for F in composition_factors(G):
        orders *= F.order
    assert orders == G.order
