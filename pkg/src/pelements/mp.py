"""The M_p invariant: brute force on simple groups, products over composition factors."""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Any, Sequence

from .arith import is_p_power, is_prime
from .census import coset_census, count_pi_elements
from .elements import Permutation
from .engine import (
    DEFAULT_AUT_CAP,
    DEFAULT_CAP,
    AutomorphismData,
    CapExceeded,
    FiniteGroup,
    automorphism_group,
    composition_factors,
    twisted_classes,
)


def mp_abelian(r: int, p: int) -> int:
    if not is_prime(r):
        raise ValueError(f"{r} is not prime")
    return 1 if r == p else r


@dataclass(frozen=True)
class Witness:
    """Minimizing element of one Inn-coset: x_s = gamma then conjugation by s."""

    coset: int
    element: int
    order: int
    fixed: int


@dataclass(frozen=True)
class FactorReport:
    order: int
    value: int
    witnesses: tuple[Witness, ...] = ()
    group: FiniteGroup | None = field(default=None, compare=False, repr=False)


@dataclass
class MpReport:
    description: str
    p: int
    value: int
    factors: list[FactorReport] = field(default_factory=list)

    def to_json(self, group_elements: Sequence[Any] | None = None) -> dict[str, Any]:
        return {
            "group": self.description,
            "p": self.p,
            "mp": self.value,
            "factors": [
                {
                    "order": f.order,
                    "mp": f.value,
                    "witnesses": [
                        {"coset": w.coset, "element": w.element, "order": w.order, "centralizer": w.fixed}
                        for w in f.witnesses
                    ],
                }
                for f in self.factors
            ],
        }


_AUT_CACHE: "weakref.WeakKeyDictionary[FiniteGroup, AutomorphismData]" = weakref.WeakKeyDictionary()


def cached_automorphisms(S: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> AutomorphismData:
    data = _AUT_CACHE.get(S)
    if data is None:
        data = automorphism_group(S, aut_cap)
        _AUT_CACHE[S] = data
    return data


def coset_minima(S: FiniteGroup, p: int, aut_cap: int = DEFAULT_AUT_CAP) -> list[Witness | None]:
    """Per Inn-coset, the p-element with fewest fixed points (None if the coset has none)."""
    aut = cached_automorphisms(S, aut_cap)
    out: list[Witness | None] = []
    for k, gamma in enumerate(aut.outer):
        classes, _ = twisted_classes(S, gamma)
        best: Witness | None = None
        for c in classes:
            if is_p_power(c.order, p) and (best is None or c.fixed < best.fixed):
                best = Witness(k, c.rep, c.order, c.fixed)
        out.append(best)
    return out


def mp_simple_report(S: FiniteGroup, p: int, aut_cap: int = DEFAULT_AUT_CAP) -> FactorReport:
    witnesses = tuple(w for w in coset_minima(S, p, aut_cap) if w is not None)
    return FactorReport(S.order, max(w.fixed for w in witnesses), witnesses, S)


def mp_simple(S: FiniteGroup, p: int, aut_cap: int = DEFAULT_AUT_CAP) -> int:
    """Max over eligible Inn-cosets of the least centralizer order of a p-element."""
    return mp_simple_report(S, p, aut_cap).value


def mp_group(
    G: FiniteGroup,
    p: int,
    cap: int = DEFAULT_CAP,
    aut_cap: int = DEFAULT_AUT_CAP,
) -> MpReport:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    factors: list[FactorReport] = []
    for F in composition_factors(G, cap):
        if is_prime(F.order):
            factors.append(FactorReport(F.order, mp_abelian(F.order, p)))
        else:
            if F.order > aut_cap:
                raise CapExceeded(aut_cap, "automorphism search")
            factors.append(mp_simple_report(F, p, aut_cap))
    value = 1
    for f in factors:
        value *= f.value
    return MpReport(G.label or repr(G), p, value, factors)


def verify_cor23(G: FiniteGroup, p: int, aut_cap: int = DEFAULT_AUT_CAP) -> bool:
    """|Ord(G, p)| * M_p(G) >= |G|."""
    return count_pi_elements(G, p).count * mp_group(G, p, aut_cap=aut_cap).value >= G.order


# --- the t-cycle coset count ------------------------------------------------------


def _wreath_element(parts: Sequence[Permutation], deg: int) -> Permutation:
    """(y_1, ..., y_t) followed by the block shift i -> i+1 (mod t) on t*deg points."""
    t = len(parts)
    img = [0] * (t * deg)
    for i, y in enumerate(parts):
        dest = ((i + 1) % t) * deg
        for k in range(deg):
            img[i * deg + k] = dest + y.img[k]
    return Permutation(img)


DIRECT_LIMIT = 10**7


def lemma22_coset_count(
    S: FiniteGroup,
    t: int,
    twists: Sequence[Permutation],
    p: int,
) -> tuple[int | None, int]:
    """(direct, factored) p-element counts in the coset S^t (x_1, ..., x_t) sigma.

    ``direct`` streams every tuple; it is None when |S|^t exceeds DIRECT_LIMIT.
    ``factored`` uses the order formula: |S|^{t-1} times the count in S x_1...x_t.
    """
    if not is_p_power(t, p):
        raise ValueError(f"t = {t} is not a power of {p}")
    if len(twists) != t:
        raise ValueError("need one twist per coordinate")
    if not isinstance(S.identity, Permutation):
        raise TypeError("the coset count works on permutation groups")
    deg = S.identity.degree
    folded = twists[0]
    for x in twists[1:]:
        folded = folded * x
    factored = S.order ** (t - 1) * coset_census(S, folded, p)
    if S.order**t > DIRECT_LIMIT:
        return None, factored
    rows = [[s * x for s in S.elements] for x in twists]
    direct = 0
    idx = [0] * t
    while True:
        y = _wreath_element([rows[i][idx[i]] for i in range(t)], deg)
        if is_p_power(y.order(), p):
            direct += 1
        k = t - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < S.order:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            break
    return direct, factored
