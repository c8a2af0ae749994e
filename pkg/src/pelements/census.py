"""Counting pi-elements in enumerated groups and in cosets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Iterable

from .arith import is_p_power, is_pi_number, is_prime
from .elements import AutElt
from .engine import FiniteGroup, normal_closure, twisted_classes


class IncompatibleMultiplier(ValueError):
    pass


@dataclass(frozen=True)
class CensusResult:
    order: int
    primes: tuple[int, ...]
    count: int
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def proportion(self) -> Fraction:
        return Fraction(self.count, self.order)

    def to_json(self) -> dict[str, Any]:
        p = self.proportion
        return {
            "order": self.order,
            "primes": list(self.primes),
            "count": self.count,
            "proportion": f"{p.numerator}/{p.denominator}",
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _prime_set(primes: int | Iterable[int]) -> tuple[int, ...]:
    ps = (primes,) if isinstance(primes, int) else tuple(primes)
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return tuple(sorted(set(ps)))


def order_histogram(G: FiniteGroup) -> dict[int, int]:
    """Element order -> number of elements of that order."""
    hist: Counter[int] = Counter()
    for (_, size), order in zip(G.conjugacy_classes(), G.class_orders()):
        hist[order] += size
    return dict(sorted(hist.items()))


def count_pi_elements(G: FiniteGroup, primes: int | Iterable[int]) -> CensusResult:
    ps = _prime_set(primes)
    hist = order_histogram(G)
    count = sum(c for order, c in hist.items() if is_pi_number(order, ps))
    return CensusResult(G.order, ps, count, hist)


def proportion_p(G: FiniteGroup, p: int) -> Fraction:
    return count_pi_elements(G, p).proportion


def coset_census(N: FiniteGroup, g: Any, p: int) -> int:
    """Number of p-elements in the coset N*g.

    ``g`` is either an AutElt of N (the coset of Inn(N) in Aut(N)) or an
    ambient element normalizing N.
    """
    if isinstance(g, AutElt):
        if len(g.perm) != N.order:
            raise IncompatibleMultiplier("automorphism of a different group")
        classes, _ = twisted_classes(N, g)
        return sum(c.size for c in classes if is_p_power(c.order, p))
    try:
        gi = g.inverse()
        if not all(gi * x * g in N for x in N.gens):
            raise IncompatibleMultiplier(f"{g} does not normalize the group")
    except (TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, IncompatibleMultiplier):
            raise
        raise IncompatibleMultiplier(str(exc)) from exc
    return sum(1 for n in N.elements if is_p_power((n * g).order(), p))


def exp_p_prime(G: FiniteGroup, p: int) -> int:
    """lcm of the orders of the p'-elements."""
    out = 1
    for order in G.class_orders():
        if order % p:
            out = out * order // gcd(out, order)
    return out


def p_generated_subgroup(G: FiniteGroup, p: int) -> list[int]:
    """Indices of the subgroup generated by all p-elements."""
    reps = [rep for (rep, _), order in zip(G.conjugacy_classes(), G.class_orders()) if order > 1 and is_p_power(order, p)]
    return normal_closure(G, reps)


def o_p_prime_index(G: FiniteGroup, p: int) -> int:
    return G.order // len(p_generated_subgroup(G, p))
