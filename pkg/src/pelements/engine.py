"""Enumeration engine: closure, conjugacy classes, normal structure, automorphisms.

Every group is fully enumerated. Elements get indices in breadth-first
discovery order (identity at 0), and most algorithms work on those indices.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterable, Iterator, Sequence

from .arith import is_p_power, is_prime
from .elements import AutElt, CosetElt, KindMismatch

DEFAULT_CAP = 2_000_000
DEFAULT_AUT_CAP = 10_000


class CapExceeded(RuntimeError):
    def __init__(self, cap: int, what: str = "enumeration") -> None:
        super().__init__(f"{what} exceeded cap {cap}")
        self.cap = cap


class NotMember(KeyError):
    pass


class NotNormal(ValueError):
    pass


class CenterNontrivial(ValueError):
    pass


class FiniteGroup:
    """A fully enumerated group with lazily cached class data."""

    def __init__(self, gens: Sequence[Any], elements: list[Any], label: str = "") -> None:
        self.gens = tuple(gens)
        self.elements = elements
        self.index: dict[Any, int] = {x: i for i, x in enumerate(elements)}
        self.order = len(elements)
        self.label = label
        self._lock = threading.Lock()
        self._classes: list[tuple[int, int]] | None = None
        self._class_of: list[int] | None = None
        self._class_orders: list[int] | None = None
        self._conj: list[list[int]] | None = None
        self._inv: dict[int, int] = {}
        self.quotient_data: QuotientData | None = None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    @property
    def identity(self) -> Any:
        return self.elements[0]

    def idx(self, x: Any) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise NotMember(f"{x} is not in {self!r}") from None

    def __contains__(self, x: Any) -> bool:
        return x in self.index

    def mul_idx(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    def inv_idx(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = self.index[self.elements[i].inverse()]
            self._inv[i] = r
            self._inv[r] = i
        return r

    def gen_indices(self) -> list[int]:
        return [self.index[g] for g in self.gens]

    # --- index-level maps ---------------------------------------------------

    def right_mul_map(self, g: Any) -> list[int]:
        """i -> index(e_i * g)."""
        ix, els = self.index, self.elements
        return [ix[x * g] for x in els]

    def left_mul_map(self, g: Any) -> list[int]:
        """i -> index(g * e_i)."""
        ix = self.index
        return [ix[g * x] for x in self.elements]

    def conj_maps(self) -> list[list[int]]:
        """For each generator g, the map i -> index(g^-1 e_i g)."""
        if self._conj is None:
            maps = []
            for g in self.gens:
                gi = g.inverse()
                maps.append([self.index[gi * x * g] for x in self.elements])
            self._conj = maps
        return self._conj

    # --- classes ------------------------------------------------------------

    def _fill_classes(self) -> None:
        with self._lock:
            if self._classes is not None:
                return
            maps = self.conj_maps()
            class_of = [-1] * self.order
            classes: list[tuple[int, int]] = []
            for start in range(self.order):
                if class_of[start] >= 0:
                    continue
                cid = len(classes)
                class_of[start] = cid
                stack = [start]
                size = 0
                while stack:
                    i = stack.pop()
                    size += 1
                    for m in maps:
                        j = m[i]
                        if class_of[j] < 0:
                            class_of[j] = cid
                            stack.append(j)
                classes.append((start, size))
            orders = [self.elements[rep].order(self.order) for rep, _ in classes]
            self._class_of = class_of
            self._class_orders = orders
            self._classes = classes

    def conjugacy_classes(self) -> list[tuple[int, int]]:
        """(least index in class, class size), ordered by representative."""
        self._fill_classes()
        assert self._classes is not None
        return self._classes

    def class_of(self, i: int) -> int:
        self._fill_classes()
        assert self._class_of is not None
        return self._class_of[i]

    def class_orders(self) -> list[int]:
        self._fill_classes()
        assert self._class_orders is not None
        return self._class_orders

    def order_of(self, i: int) -> int:
        return self.class_orders()[self.class_of(i)]

    def class_size_of(self, i: int) -> int:
        return self.conjugacy_classes()[self.class_of(i)][1]

    def class_members(self, cid: int) -> list[int]:
        self._fill_classes()
        assert self._class_of is not None
        return [i for i, c in enumerate(self._class_of) if c == cid]

    def centralizer_order(self, x: Any) -> int:
        i = x if isinstance(x, int) else self.idx(x)
        return self.order // self.class_size_of(i)

    def element_order(self, x: Any) -> int:
        return element_order(x, self.order)


def element_order(g: Any, multiple: int | None = None) -> int:
    return g.order(multiple)


def _sorted_gens(generators: Iterable[Any]) -> list[Any]:
    uniq = {g for g in generators if not g.is_identity()}
    kinds = {type(g) for g in uniq}
    if len(kinds) > 1:
        raise KindMismatch(f"mixed generator kinds {sorted(k.__name__ for k in kinds)}")
    return sorted(uniq, key=lambda g: g.sort_key())


def closure(
    generators: Iterable[Any],
    cap: int = DEFAULT_CAP,
    identity: Any = None,
    label: str = "",
) -> FiniteGroup:
    """Breadth-first product closure with deterministic numbering."""
    given = list(generators)
    gens = _sorted_gens(given)
    if identity is None:
        if not given:
            raise ValueError("an identity element is required for the trivial group")
        identity = given[0].identity()
    elements = [identity]
    seen = {identity: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in gens:
            y = x * g
            if y not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(cap)
                seen[y] = len(elements)
                elements.append(y)
    return FiniteGroup(gens, elements, label)


# --- subgroups --------------------------------------------------------------


def subgroup_closure(G: FiniteGroup, gen_idx: Sequence[int], stop_at: int | None = None) -> list[int]:
    """Indices of the subgroup of G generated by the given indices."""
    els, ix = G.elements, G.index
    gens = [els[i] for i in gen_idx if i != 0]
    out = [0]
    seen = {0}
    head = 0
    while head < len(out):
        x = els[out[head]]
        head += 1
        for g in gens:
            j = ix[x * g]
            if j not in seen:
                seen.add(j)
                out.append(j)
                if stop_at is not None and len(out) >= stop_at:
                    return out
    return out


def subgroup(G: FiniteGroup, indices: Iterable[int], label: str = "") -> FiniteGroup:
    """Re-enumerate a subgroup (given by any generating indices) as its own group."""
    gens = [G.elements[i] for i in indices if i != 0]
    return closure(gens, identity=G.identity, label=label)


def _normal_closure_gens(G: FiniteGroup, seeds: Iterable[int], stop_at: int | None = None) -> tuple[list[int], set[int]]:
    maps = G.conj_maps()
    gens: list[int] = []
    H: set[int] = {0}
    pending = deque(seeds)
    while pending:
        x = pending.popleft()
        if x in H:
            continue
        gens.append(x)
        H = set(subgroup_closure(G, gens))
        if stop_at is not None and len(H) >= stop_at:
            return gens, H
        for h in gens:
            for m in maps:
                if m[h] not in H:
                    pending.append(m[h])
    return gens, H


def normal_closure(G: FiniteGroup, seeds: Iterable[int]) -> list[int]:
    """Sorted indices of the least normal subgroup containing the seeds."""
    return sorted(_normal_closure_gens(G, seeds)[1])


def is_normal(G: FiniteGroup, N: Iterable[int]) -> bool:
    Nset = set(N)
    return all(m[i] in Nset for m in G.conj_maps() for i in Nset)


@dataclass
class QuotientData:
    parent: FiniteGroup
    normal: frozenset[int]
    coset_id: list[int]
    reps: list[int]

    def canon(self, i: int) -> int:
        return self.reps[self.coset_id[i]]


def quotient(G: FiniteGroup, N: Iterable[int], label: str = "") -> FiniteGroup:
    """G/N with elements named by least-index coset representatives."""
    Nlist = sorted(set(N))
    if not Nlist or Nlist[0] != 0 or not is_normal(G, Nlist):
        raise NotNormal("subgroup is not normal")
    els = G.elements
    coset_id = [-1] * G.order
    reps: list[int] = []
    Nels = [els[n] for n in Nlist]
    for i in range(G.order):
        if coset_id[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        g = els[i]
        for n in Nels:
            coset_id[G.index[n * g]] = cid
    data = QuotientData(G, frozenset(Nlist), coset_id, reps)
    identity = CosetElt(data, 0)
    gens = [CosetElt(data, data.canon(G.index[g])) for g in G.gens]
    Q = closure(gens, identity=identity, label=label or (f"{G.label}/N" if G.label else ""))
    Q.quotient_data = data
    return Q


def center(G: FiniteGroup) -> list[int]:
    return [rep for rep, size in G.conjugacy_classes() if size == 1]


def composition_factors(G: FiniteGroup, cap: int = DEFAULT_CAP) -> list[FiniteGroup]:
    """Composition factors, each re-enumerated as a concrete simple group.

    Splits along the smallest proper normal closure of a single class, then
    recurses on that subgroup and on the quotient.
    """
    if G.order > cap:
        raise CapExceeded(cap)
    if G.order == 1:
        return []
    if is_prime(G.order):
        return [G]
    best: tuple[list[int], set[int]] | None = None
    classes = sorted(G.conjugacy_classes()[1:], key=lambda c: (c[1], c[0]))
    for rep, _ in classes:
        limit = G.order if best is None else len(best[1])
        gens, H = _normal_closure_gens(G, [rep], stop_at=limit)
        if len(H) < limit:
            best = (gens, H)
    if best is None:
        return [G]
    gens, H = best
    N = subgroup(G, gens, label=f"N<{G.label}" if G.label else "")
    Q = quotient(G, H)
    return composition_factors(N, cap) + composition_factors(Q, cap)


def is_simple(G: FiniteGroup) -> bool:
    if G.order == 1:
        return False
    for rep, _ in G.conjugacy_classes()[1:]:
        _, H = _normal_closure_gens(G, [rep], stop_at=G.order)
        if len(H) < G.order:
            return False
    return True


# --- automorphisms -------------------------------------------------------------


@dataclass
class AutomorphismData:
    """Inn(S) is implicit (S itself); ``outer`` holds one automorphism per Inn-coset."""

    group: FiniteGroup
    generators: tuple[int, int]
    outer: list[AutElt] = field(default_factory=list)

    @property
    def out_order(self) -> int:
        return len(self.outer)


def _generating_pair(S: FiniteGroup) -> tuple[int, int]:
    classes = sorted(
        range(1, len(S.conjugacy_classes())),
        key=lambda c: (-S.conjugacy_classes()[c][1], S.conjugacy_classes()[c][0]),
    )
    for cid in classes:
        a = S.conjugacy_classes()[cid][0]
        for b in range(1, S.order):
            if S.mul_idx(a, b) == S.mul_idx(b, a):
                continue
            if len(subgroup_closure(S, [a, b], stop_at=S.order)) == S.order:
                return a, b
    raise ValueError("group is not 2-generated")


def _signature(S: FiniteGroup, a: int, b: int) -> tuple[int, ...]:
    """Orders of a few short words in (a, b); preserved by automorphisms."""
    ab = S.mul_idx(a, b)
    binv = S.inv_idx(b)
    comm = S.mul_idx(S.mul_idx(S.inv_idx(a), binv), ab)
    words = (
        ab,
        S.mul_idx(a, binv),
        S.mul_idx(S.mul_idx(a, a), b),
        S.mul_idx(a, S.mul_idx(b, b)),
        comm,
        S.mul_idx(ab, b),
    )
    return tuple(S.order_of(w) for w in words)


def _extend(
    S: FiniteGroup,
    right_maps: tuple[list[int], list[int]],
    image_maps: tuple[list[int], list[int]],
) -> list[int] | None:
    """Extend a -> a', b -> b' along the Cayley graph; None unless a bijective homomorphism."""
    phi = [-1] * S.order
    phi[0] = 0
    queue = [0]
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        pi = phi[i]
        for rm, im in zip(right_maps, image_maps):
            j = rm[i]
            target = im[pi]
            if phi[j] < 0:
                phi[j] = target
                queue.append(j)
            elif phi[j] != target:
                return None
    if len(set(phi)) != S.order:
        return None
    return phi


def automorphism_group(S: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> AutomorphismData:
    """Representatives of the cosets of Inn(S) in Aut(S), for S with trivial center.

    Backtracking over images of a fixed generating pair (a, b): a is sent to a
    class representative (this fixes the Inn-coset up to C_S(a')), b ranges
    over elements with matching order and class size, and cheap word-order
    tests prune before the full homomorphism check.
    """
    if S.order > aut_cap:
        raise CapExceeded(aut_cap, "automorphism search")
    if len(center(S)) != 1:
        raise CenterNontrivial(f"{S!r} has nontrivial center")
    a, b = _generating_pair(S)
    els = S.elements
    right = (S.right_mul_map(els[a]), S.right_mul_map(els[b]))
    sig = _signature(S, a, b)
    key_a = (S.order_of(a), S.class_size_of(a))
    key_b = (S.order_of(b), S.class_size_of(b))
    classes = S.conjugacy_classes()
    orders = S.class_orders()
    b_candidates = [
        i for i in range(S.order)
        if (orders[S.class_of(i)], classes[S.class_of(i)][1]) == key_b
    ]
    outer: list[AutElt] = []
    for cid, (a2, size) in enumerate(classes):
        if (orders[cid], size) != key_a:
            continue
        cent = [c for c in range(S.order) if S.mul_idx(c, a2) == S.mul_idx(a2, c)]
        ra2 = S.right_mul_map(els[a2])
        seen_keys: set[int] = set()
        for b2 in b_candidates:
            if _signature(S, a2, b2) != sig:
                continue
            phi = _extend(S, right, (ra2, S.right_mul_map(els[b2])))
            if phi is None:
                continue
            key = min(S.mul_idx(S.mul_idx(S.inv_idx(c), b2), c) for c in cent)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            outer.append(AutElt(phi))
    outer.sort(key=lambda g: (not g.is_identity(), g.perm))
    return AutomorphismData(S, (a, b), outer)


def verify_automorphism(S: FiniteGroup, gamma: AutElt) -> bool:
    """Full check phi(xy) = phi(x)phi(y) on all pairs with y a generator, plus bijectivity."""
    phi = gamma.perm
    if sorted(phi) != list(range(S.order)):
        return False
    for g in S.gens:
        gi = S.index[g]
        rg = S.right_mul_map(g)
        for x in range(S.order):
            if phi[rg[x]] != S.mul_idx(phi[x], phi[gi]):
                return False
    return True


# --- cosets of Inn(S) --------------------------------------------------------


@dataclass
class TwistedClass:
    rep: int
    size: int
    order: int
    fixed: int


def _coset_element_image(S: FiniteGroup, gamma: Sequence[int], s: int, sinv: int, y: int) -> int:
    """x_s(y) = s^-1 gamma(y) s."""
    return S.mul_idx(S.mul_idx(sinv, gamma[y]), s)


def coset_element_order(S: FiniteGroup, gamma: AutElt, s: int, gens: Sequence[int]) -> int:
    """Order of x_s = gamma followed by conjugation by s, read off a generating set."""
    sinv = S.inv_idx(s)
    out = 1
    for g in gens:
        y = _coset_element_image(S, gamma.perm, s, sinv, g)
        k = 1
        while y != g:
            y = _coset_element_image(S, gamma.perm, s, sinv, y)
            k += 1
        out = out * k // gcd(out, k)
    return out


def coset_element(S: FiniteGroup, gamma: AutElt, s: int) -> AutElt:
    sinv = S.inv_idx(s)
    return AutElt([_coset_element_image(S, gamma.perm, s, sinv, y) for y in range(S.order)])


def twisted_classes(S: FiniteGroup, gamma: AutElt) -> tuple[list[TwistedClass], list[int]]:
    """Inn(S)-conjugacy classes inside the coset gamma*Inn(S).

    The coset element x_s (y -> s^-1 gamma(y) s) is conjugated by inn_g into
    x_{gamma(g)^-1 s g}; the stabilizer of s is the fixed-point group of x_s,
    so |Fix_S(x_s)| = |S| / orbit size.
    """
    els = S.elements
    gens = S.gen_indices()
    moves = []
    for g in gens:
        lg = S.left_mul_map(els[S.inv_idx(gamma.perm[g])])
        rg = S.right_mul_map(els[g])
        moves.append((lg, rg))
    cls_of = [-1] * S.order
    out: list[TwistedClass] = []
    for start in range(S.order):
        if cls_of[start] >= 0:
            continue
        cid = len(out)
        cls_of[start] = cid
        stack = [start]
        size = 0
        while stack:
            s = stack.pop()
            size += 1
            for lg, rg in moves:
                t = rg[lg[s]]
                if cls_of[t] < 0:
                    cls_of[t] = cid
                    stack.append(t)
        order = coset_element_order(S, gamma, start, gens)
        out.append(TwistedClass(start, size, order, S.order // size))
    return out, cls_of


def coset_p_elements(S: FiniteGroup, gamma: AutElt, p: int) -> Iterator[tuple[int, int, int]]:
    """Stream (s, order, fixed-point count) over s in S with x_s of p-power order."""
    classes, cls_of = twisted_classes(S, gamma)
    for s in range(S.order):
        tc = classes[cls_of[s]]
        if is_p_power(tc.order, p):
            yield s, tc.order, tc.fixed


@dataclass
class CosetSlice:
    """The coset N*g for g an ambient element normalizing N, or an AutElt of N."""

    group: FiniteGroup
    multiplier: Any

    def __len__(self) -> int:
        return self.group.order

    def __iter__(self) -> Iterator[Any]:
        if isinstance(self.multiplier, AutElt):
            for s in range(self.group.order):
                yield coset_element(self.group, self.multiplier, s)
        else:
            g = self.multiplier
            for n in self.group.elements:
                yield n * g
