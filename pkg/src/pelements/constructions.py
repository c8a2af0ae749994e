"""Builders for the permutation and matrix groups used throughout the package.

Search-based builders (the quaternion subgroup of GL_2(q), the binary
icosahedral subgroup of SL_2(q)) scan candidates in element-index order and
take the first hit, so their output is reproducible.
"""

from __future__ import annotations

import itertools
from math import prod
from typing import Sequence

from .arith import p_prime_part, prime_power
from .bounds import i_bound
from .elements import KindMismatch, MatrixElt, Permutation, ProductElt
from .engine import DEFAULT_CAP, CapExceeded, FiniteGroup, closure, subgroup_closure
from .gf import FieldSpec, field_of_order, least_primitive_poly, poly_powmod, primitive_element


class NoSolution(ValueError):
    pass


class NotFound(ValueError):
    pass


class Unsupported(ValueError):
    pass


# --- permutation groups -------------------------------------------------------


def trivial_perm(degree: int = 1, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return closure([], cap, identity=Permutation(range(degree)), label="1")


def sym(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [[1, 2]]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [list(range(1, n + 1))]))
    return closure(gens, cap, identity=Permutation(range(n)), label=f"Sym({n})")


def alt(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = [Permutation.from_cycles(n, [[1, 2, i]]) for i in range(3, n + 1)]
    return closure(gens, cap, identity=Permutation(range(n)), label=f"Alt({n})")


def cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    gens = [Permutation.from_cycles(n, [list(range(1, n + 1))])] if n > 1 else []
    return closure(gens, cap, identity=Permutation(range(n)), label=f"C({n})")


def dihedral(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, on n points (n >= 3)."""
    if n < 3:
        raise ValueError("the n-gon needs n >= 3")
    rot = Permutation.from_cycles(n, [list(range(1, n + 1))])
    ref = Permutation([(-i) % n for i in range(n)])
    return closure([rot, ref], cap, label=f"D({2 * n})")


def _block_orbit_reps(T: FiniteGroup) -> list[int]:
    """Least point of each orbit of a permutation group."""
    deg = T.identity.degree
    seen: set[int] = set()
    reps = []
    for start in range(deg):
        if start in seen:
            continue
        reps.append(start)
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for g in T.gens:
                y = g.img[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return reps


def _require_perm(G: FiniteGroup, what: str) -> int:
    if not isinstance(G.identity, Permutation):
        raise KindMismatch(f"{what} must be a permutation group")
    return G.identity.degree


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise CapExceeded(cap)


def wreath_perm(R: FiniteGroup, T: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """R wr T in its imprimitive action on r*t points (block i = points i*r .. i*r+r-1)."""
    r = _require_perm(R, "R")
    t = _require_perm(T, "T")
    _check_cap(R.order**t * T.order, cap)
    gens = []
    for b in _block_orbit_reps(T):
        for g in R.gens:
            img = list(range(r * t))
            for k in range(r):
                img[b * r + k] = b * r + g.img[k]
            gens.append(Permutation(img))
    for g in T.gens:
        gens.append(Permutation([g.img[i] * r + k for i in range(t) for k in range(r)]))
    label = f"{R.label}wr{T.label}" if R.label and T.label else ""
    return closure(gens, cap, identity=Permutation(range(r * t)), label=label)


def extremal_perm(p: int, k: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """k-fold iterated wreath tower of the base p'-group: C_3, C_5:C_4 or Sym_{p-1}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if p == 2:
        base = cyclic(3)
    elif p == 3:
        base = closure(
            [Permutation.from_cycles(5, [[1, 2, 3, 4, 5]]), Permutation.from_cycles(5, [[2, 3, 5, 4]])],
            label="F20",
        )
    else:
        base = sym(p - 1)
    G = trivial_perm(1)
    for _ in range(k):
        G = base if G.order == 1 else wreath_perm(G, base, cap)
    G.label = f"extremal_perm({p},{k})"
    return G


# --- matrix groups --------------------------------------------------------------


def _elementary(F: FieldSpec, n: int, i: int, j: int, lam: int) -> MatrixElt:
    entries = [1 if a == b else 0 for a in range(n) for b in range(n)]
    entries[i * n + j] = lam
    return MatrixElt(F, n, entries)


def _diag(F: FieldSpec, values: Sequence[int]) -> MatrixElt:
    n = len(values)
    return MatrixElt(F, n, [values[a] if a == b else 0 for a in range(n) for b in range(n)])


def gl_order(n: int, q: int) -> int:
    return prod(q**n - q**i for i in range(n))


def _transvections(F: FieldSpec, n: int) -> list[MatrixElt]:
    basis = [F.p**k for k in range(F.f)]
    return [_elementary(F, n, i, j, lam) for i in range(n) for j in range(n) if i != j for lam in basis]


def gl(n: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    F = field_of_order(q)
    _check_cap(gl_order(n, q), cap)
    gens = _transvections(F, n) + [_diag(F, [primitive_element(F).value] + [1] * (n - 1))]
    G = closure(gens, cap, identity=MatrixElt.identity_matrix(F, n), label=f"GL({n},{q})")
    if G.order != gl_order(n, q):
        raise AssertionError(f"GL({n},{q}) closed at order {G.order}")
    return G


def sl(n: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    F = field_of_order(q)
    _check_cap(gl_order(n, q) // (q - 1), cap)
    G = closure(_transvections(F, n), cap, identity=MatrixElt.identity_matrix(F, n), label=f"SL({n},{q})")
    if G.order != gl_order(n, q) // (q - 1):
        raise AssertionError(f"SL({n},{q}) closed at order {G.order}")
    return G


def extension_modulus(n: int, q: int) -> tuple[int, ...]:
    """Least primitive degree-n polynomial over GF(q), constant term first."""
    return least_primitive_poly(field_of_order(q), n)


def singer(n: int, q: int) -> MatrixElt:
    """Multiplication by x on GF(q)[x]/(c) in the power basis; order q^n - 1."""
    F = field_of_order(q)
    c = extension_modulus(n, q)
    rows = []
    for i in range(n - 1):
        rows.append([1 if j == i + 1 else 0 for j in range(n)])
    rows.append([F.neg(c[j]) for j in range(n)])
    A = MatrixElt.from_rows(F, rows)
    if A.order(q**n - 1) != q**n - 1:
        raise AssertionError("companion matrix is not a Singer cycle")
    return A


def frobenius(n: int, q: int) -> MatrixElt:
    """The map y -> y^q of GF(q^n) in the power basis."""
    F = field_of_order(q)
    c = extension_modulus(n, q)
    rows = []
    for i in range(n):
        img = poly_powmod(F, [0] * i + [1], q, c) if i else [1]
        rows.append(list(img) + [0] * (n - len(img)))
    return MatrixElt.from_rows(F, rows)


def gamma_l1(n: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    F = field_of_order(q)
    G = closure(
        [singer(n, q), frobenius(n, q)], cap, identity=MatrixElt.identity_matrix(F, n), label=f"GammaL1({q}^{n})"
    )
    if G.order != n * (q**n - 1):
        raise AssertionError(f"GammaL1 closed at order {G.order}")
    return G


def hall_pprime_gamma_l1(n: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """<Singer cycle, Frobenius^{n_p}>, of order n_{p'}(q^n - 1)."""
    p, _ = prime_power(q) or (0, 0)
    F = field_of_order(q)
    npart = n // p_prime_part(n, p)
    phi = frobenius(n, q)
    step = phi.identity()
    for _ in range(npart):
        step = step * phi
    G = closure([singer(n, q), step], cap, identity=MatrixElt.identity_matrix(F, n), label=f"Hall({q}^{n})")
    if G.order != p_prime_part(n, p) * (q**n - 1):
        raise AssertionError(f"Hall subgroup closed at order {G.order}")
    return G


def _require_mat(G: FiniteGroup, what: str) -> MatrixElt:
    if not isinstance(G.identity, MatrixElt):
        raise KindMismatch(f"{what} must be a matrix group")
    return G.identity


def wreath_mat(R: FiniteGroup, T: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """R wr T inside GL_{mt}(q): block-diagonal copies of R and block permutations."""
    one = _require_mat(R, "R")
    t = _require_perm(T, "T")
    F, m = one.field, one.n
    n = m * t
    _check_cap(R.order**t * T.order, cap)

    def block(g: MatrixElt, b: int) -> MatrixElt:
        entries = [1 if a == c else 0 for a in range(n) for c in range(n)]
        for i in range(m):
            for j in range(m):
                entries[(b * m + i) * n + b * m + j] = g.entries[i * m + j]
        return MatrixElt(F, n, entries)

    gens = [block(g, b) for b in _block_orbit_reps(T) for g in R.gens]
    for g in T.gens:
        entries = [0] * (n * n)
        for i in range(t):
            for k in range(m):
                entries[(i * m + k) * n + g.img[i] * m + k] = 1
        gens.append(MatrixElt(F, n, entries))
    label = f"{R.label}wr{T.label}" if R.label and T.label else ""
    return closure(gens, cap, identity=MatrixElt.identity_matrix(F, n), label=label)


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Disjoint-union action, block-diagonal matrices, or formal pairs otherwise."""
    _check_cap(G.order * H.order, cap)
    a, b = G.identity, H.identity
    label = f"{G.label}x{H.label}" if G.label and H.label else ""
    if isinstance(a, Permutation) and isinstance(b, Permutation):
        d1, d2 = a.degree, b.degree

        def lift(g: Permutation, off: int) -> Permutation:
            img = list(range(d1 + d2))
            for i, j in enumerate(g.img):
                img[off + i] = off + j
            return Permutation(img)

        gens = [lift(g, 0) for g in G.gens] + [lift(h, d1) for h in H.gens]
        return closure(gens, cap, identity=Permutation(range(d1 + d2)), label=label)
    if isinstance(a, MatrixElt) and isinstance(b, MatrixElt) and a.field == b.field:
        n1, n2 = a.n, b.n
        n = n1 + n2

        def embed(g: MatrixElt, off: int, size: int) -> MatrixElt:
            entries = [1 if i == j else 0 for i in range(n) for j in range(n)]
            for i in range(size):
                for j in range(size):
                    entries[(off + i) * n + off + j] = g.entries[i * size + j]
            return MatrixElt(a.field, n, entries)

        gens = [embed(g, 0, n1) for g in G.gens] + [embed(h, n1, n2) for h in H.gens]
        return closure(gens, cap, identity=MatrixElt.identity_matrix(a.field, n), label=label)
    gens = [ProductElt([g, b]) for g in G.gens] + [ProductElt([a, h]) for h in H.gens]
    return closure(gens, cap, identity=ProductElt([a, b]), label=label)


def with_scalars(R: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    one = _require_mat(R, "R")
    F = one.field
    w = primitive_element(F).value
    scalar = _diag(F, [w] * one.n)
    return closure(list(R.gens) + [scalar], cap, identity=one, label=f"Z.{R.label}" if R.label else "")


def q8_in_gl2(q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """<X, Y> with X = [[0,1],[-1,0]], Y = [[a,b],[b,-a]] for the least (a, b) with a^2 + b^2 = -1."""
    F = field_of_order(q)
    if F.p == 2:
        raise NoSolution("q must be odd")
    target = F.neg(1)
    for a, b in itertools.product(range(q), repeat=2):
        if F.add(F.mul(a, a), F.mul(b, b)) == target:
            break
    else:
        raise NoSolution(f"a^2 + b^2 = -1 has no solution in GF({q})")
    X = MatrixElt.from_rows(F, [[0, 1], [F.neg(1), 0]])
    Y = MatrixElt.from_rows(F, [[a, b], [b, F.neg(a)]])
    Q = closure([X, Y], cap, identity=X.identity(), label="Q8")
    involutions = sum(1 for g in Q.elements if g.order() == 2)
    if Q.order != 8 or involutions != 1:
        raise AssertionError(f"<X, Y> has order {Q.order} and {involutions} involutions")
    return Q


def normalizer_in(ambient: FiniteGroup, H: Sequence[int]) -> list[int]:
    """Sorted indices of {g : g^-1 H g = H}, by a full scan."""
    Hset = set(H)
    Hels = [ambient.elements[h] for h in sorted(Hset) if h != 0]
    out = []
    for i, g in enumerate(ambient.elements):
        gi = g.inverse()
        if all(ambient.index[gi * h * g] in Hset for h in Hels):
            out.append(i)
    return out


def normalizer_subgroup(ambient: FiniteGroup, H: FiniteGroup, label: str = "") -> FiniteGroup:
    N = normalizer_in(ambient, [ambient.idx(h) for h in H.elements])
    return closure([ambient.elements[i] for i in N], identity=ambient.identity, label=label)


def two_alt5_in_sl2(q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """First <x, y> in SL_2(q) (|x| = 4, |y| = 10, index order) of order 120 with one involution."""
    S = sl(2, q, cap)
    orders = [S.order_of(i) for i in range(S.order)]
    fours = [i for i, o in enumerate(orders) if o == 4]
    tens = [i for i, o in enumerate(orders) if o == 10]
    for x in fours:
        for y in tens:
            H = subgroup_closure(S, [x, y], stop_at=121)
            if len(H) == 120 and sum(1 for h in H if orders[h] == 2) == 1:
                return closure([S.elements[x], S.elements[y]], identity=S.identity, label="2.Alt5")
    raise NotFound(f"no 2.Alt5 in SL(2,{q}); need q = +-1 mod 5")


def psl2_perm(q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """L_2(q) acting on the q + 1 points of the projective line."""
    F = field_of_order(q)
    # points: 0..q-1 stand for (a, 1), q stands for (1, 0)
    def point(v: Sequence[int]) -> int:
        x, y = v
        if y == 0:
            return q
        return F.mul(x, F.inv(y))

    def vec(pt: int) -> list[int]:
        return [1, 0] if pt == q else [pt, 1]

    gens = []
    for g in _transvections(F, 2):
        gens.append(Permutation([point(g.apply(vec(pt))) for pt in range(q + 1)]))
    return closure(gens, cap, identity=Permutation(range(q + 1)), label=f"L2({q})")


# --- irreducibility ------------------------------------------------------------------


class _Echelon:
    """Row-echelon basis of a subspace of GF(q)^n."""

    def __init__(self, F: FieldSpec, n: int) -> None:
        self.F = F
        self.n = n
        self.rows: dict[int, list[int]] = {}

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.F
        v = list(v)
        for col, row in self.rows.items():
            c = v[col]
            if c:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> list[int] | None:
        """Add v; return the new normalized row, or None if v was dependent."""
        F = self.F
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return None
        s = F.inv(v[piv])
        v = [F.mul(s, x) for x in v]
        for col, row in self.rows.items():
            c = row[piv]
            if c:
                self.rows[col] = [F.sub(x, F.mul(c, y)) for x, y in zip(row, v)]
        self.rows[piv] = v
        return v

    def __len__(self) -> int:
        return len(self.rows)


def spin(gens: Sequence[MatrixElt], v: Sequence[int]) -> int:
    """Dimension of the submodule generated by v."""
    F, n = gens[0].field, gens[0].n
    E = _Echelon(F, n)
    queue = [list(v)]
    E.add(v)
    while queue and len(E) < n:
        w = queue.pop()
        for g in gens:
            new = E.add(g.apply(w))
            if new is not None:
                queue.append(new)
    return len(E)


def _projective_points(F: FieldSpec, n: int):
    """Nonzero vectors whose first nonzero coordinate is 1."""
    for lead in range(n):
        for tail in itertools.product(range(F.q), repeat=n - lead - 1):
            yield [0] * lead + [1] + list(tail)


def is_irreducible(G: FiniteGroup, limit: int = 10**6) -> bool:
    one = _require_mat(G, "G")
    F, n = one.field, one.n
    if F.q**n > limit:
        raise CapExceeded(limit, "irreducibility test")
    gens = list(G.gens) or [one]
    return all(spin(gens, v) == n for v in _projective_points(F, n))


# --- extremal linear groups -------------------------------------------------------


def extremal_linear_base(q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """The primitive building block R (of degree r) for the extremal wreath product."""
    pf = prime_power(q)
    if pf is None:
        raise ValueError(f"{q} is not a prime power")
    if q == 2:
        return gamma_l1(3, 2, cap)
    if q == 3:
        raise Unsupported("the q = 3 block 2^{1+4}.(5:4) in GL_4(3) is not constructed")
    if q in (9, 27):
        return gamma_l1(2, q, cap)
    if q in (5, 7):
        return normalizer_subgroup(gl(2, q, cap), q8_in_gl2(q, cap), label=f"N(Q8,{q})")
    if q == 11:
        return with_scalars(two_alt5_in_sl2(11, cap), cap)
    return gl(1, q, cap)


def extremal_linear(q: int, k: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    p = (prime_power(q) or (0, 0))[0]
    R = extremal_linear_base(q, cap)
    if k == 0:
        return R
    S = extremal_perm(p, k, cap)
    G = wreath_mat(R, S, cap)
    G.label = f"extremal_linear({q},{k})"
    return G


def extremal_case_matches(q: int) -> bool:
    """Whether the block for q realizes the i-row for q (fails for q a power of 2 other than 2)."""
    p = (prime_power(q) or (0, 0))[0]
    return not (p == 2 and q != 2)


def extremal_expected_order(q: int, k: int):
    """i(r m, q) for the tower of k levels, as an ExactBound."""
    p = (prime_power(q) or (0, 0))[0]
    r = 3 if q == 2 else 2 if q in (5, 7, 9, 11, 27) else 1
    m = {2: 3, 3: 5}.get(p, p - 1) ** k
    return i_bound(r * m, q)


def is_p_prime_group(G: FiniteGroup, p: int) -> bool:
    return G.order % p != 0

