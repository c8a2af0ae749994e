"""Group elements: permutations, matrices over GF(q), automorphisms, coset classes.

All kinds share one interface: ``a * b`` (apply a, then b), ``inverse()``,
``identity()``, ``order()`` and ``sort_key()``.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Sequence

from .arith import prime_divisors
from .gf import FieldSpec


class KindMismatch(TypeError):
    pass


def _lcm_cycles(img: Sequence[int]) -> int:
    seen = bytearray(len(img))
    out = 1
    for start in range(len(img)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = img[j]
            length += 1
        out = out * length // gcd(out, length)
    return out


def order_from_multiple(g, multiple: int) -> int:  # noqa: ANN001 - any element kind
    """Order of ``g`` given any multiple of it, by stripping prime factors."""
    order = multiple
    for r in prime_divisors(multiple):
        while order % r == 0 and pow_elt(g, order // r).is_identity():
            order //= r
    return order


def pow_elt(g, e: int):  # noqa: ANN001, ANN201
    if e < 0:
        g, e = g.inverse(), -e
    result = g.identity()
    base = g
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


class Permutation:
    """Permutation of {0..n-1}; displayed 1-based in cycle notation."""

    __slots__ = ("img", "_hash")

    def __init__(self, img: Sequence[int]) -> None:
        self.img = tuple(img)
        self._hash = hash(self.img)

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
        img = list(range(n))
        for cyc in cycles:
            for k, pt in enumerate(cyc):
                if not 1 <= pt <= n:
                    raise ValueError(f"point {pt} outside 1..{n}")
                img[pt - 1] = cyc[(k + 1) % len(cyc)] - 1
        if sorted(img) != list(range(n)):
            raise ValueError("cycles overlap")
        return cls(img)

    @classmethod
    def parse(cls, n: int, text: str) -> Permutation:
        text = text.strip()
        if text in ("", "()"):
            return cls(range(n))
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if pts:
                cycles.append(pts)
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"bad cycle notation {text!r}")
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.img)

    def __mul__(self, other: Permutation) -> Permutation:
        o = other.img
        return Permutation([o[i] for i in self.img])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self) -> int:
        return self._hash

    def __call__(self, i: int) -> int:
        return self.img[i]

    def inverse(self) -> Permutation:
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Permutation(inv)

    def identity(self) -> Permutation:
        return Permutation(range(len(self.img)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def order(self, multiple: int | None = None) -> int:
        return _lcm_cycles(self.img)

    def sort_key(self) -> tuple:
        return self.img

    def cycles(self) -> list[list[int]]:
        seen = set()
        out = []
        for start in range(len(self.img)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self.img[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.img[j]
            out.append(cyc)
        return out

    def cycle_type(self) -> list[int]:
        return sorted(len(c) for c in self.cycles())

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        parts = ["(" + " ".join(str(x + 1) for x in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation({self})"


class MatrixElt:
    """Invertible n x n matrix over a finite field, acting on row vectors."""

    __slots__ = ("field", "n", "entries", "_hash")

    def __init__(self, field: FieldSpec, n: int, entries: Sequence[int]) -> None:
        self.field = field
        self.n = n
        self.entries = tuple(entries)
        if len(self.entries) != n * n:
            raise ValueError("entry count does not match dimension")
        self._hash = hash(self.entries)

    @classmethod
    def identity_matrix(cls, field: FieldSpec, n: int) -> MatrixElt:
        return cls(field, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> MatrixElt:
        n = len(rows)
        return cls(field, n, [x for row in rows for x in row])

    def rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [self.entries[i * n : (i + 1) * n] for i in range(n)]

    def __mul__(self, other: MatrixElt) -> MatrixElt:
        n = self.n
        a, b = self.entries, other.entries
        F = self.field
        if F.f == 1:
            p = F.p
            out = [
                sum(a[i * n + k] * b[k * n + j] for k in range(n)) % p
                for i in range(n)
                for j in range(n)
            ]
        else:
            add, mul = F.add, F.mul
            out = []
            for i in range(n):
                row = a[i * n : (i + 1) * n]
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        if row[k]:
                            acc = add(acc, mul(row[k], b[k * n + j]))
                    out.append(acc)
        return MatrixElt(F, n, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixElt) and self.entries == other.entries and self.field == other.field

    def __hash__(self) -> int:
        return self._hash

    def identity(self) -> MatrixElt:
        return MatrixElt.identity_matrix(self.field, self.n)

    def is_identity(self) -> bool:
        n = self.n
        return all(x == (1 if i % (n + 1) == 0 else 0) for i, x in enumerate(self.entries))

    def _reduce(self) -> tuple[list[list[int]], list[list[int]], int]:
        """Gauss-Jordan on [A | I]; returns (reduced, inverse-or-partial, det)."""
        F, n = self.field, self.n
        a = [list(r) for r in self.rows()]
        inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return a, inv, 0
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                inv[col], inv[piv] = inv[piv], inv[col]
                det = F.neg(det)
            pv = a[col][col]
            det = F.mul(det, pv)
            s = F.inv(pv)
            a[col] = [F.mul(s, x) for x in a[col]]
            inv[col] = [F.mul(s, x) for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    c = a[r][col]
                    a[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(a[r], a[col])]
                    inv[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(inv[r], inv[col])]
        return a, inv, det

    def det(self) -> int:
        return self._reduce()[2]

    def inverse(self) -> MatrixElt:
        _, inv, det = self._reduce()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return MatrixElt(self.field, self.n, [x for row in inv for x in row])

    def order(self, multiple: int | None = None) -> int:
        if multiple is not None:
            return order_from_multiple(self, multiple)
        x = self
        k = 1
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def sort_key(self) -> tuple:
        return self.entries

    def apply(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        F, n = self.field, self.n
        out = []
        for j in range(n):
            acc = 0
            for k in range(n):
                if v[k]:
                    acc = F.add(acc, F.mul(v[k], self.entries[k * n + j]))
            out.append(acc)
        return out

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.entries)

    def __repr__(self) -> str:
        return f"MatrixElt({self.field!r}, {[list(r) for r in self.rows()]})"


class IndexPerm:
    """A permutation of the element-index set of an enumerated group.

    Used for automorphisms (AutElt) and as the generic index-level element.
    """

    __slots__ = ("perm", "_hash")

    def __init__(self, perm: Sequence[int]) -> None:
        self.perm = tuple(perm)
        self._hash = hash(self.perm)

    def __mul__(self, other: IndexPerm) -> IndexPerm:
        o = other.perm
        return type(self)([o[i] for i in self.perm])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IndexPerm) and self.perm == other.perm

    def __hash__(self) -> int:
        return self._hash

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def inverse(self) -> IndexPerm:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return type(self)(inv)

    def identity(self) -> IndexPerm:
        return type(self)(range(len(self.perm)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def order(self, multiple: int | None = None) -> int:
        return _lcm_cycles(self.perm)

    def sort_key(self) -> tuple:
        return self.perm

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.perm) if i == j)


class AutElt(IndexPerm):
    """Automorphism of an enumerated group, as a map on element indices."""

    __slots__ = ()


class CosetElt:
    """Element of a quotient group: the least-index representative of a coset."""

    __slots__ = ("data", "rep", "_hash")

    def __init__(self, data: "QuotientData", rep: int) -> None:  # noqa: F821
        self.data = data
        self.rep = rep
        self._hash = hash(rep)

    def __mul__(self, other: CosetElt) -> CosetElt:
        d = self.data
        return CosetElt(d, d.canon(d.parent.mul_idx(self.rep, other.rep)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CosetElt) and self.rep == other.rep and self.data is other.data

    def __hash__(self) -> int:
        return self._hash

    def inverse(self) -> CosetElt:
        d = self.data
        return CosetElt(d, d.canon(d.parent.inv_idx(self.rep)))

    def identity(self) -> CosetElt:
        return CosetElt(self.data, 0)

    def is_identity(self) -> bool:
        return self.rep == 0

    def order(self, multiple: int | None = None) -> int:
        x = self
        k = 1
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def sort_key(self) -> tuple:
        return (self.rep,)

    def __str__(self) -> str:
        return str(self.data.parent.elements[self.rep])

    def __repr__(self) -> str:
        return f"CosetElt({self.rep})"


class ProductElt:
    """Element of an external direct product, one coordinate per factor."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts: Sequence) -> None:
        self.parts = tuple(parts)
        self._hash = hash(self.parts)

    def __mul__(self, other: ProductElt) -> ProductElt:
        return ProductElt([a * b for a, b in zip(self.parts, other.parts)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProductElt) and self.parts == other.parts

    def __hash__(self) -> int:
        return self._hash

    def inverse(self) -> ProductElt:
        return ProductElt([a.inverse() for a in self.parts])

    def identity(self) -> ProductElt:
        return ProductElt([a.identity() for a in self.parts])

    def is_identity(self) -> bool:
        return all(a.is_identity() for a in self.parts)

    def order(self, multiple: int | None = None) -> int:
        out = 1
        for a in self.parts:
            k = a.order()
            out = out * k // gcd(out, k)
        return out

    def sort_key(self) -> tuple:
        return tuple(a.sort_key() for a in self.parts)

    def __str__(self) -> str:
        return "[" + ", ".join(str(a) for a in self.parts) + "]"
