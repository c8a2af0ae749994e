"""Finite fields GF(p^f) in a polynomial basis, elements packed as integers.

An element with coefficient vector (c_0, ..., c_{f-1}) is stored as the
integer sum(c_i * p**i). Small fields carry log/antilog tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .arith import is_prime, prime_divisors

MAX_ORDER = 2**31
_TABLE_LIMIT = 2**16


class NotPrime(ValueError):
    pass


class TooLarge(ValueError):
    pass


class FieldDivisionByZero(ZeroDivisionError):
    pass


# --- polynomials over a field, coefficient lists low degree first ----------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(F: FieldSpec, a: Sequence[int], b: Sequence[int], mod: Sequence[int]) -> list[int]:
    """a*b reduced modulo the monic polynomial ``mod``."""
    n = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        prod[k] = 0
        for j in range(n):
            if mod[j]:
                prod[k - n + j] = F.sub(prod[k - n + j], F.mul(c, mod[j]))
    return _poly_trim(prod[:n] if len(prod) > n else prod)


def poly_powmod(F: FieldSpec, a: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result: list[int] = [1]
    base = list(a)
    while e:
        if e & 1:
            result = poly_mulmod(F, result, base, mod)
        e >>= 1
        if e:
            base = poly_mulmod(F, base, base, mod)
    return result


def is_primitive_poly(F: FieldSpec, mod: Sequence[int]) -> bool:
    """True iff x has multiplicative order q^n - 1 modulo ``mod`` (degree n, monic).

    That forces F[x]/(mod) to be a field, so irreducibility comes for free.
    """
    n = len(mod) - 1
    if n < 1 or mod[-1] != 1 or mod[0] == 0:
        return False
    order = F.q**n - 1
    x = [0, 1] if n > 1 else [F.neg(mod[0])]
    if poly_powmod(F, x, order, mod) != [1]:
        return False
    return all(poly_powmod(F, x, order // r, mod) != [1] for r in prime_divisors(order))


def least_primitive_poly(F: FieldSpec, n: int) -> tuple[int, ...]:
    """Lexicographically least primitive monic degree-n polynomial over F.

    Candidates are ordered by their coefficient tuple (c_0, ..., c_{n-1}).
    """
    for coeffs in itertools.product(range(F.q), repeat=n):
        mod = (*coeffs, 1)
        if is_primitive_poly(F, mod):
            return mod
    raise AssertionError(f"no primitive polynomial of degree {n} over GF({F.q})")


# --- the field ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    f: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p**self.f)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.f, self.modulus) == (
            other.p,
            other.f,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.f, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # packing
    def to_vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vector(self, v: Sequence[int]) -> int:
        out = 0
        for c in reversed(v):
            out = out * self.p + c % self.p
        return out

    # arithmetic on packed integers
    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        t = _tables(self)
        if t.add is not None:
            return t.add[a * self.q + b]
        return self.from_vector([x + y for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def neg(self, a: int) -> int:
        if self.f == 1:
            return -a % self.p
        return self.from_vector([-x for x in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = _tables(self)
        if t.log is not None:
            return t.exp[(t.log[a] + t.log[b]) % (self.q - 1)]
        return self.from_vector(_prime_poly_mulmod(self, self.to_vector(a), self.to_vector(b)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero("inverse of zero")
        if self.f == 1:
            return pow(a, -1, self.p)
        t = _tables(self)
        if t.log is not None:
            return t.exp[-t.log[a] % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.f == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        t = _tables(self)
        if t.log is not None:
            return t.exp[t.log[a] * e % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def header(self) -> str:
        return "GF " + " ".join(str(x) for x in (self.p, self.f, *self.modulus))


@dataclass
class _Tables:
    log: list[int] | None
    exp: list[int]
    add: list[int] | None


def _prime_poly_mulmod(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    p, n, mod = F.p, F.f, F.modulus
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(n):
                prod[k - n + j] -= c * mod[j]
        prod[k] = 0
    return [c % p for c in prod[:n]]


@lru_cache(maxsize=64)
def _tables(F: FieldSpec) -> _Tables:
    if F.q > _TABLE_LIMIT:
        return _Tables(None, [], None)
    exp = [0] * (F.q - 1)
    log = [0] * F.q
    x = [0, 1] + [0] * (F.f - 2)
    cur = [1] + [0] * (F.f - 1)
    for k in range(F.q - 1):
        v = F.from_vector(cur)
        exp[k] = v
        log[v] = k
        cur = _prime_poly_mulmod(F, cur, x)
    add = None
    if F.q <= 1024:
        vecs = [F.to_vector(a) for a in range(F.q)]
        add = [F.from_vector([x + y for x, y in zip(va, vb)]) for va in vecs for vb in vecs]
    return _Tables(log, exp, add)


def prime_field(p: int) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(p)
    return FieldSpec(p, 1, (0, 1))


@lru_cache(maxsize=64)
def _default_field(p: int, f: int) -> FieldSpec:
    if f == 1:
        return prime_field(p)
    return FieldSpec(p, f, least_primitive_poly(prime_field(p), f))


def make_field(p: int, f: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """GF(p^f) with the lexicographically least primitive modulus unless overridden.

    The prime field keeps the placeholder modulus x, which is never used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise ValueError("degree must be positive")
    if p**f > MAX_ORDER:
        raise TooLarge(f"{p}^{f} exceeds {MAX_ORDER}")
    if modulus is None:
        return _default_field(p, f)
    mod = tuple(int(c) % p for c in modulus)
    if f > 1 and (len(mod) != f + 1 or not is_primitive_poly(prime_field(p), mod)):
        raise ValueError(f"{mod} is not a primitive monic polynomial of degree {f}")
    return FieldSpec(p, f, mod if f > 1 else (0, 1))


def field_of_order(q: int) -> FieldSpec:
    from .arith import prime_power

    pf = prime_power(q)
    if pf is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(*pf)


def parse_field_header(line: str) -> FieldSpec:
    parts = line.split()
    if len(parts) < 4 or parts[0] != "GF":
        raise ValueError(f"bad field header {line!r}")
    p, f = int(parts[1]), int(parts[2])
    return make_field(p, f, [int(c) for c in parts[3:]])


def multiplicative_order(F: FieldSpec, a: int) -> int:
    if a == 0:
        raise FieldDivisionByZero("zero has no multiplicative order")
    order = F.q - 1
    for r in prime_divisors(F.q - 1):
        while order % r == 0 and F.pow(a, order // r) == 1:
            order //= r
    return order


def primitive_element(F: FieldSpec) -> FieldElement:
    if F.f == 1:
        gen = next(a for a in range(1, F.p) if multiplicative_order(F, a) == F.p - 1)
    else:
        gen = F.p  # the class of x
    if multiplicative_order(F, gen) != F.q - 1:
        raise AssertionError(f"{gen} is not primitive in {F}")
    return FieldElement(F, gen)


# --- element wrapper ------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} out of range for {self.spec}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec.to_vector(self.value))

    def _other(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.value
        return other % self.spec.p if self.spec.f == 1 else self.spec.from_vector([other])

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return self * fe_inv(FieldElement(self.spec, self._other(other)))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.spec!r}, {self.value})"


def fe(F: FieldSpec, value: int) -> FieldElement:
    return FieldElement(F, value)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.value))


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    return a**e
