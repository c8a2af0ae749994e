"""Closed-form bounds, printed tables and combinatorial lemma checkers.

Every inequality is decided with ExactBound comparison or plain integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import is_prime, prime_power
from .arith import p_prime_part as _p_prime_part
from .exact import (
    ExactBound,
    _log2_enclosure,
    NonRepresentable,
    eb_from_integer,
    eb_root_power,
)

Rational = int | Fraction


class NotPrimePower(ValueError):
    pass


class NoSuchRow(KeyError):
    pass


class HypothesisViolated(ValueError):
    pass


class UnsupportedCase(ValueError):
    pass


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @classmethod
    def of(cls, flag: bool) -> Verdict:
        return cls.TRUE if flag else cls.FALSE


# --- base-p digits ------------------------------------------------------------


@dataclass(frozen=True)
class BasePExpansion:
    p: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev = -1
        for a, b in self.terms:
            if not 0 < a < self.p or b <= prev:
                raise ValueError(f"bad digit ({a}, {b}) in base {self.p}")
            prev = b

    @property
    def n(self) -> int:
        return sum(a * self.p**b for a, b in self.terms)

    def cycle_type(self) -> list[int]:
        """Cycle lengths of x_p(n), ascending."""
        return [self.p**b for a, b in self.terms for _ in range(a)]


def base_p_expansion(n: int, p: int) -> BasePExpansion:
    if n < 1 or not is_prime(p):
        raise ValueError(f"need n >= 1 and p prime, got ({n}, {p})")
    terms = []
    b = 0
    while n:
        n, a = divmod(n, p)
        if a:
            terms.append((a, b))
        b += 1
    return BasePExpansion(p, tuple(terms))


# --- the bound functions -------------------------------------------------------

ALPHA = {5: 96, 7: 144, 11: 600}
ALPHA_EXTRA = {13: (4, 138240), 19: (2, 1140)}


def _prime_of(q: int) -> int:
    pf = prime_power(q)
    if pf is None:
        raise NotPrimePower(f"{q} is not a prime power")
    return pf[0]


def h_p(p: int, m: Rational) -> ExactBound:
    m = Fraction(m)
    if m <= 0:
        raise ValueError("h_p needs a positive argument")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return eb_root_power(3, (m - 1) / 2)
    if p == 3:
        return eb_root_power(20, (m - 1) / 4)
    return eb_root_power(math.factorial(p - 1), (m - 1) / (p - 2))


def _row(base: int, n: Rational, k: int, p: int) -> ExactBound:
    """base^(n/k) * h_p(n/k)."""
    x = Fraction(n) / k
    return eb_root_power(base, x) * h_p(p, x)


def f_bound(n: Rational, q: int) -> ExactBound:
    p = _prime_of(q)
    if p == 2:
        return _row(3 * (q**3 - 1), n, 3, p)
    if q == 3:
        return _row(640, n, 4, p)
    if q in (9, 27):
        return _row(2 * (q**2 - 1), n, 2, p)
    if q in ALPHA:
        return _row(ALPHA[q], n, 2, p)
    return _row(q - 1, n, 1, p)


def i_bound(n: Rational, q: int) -> ExactBound:
    """The irreducible-case bound; side-conditioned rows beat bare q rows."""
    p = _prime_of(q)
    n = Fraction(n)
    integral = n.denominator == 1
    if p == 2:
        return _row(3 * (q**3 - 1), n, 3, p)
    if q == 3:
        if integral and n.numerator % 4 != 0:
            return _row(2 * (q**2 - 1), n, 2, p)
        return _row(640, n, 4, p)
    if q in (9, 27):
        return _row(2 * (q**2 - 1), n, 2, p)
    if q in ALPHA:
        if integral and n.numerator % 2 == 1:
            return _row(q - 1, n, 1, p)
        return _row(ALPHA[q], n, 2, p)
    return _row(q - 1, n, 1, p)


def alpha(q: int) -> int:
    if q in ALPHA:
        return ALPHA[q]
    if q in ALPHA_EXTRA:
        return ALPHA_EXTRA[q][1]
    raise NoSuchRow(f"alpha is undefined at q={q}")


def p_prime_part(n: int, p: int) -> int:
    return _p_prime_part(n, p)


def thmC_bound(n: int, q: int, p: int) -> int:
    """n_{p'} * (q^n - 1)."""
    if _prime_of(q) != p:
        raise ValueError(f"{q} is not a power of {p}")
    return p_prime_part(n, p) * (q**n - 1)


def steinberg_count(n: int, q: int) -> int:
    """Number of p-elements of GL_n(q)."""
    _prime_of(q)
    return q ** (n * (n - 1))


def basicI_bound(r: int, m: int, q: int) -> int:
    """r^m (q^{r^m} - 1)/(q - 1)."""
    d = r**m
    return d * (q**d - 1) // (q - 1)


# --- tables ----------------------------------------------------------------------


def _norm_label(label: str) -> str:
    out = label
    for a, b in (("\\circ", "o"), ("∘", "o"), ("−", "-"), ("≀", "wr"), ("\\wr", "wr"), ("⋊", "x"), ("\\rtimes", "x")):
        out = out.replace(a, b)
    return "".join(out.split())


@dataclass(frozen=True)
class TableEntry:
    row: int
    label: str
    dim: int
    qs: tuple[int, ...]
    values: tuple[int, ...]

    def value_at(self, q: int) -> int:
        return self.values[self.qs.index(q)]


TABLE1: tuple[TableEntry, ...] = (
    TableEntry(1, "6∘3^{1+2}.Sp_2(3)", 3, (7,), (1296,)),
    TableEntry(2, "(q-1)∘2^{1+2}.Sp_2(2)", 2, (5, 7), (96, 144)),
    TableEntry(3, "2^{1+4}.Sp_4(2)", 4, (7,), (23040,)),
    TableEntry(4, "(q-1)∘2^{1+4}.Sp_4(2)", 4, (7, 11, 13), (69120, 115200, 138240)),
    TableEntry(5, "2^{1+4}.(5⋊4)", 4, (3,), (640,)),
    TableEntry(6, "4∘2^4.(Sp_2(2)≀Sym_2)", 4, (5,), (4608,)),
    TableEntry(7, "2^{1+4}.Sp_4(2)'", 4, (7,), (11520,)),
    TableEntry(8, "6∘2^{1+4}.Sp_4(2)'", 4, (7,), (34560,)),
    TableEntry(9, "6∘2^{1+4}.Sym_5", 4, (7,), (11520,)),
    TableEntry(10, "(q-1)∘2.Alt_5", 2, (11, 19), (600, 1140)),
    TableEntry(11, "10∘(2.Alt_5∘2.Alt_5).2", 4, (11,), (72000,)),
)

# Exceptions to the primitive-linear M_p bound; d is the dimension parameter.
TABLE4: tuple[TableEntry, ...] = (
    TableEntry(1, "3^2.Sp_2(3)", 3, (7,), (216,)),
    TableEntry(2, "2^2.Sp_2(2)", 2, (5, 7), (24, 24)),
    TableEntry(3, "2^4.Sp_4(2)", 4, (3,), (288,)),
    TableEntry(4, "2^4.Sp_4(2)", 4, (7, 11, 13), (11520, 11520, 11520)),
    TableEntry(5, "2^4.(5⋊4)", 4, (3,), (320,)),
    TableEntry(6, "2^4.(Sp_2(2)≀Sym_2)", 4, (5,), (1152,)),
    TableEntry(7, "2^4.Sp_4(2)'", 4, (7,), (5760,)),
    TableEntry(8, "2^4.Sym_5", 4, (7,), (1920,)),
    TableEntry(9, "Alt_5", 2, (11, 19), (60, 60)),
    TableEntry(10, "Alt_5≀Sym_2", 4, (11,), (7200,)),
)


def _lookup(table: Sequence[TableEntry], label: str, dim: int, q: int) -> int:
    key = _norm_label(label)
    for entry in table:
        if _norm_label(entry.label) == key and entry.dim == dim and q in entry.qs:
            return entry.value_at(q)
    raise NoSuchRow(f"no row ({label!r}, {dim}, {q})")


def table1_lookup(label: str, n: int, q: int) -> int:
    return _lookup(TABLE1, label, n, q)


def table4_lookup(label: str, d: int, q: int) -> int:
    return _lookup(TABLE4, label, d, q)


def table4_row(row: int) -> TableEntry:
    if not 1 <= row <= len(TABLE4):
        raise NoSuchRow(f"row {row}")
    return TABLE4[row - 1]


# (family, p) -> (multiplier, power of q); None for the power means q^rank.
LIE_CAPS: dict[tuple[str, int], tuple[int, int | None]] = {
    ("PSp", 2): (2, None),
    ("POmega+", 2): (2, None),
    ("POmega-", 2): (2, None),
    ("2B2", 2): (2, 1),
    ("2G2", 3): (3, 1),
    ("3D4", 2): (2, 4),
    ("G2", 2): (2, 2),
    ("G2", 3): (3, 2),
    ("2F4", 2): (4, 4),
    ("F4", 2): (4, 4),
    ("F4", 3): (3, 4),
    ("E6", 2): (6, 6),
    ("E6", 3): (6, 6),
    ("2E6", 2): (6, 6),
    ("2E6", 3): (6, 6),
    ("E7", 2): (4, 7),
    ("E7", 3): (6, 7),
    ("E8", 2): (4, 8),
    ("E8", 3): (3, 8),
    ("E8", 5): (5, 8),
}

_FAMILY_ALIASES = {
    "²B₂": "2B2", "²G₂": "2G2", "³D₄": "3D4", "G₂": "G2", "²F₄": "2F4", "F₄": "F4",
    "E₆": "E6", "²E₆": "2E6", "E6+": "E6", "E6-": "2E6", "E₇": "E7", "E₈": "E8",
    "POmega": "POmega+", "Sp": "PSp",
}


def lie_centralizer_cap(family: str, p: int, q: int, rank: int) -> ExactBound:
    """Cap on the centralizer order of a regular unipotent element; q^rank off-table."""
    if _prime_of(q) != p:
        raise ValueError(f"{q} is not a power of {p}")
    fam = _FAMILY_ALIASES.get(family, family)
    mult, power = LIE_CAPS.get((fam, p), (1, None))
    return eb_from_integer(mult * q ** (rank if power is None else power))


# --- alternating-group elements --------------------------------------------------


def x_p_element(n: int, p: int):
    """A permutation with a_i cycles of length p^{b_i}, on consecutive points."""
    from .elements import Permutation

    img = list(range(n))
    start = 0
    for length in base_p_expansion(n, p).cycle_type():
        for j in range(length):
            img[start + j] = start + (j + 1) % length
        start += length
    return Permutation(tuple(img))


def _centralizer_from_cycle_type(lengths: Iterable[int]) -> int:
    counts: dict[int, int] = {}
    for length in lengths:
        counts[length] = counts.get(length, 0) + 1
    out = 1
    for length, c in counts.items():
        out *= math.factorial(c) * length**c
    return out


def sym_centralizer_order(e: BasePExpansion) -> int:
    """|C_{Sym_n}(x_p(n))| = prod a_i! (p^{b_i})^{a_i}."""
    return math.prod(math.factorial(a) * e.p ** (a * b) for a, b in e.terms)


def digit_product(e: BasePExpansion) -> int:
    """prod a_i! p^{b_i}, the quantity bounded in the digit lemmas."""
    return math.prod(math.factorial(a) * e.p**b for a, b in e.terms)


def alt_centralizer_order(cycle_type: Sequence[int], n: int) -> int:
    """|C_{Alt_n}(y)| for y of the given nontrivial cycle type padded to degree n."""
    full = [c for c in cycle_type if c > 1] + [1] * (n - sum(c for c in cycle_type if c > 1))
    sym = _centralizer_from_cycle_type(full)
    splits = all(c % 2 == 1 for c in full) and len(set(full)) == len(full)
    return sym if splits else sym // 2


def _two_element_types(n: int) -> Iterable[tuple[int, ...]]:
    """Cycle types of 2-elements of Sym_n (nontrivial cycles only)."""

    def rec(rest: int, max_len: int) -> Iterable[tuple[int, ...]]:
        yield ()
        length = max_len
        while length >= 2:
            if length <= rest:
                for tail in rec(rest - length, length):
                    yield (length, *tail)
            length //= 2

    top = 1 << (n.bit_length() - 1)
    yield from rec(n, top)


def _perm_from_type(n: int, lengths: Sequence[int]):
    from .elements import Permutation

    img = list(range(n))
    start = 0
    for length in sorted(lengths):
        for j in range(length):
            img[start + j] = start + (j + 1) % length
        start += length
    return Permutation(tuple(img))


def alt_small_centralizer_element(n: int, p: int, target_parity: int):
    """A 2-element of the Sym_n coset of the given parity (0 even, 1 odd) with small Alt_n-centralizer.

    Tries x(n), then x(n-1) for odd n or x(n-2) for even n, padded with fixed
    points. For odd n the padded x(n-1) equals x(n), so when neither lands in
    the coset the best 2-element type of that parity is used instead.
    """
    if p != 2:
        raise UnsupportedCase("the parity correction is only needed for p = 2")
    if n < 5:
        raise HypothesisViolated(f"need n >= 5, got {n}")
    if (p, n) == (2, 6):
        raise UnsupportedCase("n = 6 needs the exceptional outer automorphisms")
    candidates = [base_p_expansion(n, 2), base_p_expansion(n - (1 if n % 2 else 2), 2)]
    for e in candidates:
        lengths = [c for c in e.cycle_type() if c > 1]
        if sum(c - 1 for c in lengths) % 2 == target_parity:
            return _perm_from_type(n, lengths)
    best = min(
        (t for t in _two_element_types(n) if sum(c - 1 for c in t) % 2 == target_parity),
        key=lambda t: (alt_centralizer_order(t, n), t),
    )
    return _perm_from_type(n, best)


# --- digit lemmas ------------------------------------------------------------------


def check_lemma_basep(n: int, p: int) -> tuple[bool | None, bool | None]:
    """(part i, part ii); None where that part's hypothesis does not apply."""
    if not is_prime(p) or n < p:
        raise HypothesisViolated(f"need p prime and n >= p, got ({n}, {p})")
    e = base_p_expansion(n, p)
    top = max(b for _, b in e.terms)
    part_i_applies = p >= 5 or (p == 3 and top > 1) or (p == 2 and top > 3)
    if part_i_applies:
        return 2 * sum(a + b for a, b in e.terms) <= n, None
    return None, digit_product(e) ** 2 <= p**n


def check_lemma_parity(n: int) -> int:
    """Least m with popcount(n) and popcount(n - m) of different parity."""
    if n < 2:
        raise HypothesisViolated(f"need n >= 2, got {n}")
    k = bin(n).count("1")
    for m in range(1, n + 1):
        if (bin(n - m).count("1") - k) % 2:
            return m
    raise AssertionError("unreachable: n - n = 0 has popcount 0")


def check_lemma_basepbound(n: int, p: int) -> tuple[bool, bool | None]:
    if not is_prime(p) or p <= 3 or n < 2:
        raise HypothesisViolated(f"need p > 3 prime and n >= 2, got ({n}, {p})")
    e = base_p_expansion(n, p)
    cap = h_p(p, n)
    prod = digit_product(e)
    general = eb_from_integer(prod) <= cap
    all_one = all(a == 1 for a, _ in e.terms)
    return general, (eb_from_integer(2 * prod) <= cap) if all_one else None


# --- the m,t lemma --------------------------------------------------------------------

MT_PARTS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


def mtbound_applies(part: str, m: int, q: int, t: int) -> bool:
    p = _prime_of(q)
    n = m * t
    if part == "i":
        return p == 2
    if part == "ii":
        return q == 3
    if part == "iii":
        return q == 3 and n % 4 != 0
    if part == "iv":
        return q in (9, 27)
    if part == "v":
        return q in ALPHA
    if part == "vi":
        return q in ALPHA and n % 2 == 1
    if part == "vii":
        return p > 2 and q not in (3, 5, 7, 9, 11, 27)
    raise ValueError(f"unknown part {part!r}")


def mtbound_sides(part: str, m: int, t: int, q: int) -> tuple[ExactBound, ExactBound]:
    if m < 1 or t < 1:
        raise HypothesisViolated("m and t must be positive")
    if not mtbound_applies(part, m, q, t):
        raise HypothesisViolated(f"part {part} does not apply to (m, t, q) = ({m}, {t}, {q})")
    p = _prime_of(q)
    n = m * t
    if part in ("i", "ii"):
        mult = p_prime_part(m, 2)
    elif part in ("vi", "vii"):
        mult = p_prime_part(m, p)
    else:
        mult = m
    lhs = eb_from_integer(mult * (q**m - 1)) ** t * h_p(p, t)
    if part == "i":
        rhs = _row(3 * (q**3 - 1), n, 3, p)
    elif part == "ii":
        rhs = _row(640, n, 4, p)
    elif part in ("iii", "iv"):
        rhs = _row(2 * (q**2 - 1), n, 2, p)
    elif part == "v":
        rhs = _row(ALPHA[q], n, 2, p)
    else:
        rhs = _row(q - 1, n, 1, p)
    return lhs, rhs


def check_mtbound(part: str, m: int, t: int, q: int) -> bool:
    lhs, rhs = mtbound_sides(part, m, t, q)
    return lhs <= rhs


def check_mtbound_extra(q: int, n: int) -> bool:
    """alpha(q)^{n/m(q)} h_p(n/m(q)) <= (q-1)^n h_p(n) for q in {13, 19}, m(q) | n."""
    if q not in ALPHA_EXTRA:
        raise HypothesisViolated(f"q must be 13 or 19, got {q}")
    mq, a = ALPHA_EXTRA[q]
    if n < 1 or n % mq:
        raise HypothesisViolated(f"m({q}) = {mq} must divide n = {n}")
    p = _prime_of(q)
    return _row(a, n, mq, p) <= _row(q - 1, n, 1, p)


# --- wreath and product lemmas ------------------------------------------------------


def check_bothcases(q: int, s: int, t: int) -> bool:
    """((q^s-1)/(q-1))^t q^{t-1} <= (q^{s^t}-1)/(q-1), cleared of denominators."""
    _prime_of(q)
    if s < 2 or t < 1:
        raise HypothesisViolated(f"need s >= 2 and t >= 1, got ({s}, {t})")
    lhs = (q**s - 1) ** t * q ** (t - 1)
    rhs = (q ** (s**t) - 1) * (q - 1) ** (t - 1)
    return lhs <= rhs


@dataclass(frozen=True)
class StrangeItem:
    """One factor: ``row`` None means M = d_{p'}(q^d - 1)/(q - 1)."""

    M: int
    d: int
    row: int | None = None


def check_strange(q1: int, items: Sequence[StrangeItem]) -> bool:
    """(q1 - 1) prod M_i <= (n1)_{p'} (q1^{n1} - 1) with n1 = prod d_i."""
    p = _prime_of(q1)
    if not items:
        raise HypothesisViolated("need at least one item")
    for it in items:
        if it.d < 2:
            raise HypothesisViolated(f"d = {it.d} < 2")
        if it.row is None:
            if it.M != p_prime_part(it.d, p) * (q1**it.d - 1) // (q1 - 1):
                raise HypothesisViolated(f"M = {it.M} is not d_p'(q^d-1)/(q-1) at d = {it.d}")
        else:
            entry = table4_row(it.row)
            if it.d != entry.dim or q1 not in entry.qs or it.M != entry.value_at(q1):
                raise HypothesisViolated(f"({it.M}, {it.d}, {q1}) is not in row {it.row}")
    rows = [it.row for it in items if it.row is not None]
    for i, a in enumerate(rows):
        for b in rows[i + 1 :]:
            if a == b and a not in (9, 10):
                raise HypothesisViolated(f"row {a} repeated")
            if (2 <= a <= 8 and b not in (1, 9, 10)) or (2 <= b <= 8 and a not in (1, 9, 10)):
                raise HypothesisViolated(f"rows {a} and {b} cannot occur together")
    if len(items) == 1 and items[0].row is not None:
        raise HypothesisViolated("a single item must be of the generic kind")
    n1 = math.prod(it.d for it in items)
    return (q1 - 1) * math.prod(it.M for it in items) <= p_prime_part(n1, p) * (q1**n1 - 1)


# --- order bounds with logarithms ------------------------------------------------------

_ONE = 1 << 64


def _log2_bounds(n: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= log2(n) <= hi; exact when n is a power of two."""
    if n & (n - 1) == 0:
        k = Fraction(n.bit_length() - 1)
        return k, k
    lo, hi = _log2_enclosure(n)
    return Fraction(lo, _ONE), Fraction(hi, _ONE)


def _two_pow_poly_check(value: int, n: int, a: int, b: int) -> Verdict:
    """Decide value <= 2^{a (log2 n)^2 + b log2 n}; the exponent is increasing in log2 n."""
    if value < 1 or n < 2:
        raise HypothesisViolated("need value >= 1 and n >= 2")
    v = eb_from_integer(value)
    fl = n.bit_length() - 1
    ce = fl if n & (n - 1) == 0 else fl + 1
    enclosures = [(Fraction(fl), Fraction(ce)), _log2_bounds(n)]
    for lo, hi in enclosures:
        low_cap = eb_root_power(2, a * lo * lo + b * lo)
        high_cap = eb_root_power(2, a * hi * hi + b * hi)
        if v <= low_cap:
            return Verdict.TRUE
        if v > high_cap:
            return Verdict.FALSE
    return Verdict.UNDECIDED


def thmD_bound(n: int) -> ExactBound:
    """2^{2 (log2 n)^2 + log2 n}; representable exactly only for n a power of two."""
    if n < 2:
        raise HypothesisViolated(f"need n >= 2, got {n}")
    if n & (n - 1):
        raise NonRepresentable(f"log2({n}) is irrational; use thmD_check")
    k = n.bit_length() - 1
    return eb_from_integer(2 ** (2 * k * k + k))


def thmD_check(order: int, n: int) -> Verdict:
    return _two_pow_poly_check(order, n, 2, 1)


def perm_simple_check(order: int, P: int) -> Verdict:
    """|S| <= P^{2 log2 P} = 2^{2 (log2 P)^2}."""
    return _two_pow_poly_check(order, P, 2, 0)


def rep_simple_out_check(out: int, n: int) -> bool:
    """|Out(S)| <= 6 log2 n, decided as 2^{out} <= n^6."""
    if out < 1 or n < 2:
        raise HypothesisViolated("need out >= 1 and n >= 2")
    return 2**out <= n**6


def h_p_power_cap(p: int, n: int) -> bool:
    """h_p(n) <= p^{n-1}."""
    return h_p(p, n) <= eb_from_integer(p ** (n - 1))

