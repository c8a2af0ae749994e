"""Exact positive reals of the form c * prod(b_i ** e_i) with rational c and e_i.

Comparison never consults floating point. A cheap enclosure of the base-2
logarithm, computed with integer arithmetic only, settles most comparisons;
anything it cannot separate is decided by clearing exponent denominators and
comparing big integers.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .arith import TRIAL_BOUND, factor_partial, lcm

Rational = Union[int, Fraction]


class NonRepresentable(ArithmeticError):
    """Raised when a value falls outside the ExactBound domain."""


class Cmp(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Approx(NamedTuple):
    value: float
    log2: float
    overflow: bool


@dataclass(frozen=True, eq=False)
class ExactBound:
    coeff: Fraction
    factors: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        if self.coeff < 0:
            raise NonRepresentable("negative values are not supported")
        for base, exp in self.factors:
            if base < 2 or exp == 0 or exp.denominator == 1:
                raise ValueError(f"unnormalized factor {base}^{exp}")

    def __mul__(self, other: ExactBound | int) -> ExactBound:
        return eb_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: ExactBound | int) -> ExactBound:
        return eb_mul(self, eb_pow(_coerce(other), -1))

    def __pow__(self, e: Rational) -> ExactBound:
        return eb_pow(self, e)

    def _cmp(self, other: object) -> int:
        if isinstance(other, (int, Fraction)):
            other = eb_from_rational(other)
        if not isinstance(other, ExactBound):
            return NotImplemented  # type: ignore[return-value]
        return eb_cmp(self, other).value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (ExactBound, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: object) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: object) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: object) -> bool:
        return self._cmp(other) >= 0

    __hash__ = None  # type: ignore[assignment]

    def is_integer(self) -> bool:
        return not self.factors and self.coeff.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise NonRepresentable(f"{self} is not an integer")
        return self.coeff.numerator

    def __str__(self) -> str:
        return eb_to_string(self)

    def __repr__(self) -> str:
        return f"ExactBound({eb_to_string(self)!r})"


def _coerce(x: ExactBound | Rational) -> ExactBound:
    return x if isinstance(x, ExactBound) else eb_from_rational(x)


def _normalize(coeff: Fraction, factors: dict[int, Fraction]) -> ExactBound:
    if coeff == 0:
        return ExactBound(Fraction(0))
    kept: list[tuple[int, Fraction]] = []
    for base in sorted(factors):
        exp = factors[base]
        if exp == 0:
            continue
        if exp.denominator == 1:
            coeff *= Fraction(base) ** int(exp)
        else:
            kept.append((base, exp))
    return ExactBound(coeff, tuple(kept))


def eb_from_integer(n: int) -> ExactBound:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return ExactBound(Fraction(n))


def eb_from_rational(x: Rational) -> ExactBound:
    x = Fraction(x)
    if x < 0:
        raise NonRepresentable("negative values are not supported")
    return ExactBound(x)


def eb_mul(a: ExactBound, b: ExactBound) -> ExactBound:
    merged = dict(a.factors)
    for base, exp in b.factors:
        merged[base] = merged.get(base, Fraction(0)) + exp
    return _normalize(a.coeff * b.coeff, merged)


def eb_pow(a: ExactBound, e: Rational, bound: int = TRIAL_BOUND) -> ExactBound:
    """Raise ``a`` to the rational power ``e``.

    Integer powers of the coefficient stay unfactored. Fractional powers split
    the coefficient by trial division up to ``bound``; a leftover cofactor
    becomes a base of its own, so the result stays exact either way.
    """
    e = Fraction(e)
    if e == 0:
        return eb_from_integer(1)
    if a.coeff == 0:
        if e < 0:
            raise NonRepresentable("zero has no negative powers")
        return a
    factors = {base: exp * e for base, exp in a.factors}
    if e.denominator == 1:
        return _normalize(a.coeff ** int(e), factors)
    for part, sign in ((a.coeff.numerator, 1), (a.coeff.denominator, -1)):
        if part == 1:
            continue
        for base, k in factor_partial(part, bound):
            factors[base] = factors.get(base, Fraction(0)) + sign * k * e
    return _normalize(Fraction(1), factors)


def eb_root_power(base: int, e: Rational) -> ExactBound:
    """``base ** e`` for a positive integer base."""
    return eb_pow(eb_from_integer(base), e)


# --- comparison -----------------------------------------------------------

_LOG_BITS = 64
_MANT_BITS = 128


@lru_cache(maxsize=8192)
def _log2_enclosure(n: int) -> tuple[int, int]:
    """Integers (lo, hi) with lo <= 2**64 * log2(n) <= hi, for n >= 1.

    Uses the squaring digit recurrence on truncated mantissas: rounding down
    gives a lower bound, rounding up plus one unit gives an upper bound.
    """
    k = n.bit_length() - 1
    shift = k - _MANT_BITS
    if shift > 0:
        m_lo = n >> shift
        m_hi = m_lo + (0 if (m_lo << shift) == n else 1)
    else:
        m_lo = m_hi = n << -shift
    one = 1 << _MANT_BITS
    two = one << 1

    def digits(m: int, round_up: bool) -> int:
        out = 0
        for _ in range(_LOG_BITS):
            sq = m * m
            m = -((-sq) >> _MANT_BITS) if round_up else sq >> _MANT_BITS
            out <<= 1
            if m >= two:
                out |= 1
                m = (m + 1) >> 1 if round_up else m >> 1
        return out

    base = k << _LOG_BITS
    lo = base + digits(m_lo, False)
    hi = base + digits(m_hi, True) + 1 if m_hi < two else base + (1 << _LOG_BITS)
    return lo, hi


def _ratio_terms(a: ExactBound, b: ExactBound) -> dict[int, Fraction]:
    """Exponent map of a/b over integer bases (coefficients included)."""
    terms: dict[int, Fraction] = {}

    def add(base: int, exp: Fraction) -> None:
        if base > 1:
            terms[base] = terms.get(base, Fraction(0)) + exp

    for base, exp in a.factors:
        add(base, exp)
    for base, exp in b.factors:
        add(base, -exp)
    add(a.coeff.numerator, Fraction(1))
    add(a.coeff.denominator, Fraction(-1))
    add(b.coeff.numerator, Fraction(-1))
    add(b.coeff.denominator, Fraction(1))
    return {k: v for k, v in terms.items() if v != 0}


def _sign_by_enclosure(terms: dict[int, Fraction]) -> int | None:
    denom = 1
    for exp in terms.values():
        denom = lcm(denom, exp.denominator)
    lo = hi = 0
    for base, exp in terms.items():
        l, h = _log2_enclosure(base)
        k = exp.numerator * (denom // exp.denominator)
        if k > 0:
            lo += k * l
            hi += k * h
        else:
            lo += k * h
            hi += k * l
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def _sign_exact(terms: dict[int, Fraction]) -> int:
    denom = 1
    for exp in terms.values():
        denom = lcm(denom, exp.denominator)
    up = 1
    down = 1
    for base, exp in terms.items():
        k = int(exp * denom)
        if k > 0:
            up *= base**k
        else:
            down *= base ** (-k)
    return (up > down) - (up < down)


def eb_cmp(a: ExactBound, b: ExactBound) -> Cmp:
    if a.coeff == 0 or b.coeff == 0:
        return Cmp((a.coeff != 0) - (b.coeff != 0))
    terms = _ratio_terms(a, b)
    if not terms:
        return Cmp.EQUAL
    sign = _sign_by_enclosure(terms)
    if sign is None:
        sign = _sign_exact(terms)
    return Cmp(sign)


def eb_cmp_exact(a: ExactBound, b: ExactBound) -> Cmp:
    """Same verdict as eb_cmp, always through the big-integer route."""
    if a.coeff == 0 or b.coeff == 0:
        return Cmp((a.coeff != 0) - (b.coeff != 0))
    terms = _ratio_terms(a, b)
    return Cmp(_sign_exact(terms)) if terms else Cmp.EQUAL


# --- display and serialization -------------------------------------------


def eb_to_float(a: ExactBound) -> Approx:
    """Advisory double approximation; never used to decide anything."""
    if a.coeff == 0:
        return Approx(0.0, -math.inf, False)
    if not a.factors:
        try:
            return Approx(float(a.coeff), math.log2(a.coeff), False)
        except OverflowError:
            pass
    lg = math.log2(a.coeff.numerator) - math.log2(a.coeff.denominator)
    for base, exp in a.factors:
        lg += float(exp) * math.log2(base)
    if lg >= 1024:
        return Approx(math.inf, lg, True)
    return Approx(2.0**lg, lg, False)


def eb_to_string(a: ExactBound) -> str:
    parts = [str(a.coeff)]
    parts.extend(f"{base}^({exp.numerator}/{exp.denominator})" for base, exp in a.factors)
    return " * ".join(parts)


_FACTOR_RE = re.compile(r"^(\d+)\^\((-?\d+)/(\d+)\)$")


def eb_parse(text: str) -> ExactBound:
    chunks = [c.strip() for c in text.split("*")]
    try:
        coeff = Fraction(chunks[0])
    except ValueError as exc:
        raise ValueError(f"bad coefficient {chunks[0]!r}") from exc
    factors: dict[int, Fraction] = {}
    for chunk in chunks[1:]:
        m = _FACTOR_RE.match(chunk)
        if m is None:
            raise ValueError(f"bad factor {chunk!r}")
        base = int(m.group(1))
        factors[base] = factors.get(base, Fraction(0)) + Fraction(int(m.group(2)), int(m.group(3)))
    return _normalize(coeff, factors)
