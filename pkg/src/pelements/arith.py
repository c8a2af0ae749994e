"""Small integer helpers: primality, trial-division factoring, p-parts."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

TRIAL_BOUND = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=4096)
def factor_partial(n: int, bound: int = TRIAL_BOUND) -> tuple[tuple[int, int], ...]:
    """Trial-divide ``n`` by all d <= bound.

    Returns (base, exponent) pairs sorted by base. Any cofactor left over after
    trial division is returned as a final pair with exponent 1; it is prime
    when it is below ``bound**2``.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    d = 2
    while d <= bound and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> dict[int, int]:
    """Full factorization for integers whose prime factors lie below the trial bound squared."""
    return dict(factor_partial(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factor_partial(n)]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, f) with q = p**f, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factor_partial(q)
    if len(fac) != 1 or not is_prime(fac[0][0]):
        return None
    return fac[0]


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def prime_powers_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if prime_power(q) is not None]


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def p_prime_part(n: int, p: int) -> int:
    """Largest divisor of n coprime to p."""
    return n // p_part(n, p)


def is_p_power(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


def is_pi_number(n: int, primes: frozenset[int] | set[int] | tuple[int, ...]) -> bool:
    """True iff every prime divisor of n lies in ``primes``."""
    for p in primes:
        while n % p == 0:
            n //= p
    return n == 1


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
