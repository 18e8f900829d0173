"""Exact integer utilities: primality, prime streams, symbols, discriminants, factoring."""

from __future__ import annotations

import math
from math import gcd, isqrt

# Deterministic Miller-Rabin witness sets (Sorenson-Webster et al.); each entry
# (limit, witnesses) proves primality for all n < limit.
_MR_WITNESS_SETS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

DETERMINISTIC_PRIMALITY_LIMIT = _MR_WITNESS_SETS[-1][0]

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_round(n: int, a: int, d: int, r: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for n below ~3.3e24 (proved witness sets)."""
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= DETERMINISTIC_PRIMALITY_LIMIT:
        raise ValueError(f"primality input {n} exceeds deterministic witness range")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for limit, witnesses in _MR_WITNESS_SETS:
        if n < limit:
            return all(_mr_round(n, a % n, d, r) for a in witnesses if a % n)
    raise AssertionError("unreachable")


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending (simple byte sieve)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, b in enumerate(sieve) if b]


def primes_stream(limit: int):
    """Yield all primes <= limit in increasing order.

    Segmented and fully lazy: the base sieve grows only as segments advance,
    so astronomically large limits cost nothing until actually consumed."""
    if limit < 2:
        return
    block = 1 << 20
    if limit <= block:
        yield from sieve_primes(limit)
        return
    base = sieve_primes(block)
    yield from base
    start = block + 1
    while start <= limit:
        end = min(start + block - 1, limit)
        need = isqrt(end)
        if base[-1] < need:
            base = sieve_primes(need)
        seg = bytearray([1]) * (end - start + 1)
        for p in base:
            if p * p > end:
                break
            first = max(p * p, (start + p - 1) // p * p)
            if first > end:
                continue
            seg[first - start :: p] = bytearray(len(seg[first - start :: p]))
        for i, b in enumerate(seg):
            if b:
                yield start + i
        start = end + 1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker: modulus must be >= 1")
    sign = 1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol for odd n via quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _rho_factor(n: int) -> int:
    # Brent-style rho with deterministic parameter sequence; n odd composite.
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to factor {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: e}; trial division then Pollard rho."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in _TINY_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 49
    while p * p <= n and p < 100_000:
        p += 2
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho_factor(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_kernel(d: int) -> int:
    """Squarefree part of d (same sign)."""
    if d == 0:
        raise ValueError("kernel of 0 undefined")
    sign = -1 if d < 0 else 1
    k = 1
    for p, e in factorize(d).items():
        if e % 2:
            k *= p
    return sign * k


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)): the squarefree kernel m, or 4m if m != 1 mod 4."""
    if d == 0 or is_square(d):
        raise ValueError(f"{d} defines no quadratic field")
    m = squarefree_kernel(d)
    return m if m % 4 == 1 else 4 * m


def valuation(n: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


__all__ = [
    "is_prime",
    "primes_stream",
    "sieve_primes",
    "kronecker",
    "factorize",
    "squarefree_kernel",
    "fundamental_discriminant",
    "is_square",
    "isqrt",
    "valuation",
    "DETERMINISTIC_PRIMALITY_LIMIT",
]
