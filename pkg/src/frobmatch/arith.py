"""Integer and modular arithmetic primitives shared by every other module.

Everything here is exact integer arithmetic except `log_integral`, which is
the one numerical routine in the package (documented tolerance 1e-9).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

# Segmented sieve block: 2^18 flags keeps the working set cache-sized while
# still amortizing the per-block setup.
_BLOCK = 1 << 18

# Growing cache of small primes used by trial division.
_small_primes: list[int] = [2, 3, 5, 7, 11, 13]


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to `limit`, ascending."""

    limit: int
    primes: tuple[int, ...]

    @classmethod
    def up_to(cls, limit: int) -> "PrimeTable":
        return cls(limit, tuple(primes_in(0, limit)))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """n = D * m**2 with D squarefree."""

    n: int
    D: int
    m: int


def _sieve_upto(n: int) -> list[int]:
    # Plain Eratosthenes, used for base primes and small ranges.
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            start = p * p
            flags[start::p] = bytearray(len(range(start, n + 1, p)))
    return [i for i in range(n + 1) if flags[i]]


def small_primes(limit: int) -> list[int]:
    """Shared, growing prime cache; covers at least [2, limit], maybe more."""
    global _small_primes
    if _small_primes[-1] < limit:
        _small_primes = _sieve_upto(max(limit, 2 * _small_primes[-1]))
    return _small_primes


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes q with lo < q <= hi, ascending.

    Segmented sieve, so hi up to ~1e9 stays memory-bounded.
    """
    if not 0 <= lo <= hi:
        raise ValueError(f"need 0 <= lo <= hi, got ({lo}, {hi})")
    if hi < 2:
        return []
    if hi <= _BLOCK:
        return [p for p in _sieve_upto(hi) if p > lo]
    base = _sieve_upto(math.isqrt(hi))
    out: list[int] = []
    start = max(lo + 1, 2)
    while start <= hi:
        stop = min(start + _BLOCK, hi + 1)
        flags = bytearray([1]) * (stop - start)
        for p in base:
            if p * p >= stop:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            flags[first - start :: p] = bytearray(len(range(first, stop, p)))
        out.extend(start + i for i, f in enumerate(flags) if f)
        start = stop
    return out


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; 0 iff gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd n >= 1, got n={n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    """Split n = D * m**2 with D squarefree, by trial division up to sqrt(n).

    Adequate for the desk scale here (n up to ~1e8); isolated so a faster
    factoring backend could be swapped in.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d, m = 1, 1
    rest = n
    for p in small_primes(math.isqrt(n) + 1):
        if p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        m *= p ** (e // 2)
        if e % 2:
            d *= p
    d *= rest  # leftover is prime (or 1), hence squarefree
    return SquarefreeDecomposition(n, d, m)


def squarefree_part(n: int) -> int:
    return squarefree_decompose(n).D


def is_perfect_square(n: int) -> bool:
    """Exact integer test: floor(sqrt(n))**2 == n."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine for desk-scale n)."""
    if n < 2:
        return False
    for p in small_primes(math.isqrt(n) + 1):
        if p * p > n:
            break
        if n % p == 0:
            return n == p
    return True


def log_integral(x: float) -> float:
    """li(x) = integral of dt/log(t) from 2 to x.

    Adaptive quadrature with relative tolerance 1e-9.
    """
    if x <= 2:
        raise ValueError(f"log_integral needs x > 2, got {x}")
    val, _err = quad(lambda t: 1.0 / math.log(t), 2.0, x, epsrel=1e-10, limit=200)
    return val
