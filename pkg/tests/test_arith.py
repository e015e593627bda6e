import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from frobmatch.arith import (
    PrimeTable,
    is_perfect_square,
    is_prime,
    jacobi_symbol,
    log_integral,
    primes_in,
    squarefree_decompose,
)


def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


class TestPrimes:
    def test_small_ranges(self):
        assert primes_in(10, 20) == [11, 13, 17, 19]
        assert primes_in(0, 1) == []
        assert len(primes_in(50, 100)) == 10  # by trial division below

    def test_against_trial_division(self):
        assert primes_in(50, 100) == [n for n in range(51, 101) if _is_prime_trial(n)]

    def test_segmented_path_matches_trial_division(self):
        lo, hi = (1 << 18) - 50, (1 << 18) + 2000
        assert primes_in(lo, hi) == [n for n in range(lo + 1, hi + 1) if _is_prime_trial(n)]

    def test_prime_table(self):
        table = PrimeTable.up_to(100)
        assert len(table.primes) == 25
        assert list(table.primes) == sorted(table.primes)
        assert all(_is_prime_trial(p) for p in table.primes)

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            primes_in(10, 5)
        with pytest.raises(ValueError):
            primes_in(-1, 5)

    def test_is_prime(self):
        assert [n for n in range(60) if is_prime(n)] == [
            n for n in range(60) if _is_prime_trial(n)
        ]
        assert is_prime(7919) and not is_prime(7917)


class TestJacobi:
    def test_examples(self):
        assert jacobi_symbol(1, 15) == 1
        assert jacobi_symbol(2, 7) == 1  # squares mod 7 are {1, 2, 4}
        assert jacobi_symbol(3, 9) == 0

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            jacobi_symbol(2, 10)
        with pytest.raises(ValueError):
            jacobi_symbol(2, -3)
        with pytest.raises(ValueError):
            jacobi_symbol(2, 0)

    @given(
        st.integers(-10**6, 10**6),
        st.integers(-10**6, 10**6),
        st.integers(0, 10**4),
    )
    def test_multiplicative_in_numerator(self, a, b, k):
        n = 2 * k + 1
        assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)

    @given(st.integers(-10**6, 10**6), st.integers(0, 300), st.integers(0, 300))
    def test_multiplicative_in_denominator(self, a, k1, k2):
        n1, n2 = 2 * k1 + 1, 2 * k2 + 1
        assert jacobi_symbol(a, n1 * n2) == jacobi_symbol(a, n1) * jacobi_symbol(a, n2)

    @given(st.integers(-10**9, 10**9), st.integers(0, 10**4))
    def test_matches_sympy(self, a, k):
        n = 2 * k + 1
        assert jacobi_symbol(a, n) == sympy.jacobi_symbol(a, n)

    def test_quadratic_reciprocity(self):
        odd_primes = primes_in(2, 100)
        for p in odd_primes:
            for q in odd_primes:
                if p == q:
                    continue
                sign = (-1) ** ((p - 1) // 2 * ((q - 1) // 2))
                assert jacobi_symbol(p, q) * jacobi_symbol(q, p) == sign


def _squarefree_sieve(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    for k in range(2, math.isqrt(limit) + 1):
        flags[k * k :: k * k] = bytearray(len(range(k * k, limit + 1, k * k)))
    return flags


class TestSquarefree:
    def test_examples(self):
        assert (squarefree_decompose(12).D, squarefree_decompose(12).m) == (3, 2)
        assert (squarefree_decompose(1).D, squarefree_decompose(1).m) == (1, 1)
        assert (squarefree_decompose(360).D, squarefree_decompose(360).m) == (10, 6)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            squarefree_decompose(0)

    def test_roundtrip_exhaustive(self):
        squarefree = _squarefree_sieve(100_000)
        for n in range(1, 100_001):
            dec = squarefree_decompose(n)
            assert dec.D * dec.m * dec.m == n
            assert squarefree[dec.D]

    def test_perfect_square_examples(self):
        assert is_perfect_square(0)
        assert is_perfect_square(400)
        assert is_perfect_square(20 * 45)  # 900 = 30^2
        assert not is_perfect_square(20 * 16)

    def test_perfect_square_iff_squarefree_part_one(self):
        for n in range(1, 100_001):
            assert is_perfect_square(n) == (squarefree_decompose(n).D == 1)


def _li_simpson(x: float, n_panels: int = 20_000) -> float:
    # independent oracle: substitute t = e^u, giving the smooth integrand
    # e^u / u on [log 2, log x], then composite Simpson
    a, b = math.log(2.0), math.log(x)
    h = (b - a) / (2 * n_panels)
    f = lambda u: math.exp(u) / u
    total = f(a) + f(b)
    total += 4 * sum(f(a + (2 * i + 1) * h) for i in range(n_panels))
    total += 2 * sum(f(a + 2 * i * h) for i in range(1, n_panels))
    return total * h / 3


class TestLogIntegral:
    def test_rejects_small_x(self):
        with pytest.raises(ValueError):
            log_integral(2.0)
        with pytest.raises(ValueError):
            log_integral(1.5)

    @pytest.mark.parametrize("x", [10.0, 1e4, 1e6])
    def test_against_simpson_oracle(self, x):
        assert log_integral(x) == pytest.approx(_li_simpson(x), rel=1e-9)

    def test_frozen_values(self):
        # values computed with the Simpson oracle (and cross-checked against
        # mpmath's offset li)
        assert log_integral(10.0) == pytest.approx(5.12043572466981, rel=1e-9)
        assert log_integral(1e6) == pytest.approx(78626.5039956821, rel=1e-9)
