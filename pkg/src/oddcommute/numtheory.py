"""Integer arithmetic used throughout the package.

Prime sets of integers, multiplicative orders, cyclotomic values and the
Zsigmondy-prime machinery, together with the small sweeps that recover the
exceptional prime powers for which ``q - 1``, ``q + 1`` or ``q**2 - 1`` are
smooth over a tiny set of primes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime

FACTOR_LIMIT = 1 << 63


class PrimeSet(tuple):
    """Ascending, duplicate-free tuple of primes.

    ``PrimeSet([5, 3, 3])`` is ``(3, 5)``.  Set-like helpers are provided
    because most callers only ask containment questions.
    """

    def __new__(cls, primes=()):
        ps = sorted({int(p) for p in primes})
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return super().__new__(cls, ps)

    def issubset(self, other) -> bool:
        return set(self) <= set(other)

    def odd(self) -> "PrimeSet":
        return PrimeSet(p for p in self if p != 2)

    def __repr__(self):
        return "{" + ", ".join(map(str, self)) + "}"


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{p: e}`` of ``1 <= n <= 2**63``."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    if n > FACTOR_LIMIT:
        raise OverflowError(f"{n} exceeds the factorization limit 2**63")
    return {int(p): int(e) for p, e in sorted(factorint(n).items())}


def prime_factors(n: int) -> PrimeSet:
    """The set of primes dividing ``n`` (empty for ``n = 1``)."""
    return PrimeSet(factorize(n))


def odd_prime_factors(n: int) -> PrimeSet:
    """Odd primes dividing ``n``."""
    return prime_factors(n).odd()


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    n = int(n)
    if n == 0:
        raise ValueError("p-part of 0 is undefined")
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q = p**e`` or None if ``q`` is not a prime power."""
    if q < 2:
        return None
    if q <= FACTOR_LIMIT:
        f = factorize(q)
        if len(f) != 1:
            return None
        ((p, e),) = f.items()
        return p, e
    raise OverflowError(f"{q} exceeds the factorization limit 2**63")


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def prime_powers(limit: int) -> list[int]:
    """All prime powers ``2 <= q <= limit`` in ascending order."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    out = []
    for p in range(2, limit + 1):
        if sieve[p]:
            q = p
            while q <= limit:
                out.append(q)
                q *= p
    return sorted(out)


def multiplicative_order(q: int, r: int) -> int:
    """Order of ``q`` modulo the prime ``r``: least ``i >= 1`` with ``r | q**i - 1``."""
    if not is_prime(r):
        raise ValueError(f"{r} is not prime")
    if q % r == 0:
        raise ValueError(f"{r} divides {q}")
    order = r - 1
    for p in factorize(r - 1) if r > 2 else {}:
        while order % p == 0 and pow(q, order // p, r) == 1:
            order //= p
    return order


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


@lru_cache(maxsize=4096)
def cyclotomic_eval(n: int, x: int) -> int:
    """Value of the ``n``-th cyclotomic polynomial at ``x``.

    Uses ``x**n - 1 = prod_{d | n} Phi_d(x)`` with exact division, so every
    proper-divisor value is computed (and cached) first.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if x < 2:
        raise ValueError("x must be >= 2")
    value = x**n - 1
    for d in divisors(n)[:-1]:
        quotient, rem = divmod(value, cyclotomic_eval(d, x))
        if rem:
            raise ArithmeticError(f"Phi_{d}({x}) does not divide {x}^{n}-1")
        value = quotient
    return value


class ZsigmondyException(enum.Enum):
    """The three families of ``(q, n)`` with no odd prime of order ``n`` mod it."""

    MERSENNE_N2 = "q a Mersenne prime, n = 2"
    FERMAT_OR_NINE_N1 = "q a Fermat prime or q = 9, n = 1"
    Q_TWO_N1_OR_N6 = "q = 2, n in {1, 6}"


@dataclass(frozen=True)
class ZsigmondyOutcome:
    prime: int | None = None
    exception: ZsigmondyException | None = None

    def __post_init__(self):
        if (self.prime is None) == (self.exception is None):
            raise ValueError("exactly one of prime/exception must be set")


def _is_fermat_prime(q: int) -> bool:
    return is_prime(q) and q > 2 and (q - 1) & (q - 2) == 0


def _is_mersenne_prime(q: int) -> bool:
    return is_prime(q) and (q + 1) & q == 0


def zsigmondy_exception(q: int, n: int) -> ZsigmondyException | None:
    """The exceptional family ``(q, n)`` falls into, if any."""
    if q == 2 and n in (1, 6):
        return ZsigmondyException.Q_TWO_N1_OR_N6
    if n == 2 and _is_mersenne_prime(q):
        return ZsigmondyException.MERSENNE_N2
    if n == 1 and (_is_fermat_prime(q) or q == 9):
        return ZsigmondyException.FERMAT_OR_NINE_N1
    return None


def _least_prime_factor(m: int, step: int) -> int:
    """Least prime factor of ``m > 1`` whose prime factors are all ``1 mod step``."""
    s = step + 1
    while s <= 1 << 20 and s * s <= m:
        if m % s == 0 and is_prime(s):
            return s
        s += step
    if is_prime(m):
        return m
    return min(factorint(m))


def zsigmondy_prime(q: int, n: int) -> ZsigmondyOutcome:
    """Smallest odd prime ``s`` with ``d_q(s) = n``, or the exception met.

    Every prime dividing ``Phi_n(q)`` either divides ``n`` or has order
    exactly ``n`` modulo it, so stripping the primes of ``2n`` leaves a
    cofactor whose least prime factor is the answer (cofactor 1 means none).
    """
    if not is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")
    if n < 1:
        raise ValueError("n must be >= 1")
    value = cyclotomic_eval(n, q)
    for p in prime_factors(2 * n):
        while value % p == 0:
            value //= p
    if value > 1:
        s = _least_prime_factor(value, n if n % 2 == 0 else 2 * n)
        if pow(q, n, s) != 1 or any(pow(q, n // d, s) == 1 for d in factorize(n)):
            raise ArithmeticError(f"{s} is not a primitive divisor of {q}^{n}-1")
        return ZsigmondyOutcome(prime=s)
    exc = zsigmondy_exception(q, n)
    if exc is None:
        raise ArithmeticError(f"no Zsigmondy prime for ({q}, {n}) outside the known exceptions")
    return ZsigmondyOutcome(exception=exc)


def smooth_within(n: int, allowed) -> bool:
    """True iff every prime divisor of ``n`` lies in ``allowed``.

    Only divides out the allowed primes, so ``n`` may be arbitrarily large.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    for p in allowed:
        while n % p == 0:
            n //= p
    return n == 1


def smooth_prime_powers(limit: int, value, allowed) -> list[int]:
    """Prime powers ``q <= limit`` for which ``value(q)`` is ``allowed``-smooth."""
    return [q for q in prime_powers(limit) if smooth_within(value(q), allowed)]


def order_sl(n: int, q: int) -> int:
    """``|SL_n(q)|``."""
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - 1
    return out


def order_psl(n: int, q: int) -> int:
    return order_sl(n, q) // math.gcd(n, q - 1)


def order_su(n: int, q: int) -> int:
    """``|SU_n(q)|``."""
    out = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        out *= q**i - (-1) ** i
    return out


def order_psu(n: int, q: int) -> int:
    return order_su(n, q) // math.gcd(n, q + 1)


def order_sp(two_m: int, q: int) -> int:
    """``|Sp_{2m}(q)|``."""
    m = two_m // 2
    out = q ** (m * m)
    for i in range(1, m + 1):
        out *= q ** (2 * i) - 1
    return out


def order_psp(two_m: int, q: int) -> int:
    return order_sp(two_m, q) // math.gcd(2, q - 1)
