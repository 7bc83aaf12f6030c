"""Brute-force sweeps over the number-theory layer.

Each sweep recomputes a fact by a route independent of :mod:`numtheory`'s
fast path and reports every disagreement.  ``run_all`` is what the
``nt-verify`` subcommand executes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sympy import factorint, primerange

from . import numtheory as nt

SIEVE_LIMIT = 1 << 20


@dataclass
class SweepResult:
    name: str
    passed: bool
    checked: int
    recovered: list | None = None
    expected: list | None = None
    mismatches: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "recovered": self.recovered, "expected": self.expected,
                "mismatches": self.mismatches[:20]}


_PRIMES = None


def _odd_primes() -> np.ndarray:
    global _PRIMES
    if _PRIMES is None:
        _PRIMES = np.array(list(primerange(3, SIEVE_LIMIT)), dtype=np.int64)
    return _PRIMES


def primitive_part(q: int, n: int) -> int:
    """``q**n - 1`` with every prime that divides some ``q**m - 1``, ``m < n``, removed."""
    value = q**n - 1
    for m in range(1, n):
        g = math.gcd(value, q**m - 1)
        while g > 1:
            value //= g
            g = math.gcd(value, g)
    return value


def brute_zsigmondy(q: int, n_max: int) -> dict[int, int | None]:
    """Least odd prime of multiplicative order ``n`` mod it, for each ``n <= n_max``.

    Orders are read off the powers ``q**k mod s`` for every odd prime ``s``
    below the sieve limit; pairs with nothing found there fall back to the
    least prime factor of the primitive part of ``q**n - 1``.
    """
    s = _odd_primes()
    s = s[s % nt.prime_power(q)[0] != 0]
    order = np.zeros(s.size, dtype=np.int64)
    acc = np.ones(s.size, dtype=np.int64)
    base = q % s
    for k in range(1, n_max + 1):
        acc = acc * base % s
        order[(acc == 1) & (order == 0)] = k
    out: dict[int, int | None] = {}
    for n in range(1, n_max + 1):
        hits = s[order == n]
        if hits.size:
            out[n] = int(hits[0])
            continue
        rest = primitive_part(q, n)
        while rest % 2 == 0:
            rest //= 2
        out[n] = min(factorint(rest)) if rest > 1 else None
    return out


def zsigmondy_sweep(q_max: int = 128, n_max: int = 24) -> SweepResult:
    """Compare :func:`numtheory.zsigmondy_prime` with the brute-force table."""
    mismatches = []
    checked = 0
    exceptions = []
    for q in nt.prime_powers(q_max):
        table = brute_zsigmondy(q, n_max)
        for n in range(1, n_max + 1):
            checked += 1
            fast = nt.zsigmondy_prime(q, n)
            brute = table[n]
            if fast.prime != brute:
                mismatches.append({"q": q, "n": n, "fast": fast.prime, "brute": brute})
            if brute is None:
                exceptions.append([q, n])
                if nt.zsigmondy_exception(q, n) is None:
                    mismatches.append({"q": q, "n": n, "unlisted_exception": True})
            elif nt.zsigmondy_exception(q, n) is not None:
                mismatches.append({"q": q, "n": n, "listed_but_prime": brute})
    return SweepResult("zsigmondy", not mismatches, checked, exceptions, None, mismatches)


def _fermat(q: int) -> bool:
    return nt.is_prime(q) and q > 2 and (q - 1) & (q - 2) == 0


def _mersenne(q: int) -> bool:
    return nt.is_prime(q) and (q + 1) & q == 0


# (label, value of q, allowed primes, predicate describing the expected set)
PRIME_POWER_SWEEPS = [
    ("q-1 is a 2-power", lambda q: q - 1, (2,), lambda q: q in (2, 9) or _fermat(q)),
    ("q+1 is a 2-power", lambda q: q + 1, (2,), _mersenne),
    ("q^2-1 is a 2-power", lambda q: q * q - 1, (2,), lambda q: q == 3),
    ("q^2-1 is {2,3}-smooth", lambda q: q * q - 1, (2, 3), lambda q: q in (2, 3, 5, 7, 17)),
    ("q^2-1 is {3,5}-smooth", lambda q: q * q - 1, (3, 5), lambda q: q in (2, 4)),
]

CYCLOTOMIC_SWEEPS = [
    ("Phi_n(p) is a 2-power", (2,),
     lambda p, n: (n == 1 and (p == 2 or _fermat(p))) or (n == 2 and _mersenne(p))),
    ("Phi_n(p) is a 3-power", (3,), lambda p, n: p == 2 and n in (1, 2, 6)),
    ("Phi_n(p) is {3,5}-smooth", (3, 5), lambda p, n: p == 2 and n in (1, 2, 4, 6)),
]


def prime_power_sweeps(limit: int = 10_000) -> list[SweepResult]:
    qs = nt.prime_powers(limit)
    out = []
    for label, value, allowed, predicate in PRIME_POWER_SWEEPS:
        got = [q for q in qs if nt.smooth_within(value(q), allowed)]
        want = [q for q in qs if predicate(q)]
        out.append(SweepResult(label, got == want, len(qs), got, want,
                               sorted(set(got) ^ set(want))))
    return out


def cyclotomic_sweeps(p_max: int = 1000, n_max: int = 24) -> list[SweepResult]:
    ps = list(primerange(2, p_max + 1))
    pairs = [(p, n) for p in ps for n in range(1, n_max + 1)]
    values = {pn: nt.cyclotomic_eval(pn[1], pn[0]) for pn in pairs}
    out = []
    for label, allowed, predicate in CYCLOTOMIC_SWEEPS:
        got = [list(pn) for pn in pairs if nt.smooth_within(values[pn], allowed)]
        want = [list(pn) for pn in pairs if predicate(*pn)]
        diff = [list(t) for t in sorted(set(map(tuple, got)) ^ set(map(tuple, want)))]
        out.append(SweepResult(label, got == want, len(pairs), got, want, diff))
    return out


def run_all(q_max: int = 128, n_max: int = 24, limit: int = 10_000,
            p_max: int = 1000) -> list[SweepResult]:
    return ([zsigmondy_sweep(q_max, n_max)] + prime_power_sweeps(limit)
            + cyclotomic_sweeps(p_max, n_max))
