"""Finite fields GF(p**e) on integer indices.

For a prime field the index of an element is its residue.  For ``e >= 2``
index 0 is zero and index ``k >= 1`` stands for ``alpha**(k-1)``, where
``alpha`` is a root of the Conway polynomial below; addition goes through
the Zech logarithm table.  All operations accept numpy arrays.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..numtheory import prime_power

# Conway polynomials, coefficients from the constant term up (monic).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


class GF:
    """The field with ``q`` elements."""

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        self.elements = np.arange(q)
        if self.e == 1:
            self._build_prime()
        else:
            self._build_zech()

    def __repr__(self):
        return f"GF({self.q})"

    def _build_prime(self):
        p = self.p
        # a generator of the multiplicative group gives log tables for inverses and powers
        for g in range(2, p) if p > 2 else [1]:
            if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
                break
        exp = np.array([pow(g, k, p) for k in range(p - 1)], dtype=np.int64)
        log = np.zeros(p, dtype=np.int64)
        log[exp] = np.arange(p - 1)
        self._exp, self._log = exp, log
        self.primitive = g

    def _build_zech(self):
        p, e, q = self.p, self.e, self.q
        poly = CONWAY.get((p, e))
        if poly is None:
            raise ValueError(f"no polynomial on file for GF({p}^{e})")
        # powers of alpha as coefficient vectors, packed base p
        vec = np.zeros(q - 1, dtype=np.int64)
        cur = [1] + [0] * (e - 1)
        weights = [p**i for i in range(e)]
        for k in range(q - 1):
            vec[k] = sum(c * w for c, w in zip(cur, weights))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * poly[i]) % p for i, c in enumerate(cur)]
        if len(set(vec.tolist())) != q - 1 or 0 in set(vec.tolist()):
            raise ArithmeticError(f"polynomial for GF({q}) is not primitive")
        log = np.full(q, -1, dtype=np.int64)
        log[vec] = np.arange(q - 1)
        # zech[n] = index of 1 + alpha**n
        zech = np.zeros(q - 1, dtype=np.int64)
        for n in range(q - 1):
            digits = [(int(vec[n]) // w) % p for w in weights]
            digits[0] = (digits[0] + 1) % p
            packed = sum(c * w for c, w in zip(digits, weights))
            zech[n] = 0 if packed == 0 else log[packed] + 1
        self._vec, self._veclog, self._zech = vec, log, zech
        self.primitive = 2

    # -- arithmetic -------------------------------------------------------------------

    def add(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.e == 1:
            return (a + b) % self.p
        m = self.q - 1
        i = np.where(a > 0, a - 1, 0)
        j = np.where(b > 0, b - 1, 0)
        z = self._zech[(j - i) % m]
        s = np.where(z > 0, (i + z - 1) % m + 1, 0)
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg(self, a):
        a = np.asarray(a)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        # -1 = alpha**((q-1)/2)
        return np.where(a == 0, 0, (a - 1 + (self.q - 1) // 2) % (self.q - 1) + 1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.e == 1:
            return (a * b) % self.p
        s = (np.maximum(a, 1) + np.maximum(b, 1) - 2) % (self.q - 1) + 1
        return np.where((a == 0) | (b == 0), 0, s)

    def log(self, a):
        """Discrete log to the field's primitive element (``a != 0``)."""
        a = np.asarray(a)
        return self._log[a] if self.e == 1 else a - 1

    def exp(self, k):
        k = np.asarray(k) % (self.q - 1)
        return self._exp[k] if self.e == 1 else k + 1

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.exp(-self.log(a))

    def pow(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, self.exp(self.log(np.where(a == 0, 1, a)) * k))

    def frobenius(self, a, power: int = 1):
        """``a ** (p ** power)``."""
        return self.pow(a, self.p**power)

    @property
    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        n %= self.p
        if self.e == 1 or n == 0:
            return n
        return int(self._veclog[n]) + 1

    def additive_basis(self) -> list[int]:
        """``1, alpha, ..., alpha**(e-1)``: a basis over the prime field."""
        return [1] if self.e == 1 else [k + 1 for k in range(self.e)]

    def tables(self):
        """Full addition and multiplication tables (for small fields)."""
        a = self.elements[:, None]
        b = self.elements[None, :]
        return self.add(a, b), self.mul(a, b)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
