"""
Zsigmondy primes and smooth values
==================================

Primitive prime divisors of q^n - 1, and the short lists of prime powers q for
which q - 1, q + 1 or q^2 - 1 have only tiny prime factors.
"""

from oddcommute import numtheory as nt
from oddcommute import sweeps

for q in (2, 3, 4, 5, 7):
    row = []
    for n in range(1, 9):
        z = nt.zsigmondy_prime(q, n)
        row.append(str(z.prime) if z.prime is not None else "-")
    print(f"q = {q}:", " ".join(f"{s:>5}" for s in row))

# "-" marks the exceptions: (2,6), n = 1 with q - 1 a power of 2, and n = 2
# with q + 1 a power of 2.
print()
for r in sweeps.prime_power_sweeps(limit=10_000):
    print(f"{r.name:<24} {r.recovered}")

print()
print("Phi_12(3) =", nt.cyclotomic_eval(12, 3), "=", nt.factorize(nt.cyclotomic_eval(12, 3)))
