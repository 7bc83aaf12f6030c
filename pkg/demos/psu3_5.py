"""
PSU(3,5): a big component where none was expected
=================================================

q = 5 is odd and (q + 1)/gcd(q + 1, 3) = 2 is a power of 2, the case in which
PSU(3,q) is listed without a big component.  The computation disagrees: the
single class of elements of order 3 has a nonabelian centralizer of order 36
and forms a big component of its own.
"""

from oddcommute import commgraph as cg
from oddcommute.catalog import projective_special_unitary
from oddcommute.perm import ops

G = projective_special_unitary(3, 5)
print("PSU(3,5) on", G.degree, "isotropic points, order", G.order)
part = cg.components(G)
for comp in part.big():
    print("big component: orders", set(comp.orders), "size", comp.size)
print("small primes:", set(part.small_primes()))

for cls in ops.conjugacy_classes(G):
    if cls.element_order == 3:
        C = cls.centralizer
        print("order-3 class of size", cls.size, "|C| =", C.order,
              "abelian:", ops.is_abelian(C))
