"""Computed results that disagree with a published classification.

These are kept outside the suite and the expectation table; the tests pin
what the engine finds so that any change in behaviour is noticed.
"""

from oddcommute import commgraph as cg
from oddcommute import criteria as cr
from oddcommute.catalog import EXTRAS, load_group
from oddcommute.perm import ops


def test_psu3_5_has_a_big_component():
    # q = 5 is odd with (q+1)/gcd(q+1,3) = 2, which the classification puts in the
    # no-big-component case; an order-3 class with nonabelian centralizer joins up
    G = load_group(EXTRAS["PSU3(5)"])
    assert G.order == 126000
    part = cg.components(G)
    (big,) = part.big()
    assert big.orders == (3,) and big.size == 3500
    assert part.small_primes() == (5, 7)

    threes = [c for c in ops.conjugacy_classes(G) if c.element_order == 3]
    assert [c.size for c in threes] == [3500]
    C = threes[0].centralizer
    assert C.order == 36 and not ops.is_abelian(C)
    assert cg.class_connected(G, threes[0])

    scan = cr.nonabelian_centralizer_scan(G, part)
    assert scan.witness["witnesses"][0]["centralizer_order"] == 36
