"""
Commuting graphs of the alternating groups
==========================================

Build the graph on odd prime order elements of Alt(n), n = 5..9, and watch a
big component appear at n = 7.
"""

from oddcommute import commgraph as cg
from oddcommute.catalog import alternating
from oddcommute.criteria import atlas_class_names
from oddcommute.perm import ops
from oddcommute.perm.permutation import Permutation

for n in range(5, 10):
    G = alternating(n)
    part = cg.components(G)
    big = [set(b) for b in part.big_prime_sets()] or "none"
    print(f"Alt{n:<2} |G| = {G.order:>6}  components {len(part):>4}  big {big}  "
          f"small primes {set(part.small_primes())}")

# The 3-cycles of Alt8: one class, and its commuting graph is connected.
G = alternating(8)
x = Permutation.parse("(1,2,3)", 8)
cls = ops.conjugacy_classes(G)[int(ops.class_labels(G)[G.rank(x)])]
print()
print("class", atlas_class_names(G)[cls.index], "size", cls.size,
      "|C(x)| =", cls.centralizer.order, "connected:", cg.class_connected(G, cls))

# Elements of order 7 sit in small components.  The stabilizer of the component
# through a 7-cycle is a proper subgroup; its order is |C(x)| times the number
# of class members in the component.
part = cg.components(G)
y = Permutation.parse("(1,2,3,4,5,6,7)", 8)
H = cg.component_stabilizer(part, y)
print("component of", y.to_cycle_string(), "has size", part.component_of(y).size,
      "and stabilizer of order", H.order)
