"""
Disconnected Gamma_p and strongly embedded subgroups
====================================================

For PSL(2,7) and p = 7 the normalizers of the nontrivial 7-subgroups only
generate a Frobenius group of order 21, and that subgroup is strongly
7-embedded.  With p = 3 in Alt(8) the normalizers generate everything.
"""

from oddcommute import criteria as cr
from oddcommute.catalog import alternating, projective_special_linear

G = projective_special_linear(2, 7)
rep = cr.bender_equivalence(G, 7)
print("PSL(2,7), p = 7")
print("  Gamma_7 connected:", rep.witness["gamma_connected"])
print("  normalizers generate G:", rep.witness["generation"])
print("  join U:", rep.witness["U"]["order"], rep.witness["U"]["generators"])
print("  U strongly 7-embedded:", rep.witness["U_strongly_p_embedded"])

# The same U, rebuilt from its stored generators, gives the same answer.
U = cr.rebuild(G, rep.witness["U"])
print("  rechecked:", cr.strongly_p_embedded(G, U, 7))

A8 = alternating(8)
rep = cr.generation_criterion(A8, 3)
print()
print("Alt8, p = 3: generation", rep.verdict)
for step in rep.witness["normalizers_used"]:
    print("  N(Y) with |Y| = {Y_order}: order {normalizer_order}".format(**step))
