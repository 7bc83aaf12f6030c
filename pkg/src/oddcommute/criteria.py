"""Connectivity criteria for commuting graphs, each returning a checkable report.

A report's witness holds enough data (subgroup orders and generators, in
1-based cycle notation) to re-check the verdict independently.  When a
criterion's hypotheses hold, its conclusion is also computed directly and a
disagreement raises :class:`EngineError`, since the implication is a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import commgraph as cg
from . import numtheory as nt
from .commgraph import EngineError
from .perm import ops
from .perm.group import GroupHandle
from .perm.permutation import Permutation, compose_rows, conjugate_rows, orders_rows

SYLOW_LIMIT = 1 << 10
INDEX_LIMIT = 100_000

# the one exception to the small-component corollary: 2F4(2)' at r = 5
SMALL_COMPONENT_ALLOWLIST = {("2F4(2)'", 5)}


class SylowTooLarge(ValueError):
    """The Sylow subgroup exceeds the subgroup-enumeration cap."""


class IndexTooLarge(ValueError):
    """A transversal sweep would exceed the coset cap."""


@dataclass
class CriterionReport:
    criterion: str
    verdict: bool
    witness: dict = field(default_factory=dict)
    counterexample: dict | None = None
    conclusive: bool = True

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "verdict": self.verdict,
                "conclusive": self.conclusive, "witness": self.witness,
                "counterexample": self.counterexample}


def describe(H: GroupHandle) -> dict:
    """Order and generators of a subgroup, in a form that round-trips through JSON."""
    return {"order": H.order, "generators": [g.to_cycle_string() for g in H.generators]}


def rebuild(G: GroupHandle, desc: dict) -> GroupHandle:
    """Inverse of :func:`describe`."""
    gens = [Permutation.parse(s, G.degree) for s in desc["generators"]]
    return GroupHandle(G.degree, gens, element_budget=G.element_budget)


def _require_prime_divisor(G: GroupHandle, p: int):
    if not nt.is_prime(p) or G.order % p:
        raise ValueError(f"{p} is not a prime divisor of |G| = {G.order}")


def gamma_connected(G: GroupHandle, p: int) -> bool:
    """Is the commuting graph on the elements of order ``p`` connected?"""
    return len(cg.components(G, [p], allow_even=True)) == 1


def p_local_criterion(G: GroupHandle, p: int) -> CriterionReport:
    """Nontrivial ``O_p(G)`` forces a connected ``Gamma_p``."""
    _require_prime_divisor(G, p)
    core = ops.p_core(G, p)
    if core.order == 1:
        return CriterionReport("p_local", False, counterexample={
            "p_core_order": 1, "sylow": describe(ops.sylow_subgroup(G, p))})
    connected = gamma_connected(G, p)
    if not connected:
        raise EngineError(f"O_{p}(G) != 1 but Gamma_{p} is disconnected")
    return CriterionReport("p_local", True, {"p_core": describe(core), "gamma_connected": True})


# -- subgroups of a p-group ----------------------------------------------------------


class _SmallGroup:
    """Multiplication table of a small group, elements indexed by rank."""

    def __init__(self, P: GroupHandle):
        self.P = P
        rows = P.elements()
        n = P.order
        self.mul = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            r, ok = P.rank_rows(compose_rows(np.broadcast_to(rows[i], rows.shape), rows))
            if not ok.all():
                raise EngineError("product left the group")
            self.mul[i] = r

    def closure(self, gens: list[int]) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        mul = self.mul
        while frontier:
            nxt = []
            for e in frontier:
                for g in gens:
                    h = int(mul[e, g])
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(seen)


def p_group_subgroups(P: GroupHandle):
    """Yield ``(elements, generators)`` for every nontrivial subgroup of ``P``.

    Cyclic subgroups come first; every other subgroup is a join of cyclic
    ones, found by repeatedly joining known subgroups with cyclic subgroups.
    Elements and generators are ranks in ``P``.
    """
    if P.order > SYLOW_LIMIT:
        raise SylowTooLarge(f"|P| = {P.order} exceeds {SYLOW_LIMIT}")
    T = _SmallGroup(P)
    cyclic: dict[frozenset, list[int]] = {}
    for e in range(1, P.order):
        S = T.closure([e])
        cyclic.setdefault(S, [e])
    seen = dict(cyclic)
    for S, gens in cyclic.items():
        yield S, gens
    queue = list(cyclic.items())
    while queue:
        S, gens = queue.pop(0)
        for C, cgens in cyclic.items():
            if C <= S:
                continue
            J = T.closure(gens + cgens)
            if J not in seen:
                seen[J] = gens + cgens
                queue.append((J, gens + cgens))
                yield J, gens + cgens


def generation_criterion(G: GroupHandle, p: int) -> CriterionReport:
    """Is ``G = <N_G(Y) : 1 != Y <= P>`` for the Sylow subgroup ``P``?

    The join ``U`` is accumulated subgroup by subgroup and the search stops
    as soon as ``U = G``.
    """
    _require_prime_divisor(G, p)
    P = ops.sylow_subgroup(G, p)
    if P.order > SYLOW_LIMIT:
        raise SylowTooLarge(f"|P| = {P.order} exceeds {SYLOW_LIMIT}")
    U = GroupHandle.trivial(G.degree, element_budget=G.element_budget)
    used = []
    count = 0
    for _, gens in p_group_subgroups(P):
        count += 1
        Y = GroupHandle(G.degree, [P.element(g) for g in gens], element_budget=G.element_budget)
        N = ops.normalizer(G, Y)
        if N.is_subgroup_of(U):
            continue
        U = GroupHandle(G.degree, U.generators + N.generators, element_budget=G.element_budget)
        used.append({"Y_order": Y.order, "normalizer_order": N.order})
        if U.order == G.order:
            return CriterionReport("generation", True, {
                "sylow": describe(P), "U_order": U.order, "normalizers_used": used,
                "subgroups_examined": count})
    return CriterionReport("generation", False, {"sylow": describe(P)}, counterexample={
        "U": describe(U), "subgroups_examined": count, "normalizers_used": used})


def strongly_p_embedded(G: GroupHandle, U: GroupHandle, p: int) -> bool:
    """Does ``p`` fail to divide ``|U ∩ U^g|`` for every ``g`` outside ``U``?

    The condition only depends on the right coset ``Ug``, so a transversal
    suffices; ``U ∩ U^g`` has order divisible by ``p`` exactly when it holds
    an element of order ``p``, i.e. some ``u`` of order ``p`` in ``U`` with
    ``u^(g^-1)`` in ``U``.
    """
    if U.order == G.order or U.order % p or not U.is_subgroup_of(G):
        raise ValueError("U must be a proper subgroup of G with p | |U|")
    index = G.order // U.order
    if index > INDEX_LIMIT:
        raise IndexTooLarge(f"index {index} exceeds {INDEX_LIMIT}")
    urows = U.elements()
    orders = orders_rows(urows)
    up = urows[orders == p].astype(np.intp)
    table = G.elements()
    for r in ops.right_transversal(G, U)[1:]:
        ginv = np.empty(G.degree, dtype=np.intp)
        ginv[table[r]] = np.arange(G.degree)
        conj = conjugate_rows(up, ginv)
        _, ok = U.rank_rows(conj)
        if ok.any():
            return False
    return True


def bender_equivalence(G: GroupHandle, p: int) -> CriterionReport:
    """Compare connectivity of ``Gamma_p`` with the generation criterion.

    When both fail and ``O_p(G) = 1`` the join ``U`` is checked to be
    strongly p-embedded.
    """
    a = gamma_connected(G, p)
    c = generation_criterion(G, p)
    witness = {"gamma_connected": a, "generation": c.verdict, "sylow": c.witness["sylow"]}
    if a != c.verdict:
        raise EngineError(f"Gamma_{p} connected = {a} but generation = {c.verdict}")
    if a:
        witness["U_order"] = c.witness["U_order"]
        return CriterionReport("bender", True, witness)
    U = rebuild(G, c.counterexample["U"])
    core = ops.p_core(G, p)
    witness["U"] = c.counterexample["U"]
    witness["p_core_order"] = core.order
    if core.order == 1:
        spe = strongly_p_embedded(G, U, p)
        witness["U_strongly_p_embedded"] = spe
        if not spe:
            raise EngineError("U is proper with O_p(G) = 1 but not strongly p-embedded")
    return CriterionReport("bender", False, witness, counterexample={"U": c.counterexample["U"]})


def sylow_cyclic(G: GroupHandle, p: int) -> bool:
    """Sylow p-subgroups are cyclic iff some element has order ``|G|_p``."""
    _require_prime_divisor(G, p)
    target = nt.p_part(G.order, p)
    return any(c.element_order == target for c in ops.conjugacy_classes(G))


def amalgam_criterion(G: GroupHandle, A: GroupHandle, B: GroupHandle, p: int) -> CriterionReport:
    """``<A, B> = G``, a p-element in ``A ∩ B`` and connected ``Gamma_p(A)``, ``Gamma_p(B)``."""
    if not (A.is_subgroup_of(G) and B.is_subgroup_of(G)):
        raise ValueError("A and B must be subgroups of G")
    joined = GroupHandle(G.degree, A.generators + B.generators, known_order=G.order)
    meet = ops.intersection(G, A, B)
    hyp = {
        "generate": joined.order == G.order,
        "intersection_has_p_element": meet.order % p == 0,
        "gamma_A_connected": A.order % p == 0 and gamma_connected(A, p),
        "gamma_B_connected": B.order % p == 0 and gamma_connected(B, p),
    }
    witness = {"hypotheses": hyp, "A": describe(A), "B": describe(B),
               "intersection_order": meet.order}
    if not all(hyp.values()):
        failed = [k for k, v in hyp.items() if not v]
        return CriterionReport("amalgam", False, witness, counterexample={"failed": failed})
    if not gamma_connected(G, p):
        raise EngineError("amalgam hypotheses hold but Gamma_p(G) is disconnected")
    witness["gamma_connected"] = True
    return CriterionReport("amalgam", True, witness)


def uabg_criterion(G: GroupHandle, U: GroupHandle, A: GroupHandle, B: GroupHandle,
                   g: Permutation, x: Permutation) -> CriterionReport:
    """``U = AB`` with ``[A, B] = 1`` and ``A^g <= B`` give ``H_x >= <U, g> > U``."""
    AB = ops.intersection(G, A, B)
    hyp = {
        "x_in_A": A.contains(x),
        "x_odd_prime": nt.is_prime(x.order()) and x.order() > 2,
        "g_in_G": G.contains(g),
        "g_not_in_U": not U.contains(g),
        "A_B_in_U": A.is_subgroup_of(U) and B.is_subgroup_of(U) and U.is_subgroup_of(G),
        "A_B_commute": all(a.commutes_with(b) for a in A.generators for b in B.generators),
        "U_is_AB": A.order * B.order // AB.order == U.order,
        "A_conj_in_B": all(B.contains(a ** g) for a in A.generators),
    }
    witness = {"hypotheses": hyp, "U_order": U.order, "A_order": A.order, "B_order": B.order,
               "g": g.to_cycle_string(), "x": x.to_cycle_string(),
               "g_normalizes_A": all(A.contains(a ** g) for a in A.generators)}
    if not all(hyp.values()):
        failed = [k for k, v in hyp.items() if not v]
        return CriterionReport("uabg", False, witness, counterexample={"failed": failed})
    xg = x ** g
    if not (U.contains(xg) and x.commutes_with(xg)):
        raise EngineError("x and x^g should be adjacent inside U")
    grown = GroupHandle(G.degree, U.generators + [g], element_budget=G.element_budget)
    labels = ops.class_labels(G)
    cls = ops.conjugacy_classes(G)[int(labels[G.rank(x)])]
    part = cg.class_components(G, cls)
    H = cg.component_stabilizer(part, x)
    if not grown.is_subgroup_of(H) or grown.order <= U.order:
        raise EngineError("UABg hypotheses hold but H_x does not contain a larger <U, g>")
    witness.update({"grown_order": grown.order, "H_x_order": H.order,
                    "class_connected": len(part) == 1})
    return CriterionReport("uabg", True, witness)


def abelian_criterion(G: GroupHandle, x: Permutation, family: list[GroupHandle]) -> CriterionReport:
    """Sufficient condition: normalizers of abelian subgroups through ``x`` generate ``G``.

    A false verdict is inconclusive, never a proof that ``x^G`` is disconnected.
    """
    for A in family:
        if not ops.is_abelian(A):
            raise ValueError("family member is not abelian")
        if not A.contains(x):
            raise ValueError("family member does not contain x")
    gens = []
    norms = []
    for A in family:
        N = ops.normalizer(G, A)
        norms.append(N.order)
        gens.extend(N.generators)
    joined = GroupHandle(G.degree, gens, element_budget=G.element_budget)
    witness = {"x": x.to_cycle_string(), "family_orders": [A.order for A in family],
               "normalizer_orders": norms, "join_order": joined.order}
    if joined.order != G.order:
        return CriterionReport("abelian", False, witness, conclusive=False,
                               counterexample={"join_order": joined.order})
    labels = ops.class_labels(G)
    cls = ops.conjugacy_classes(G)[int(labels[G.rank(x)])]
    if not cg.class_connected(G, cls):
        raise EngineError("normalizers generate G but the class is disconnected")
    witness["class_connected"] = True
    return CriterionReport("abelian", True, witness)


def atlas_class_names(G: GroupHandle) -> dict[int, str]:
    """Names like ``3A``: per element order, letters by decreasing centralizer order."""
    names = {}
    by_order: dict[int, list] = {}
    for c in ops.conjugacy_classes(G):
        by_order.setdefault(c.element_order, []).append(c)
    for o, cls in by_order.items():
        cls.sort(key=lambda c: (c.size, c.index))
        for i, c in enumerate(cls):
            letter = chr(ord("A") + i) if i < 26 else f"_{i}"
            names[c.index] = f"{o}{letter}"
    return names


def nonabelian_centralizer_scan(G: GroupHandle, partition: cg.ComponentPartition,
                                simple: bool = True) -> CriterionReport:
    """Every big component of a simple group has an element with nonabelian centralizer.

    Components are unions of classes, so class representatives suffice; the
    witness is the class with the largest nonabelian centralizer.
    """
    classes = ops.conjugacy_classes(G)
    names = atlas_class_names(G)
    found = []
    for comp in partition.big():
        best = None
        for cid in sorted(comp.classes, key=lambda c: classes[c].size):
            C = classes[cid].centralizer
            if not ops.is_abelian(C):
                best = cid
                break
        if best is None:
            if simple:
                raise EngineError(f"big component {comp.id} has only abelian centralizers")
            return CriterionReport("nonabelian_centralizer", False,
                                   counterexample={"component": comp.id})
        found.append({"component": comp.id, "orders": list(comp.orders), "class": names[best],
                      "representative": classes[best].representative.to_cycle_string(),
                      "centralizer_order": classes[best].centralizer.order})
    return CriterionReport("nonabelian_centralizer", True, {"witnesses": found})


def small_component_corollary(G: GroupHandle, partition: cg.ComponentPartition,
                              name: str | None = None) -> CriterionReport:
    """For ``x`` of prime order r in a small component: ``O^2(C_G(x))`` abelian, Sylow-r cyclic."""
    if not partition.big():
        raise ValueError("the corollary needs a big component")
    classes = ops.conjugacy_classes(G)
    names = atlas_class_names(G)
    small_classes = sorted({cid for comp in partition.small() for cid in comp.classes})
    checked, failures = [], []
    for cid in small_classes:
        cls = classes[cid]
        r = cls.element_order
        o2 = ops.odd_generated_subgroup(cls.centralizer)
        abelian = ops.is_abelian(o2)
        cyclic = sylow_cyclic(G, r)
        row = {"class": names[cid], "r": r, "centralizer_order": cls.centralizer.order,
               "O2_order": o2.order, "O2_abelian": abelian, "sylow_cyclic": cyclic}
        checked.append(row)
        if not (abelian and (cyclic or (name, r) in SMALL_COMPONENT_ALLOWLIST)):
            failures.append(row)
    if failures:
        return CriterionReport("small_component", False, {"checked": checked},
                               counterexample={"failures": failures})
    return CriterionReport("small_component", True, {"checked": checked})
