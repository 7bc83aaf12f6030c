"""Subgroup and class computations on top of the element table.

Everything here is a filter over the element table of the ambient group,
followed by a stabilizer-chain build for the surviving elements.  That keeps
the algorithms short and obviously correct; the price is that each call is
linear in ``|G|``, which is fine below the element budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..numtheory import p_part
from .group import CHUNK, GroupHandle
from .permutation import (Permutation, compose_rows, conjugate_by_rows, conjugate_rows,
                          element_order, orders_rows)


def _chunks(n: int, size: int = CHUNK):
    for s in range(0, n, size):
        yield s, min(n, s + size)


def subgroup_from_rows(G: GroupHandle, rows: np.ndarray) -> GroupHandle:
    """The subgroup whose elements are exactly ``rows`` (assumed closed).

    Generators are picked greedily: the first row not yet in the subgroup
    built so far is added, so at most ``log2 |H|`` rounds are needed.  The
    row count is passed as the known order, which the chain must reach.
    """
    rows = np.asarray(rows)
    target = rows.shape[0]
    gens: list[Permutation] = []
    H = GroupHandle.trivial(G.degree, element_budget=G.element_budget)
    while H.order < target:
        _, ok = H.rank_rows(rows)
        miss = np.flatnonzero(~ok)
        if miss.size == 0:
            raise ArithmeticError("row set is not closed under multiplication")
        gens.append(Permutation(rows[miss[0]], check=False))
        H = GroupHandle(G.degree, gens, known_order=None, element_budget=G.element_budget)
        if H.order > target:
            raise ArithmeticError("row set is not a subgroup")
    return H


def subgroup_from_mask(G: GroupHandle, mask: np.ndarray) -> GroupHandle:
    return subgroup_from_rows(G, G.elements()[mask])


def generated_subgroup(G: GroupHandle, seeds) -> GroupHandle:
    """``<seeds>`` as a handle over the degree of ``G``."""
    seeds = [s if isinstance(s, Permutation) else Permutation(s) for s in seeds]
    for s in seeds:
        if not G.contains(s):
            raise ValueError("seed is not an element of G")
    return GroupHandle(G.degree, seeds, element_budget=G.element_budget)


def is_abelian(H: GroupHandle) -> bool:
    gens = H.generators
    return all(a.commutes_with(b) for i, a in enumerate(gens) for b in gens[i + 1:])


def centralizer_mask(G: GroupHandle, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.intp)
    table = G.elements()
    mask = np.empty(G.order, dtype=bool)
    for s, e in _chunks(G.order):
        t = table[s:e]
        mask[s:e] = (x[t] == t[:, x]).all(axis=1)
    return mask


def centralizer(G: GroupHandle, x) -> GroupHandle:
    """``C_G(x)`` by filtering the element table."""
    if not G.contains(x):
        raise ValueError("x is not an element of G")
    if Permutation(np.asarray(x), check=False).is_identity():
        return G
    return subgroup_from_mask(G, centralizer_mask(G, x))


def normalizer(G: GroupHandle, H: GroupHandle) -> GroupHandle:
    """``N_G(H)``: elements conjugating every generator of ``H`` back into ``H``."""
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    if H.order in (1, G.order):
        return G
    table = G.elements()
    mask = np.ones(G.order, dtype=bool)
    for h in H.generators:
        for s, e in _chunks(G.order):
            idx = np.flatnonzero(mask[s:e]) + s
            if idx.size:
                _, ok = H.rank_rows(conjugate_by_rows(h, table[idx]))
                mask[idx[~ok]] = False
    return subgroup_from_mask(G, mask)


def intersection(G: GroupHandle, A: GroupHandle, B: GroupHandle) -> GroupHandle:
    """``A ∩ B``, filtering the smaller of the two."""
    if A.order > B.order:
        A, B = B, A
    rows = A.elements()
    _, ok = B.rank_rows(rows)
    return subgroup_from_rows(G, rows[ok])


def conjugate_subgroup(H: GroupHandle, g) -> GroupHandle:
    """``H^g``."""
    g = Permutation(np.asarray(g), check=False)
    return GroupHandle(H.degree, [h ** g for h in H.generators], known_order=H.order,
                       element_budget=H.element_budget)


def _p_element(H: GroupHandle, p: int, avoid: GroupHandle | None, rng) -> Permutation | None:
    """A nontrivial p-element of ``H`` outside ``avoid``, or None."""
    m = H.order
    while m % p == 0:
        m //= p
    # random phase: p'-part powers of random elements
    for _ in range(64):
        g = H.random_element(rng) ** m
        if not g.is_identity() and (avoid is None or not avoid.contains(g)):
            return g
    table = H.elements()
    for s, e in _chunks(H.order):
        rows = table[s:e]
        orders = orders_rows(rows)
        ppow = (orders > 1) & (orders == np.array([p_part(int(o), p) for o in orders]))
        idx = np.flatnonzero(ppow)
        if idx.size and avoid is not None:
            _, ok = avoid.rank_rows(rows[idx])
            idx = idx[~ok]
        if idx.size:
            return Permutation(rows[idx[0]], check=False)
    return None


def sylow_subgroup(G: GroupHandle, p: int, seed: int = 0) -> GroupHandle:
    """A Sylow p-subgroup, grown inside successive normalizers.

    If ``P`` is a p-subgroup that is not Sylow then ``N_G(P)/P`` has order
    divisible by p, so ``N_G(P)`` holds a p-element outside ``P`` and the
    product with ``P`` is a strictly larger p-subgroup.
    """
    target = p_part(G.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide |G| = {G.order}")
    key = ("sylow", p)
    if key in G.cache:
        return G.cache[key]
    rng = np.random.default_rng(seed)
    x = _p_element(G, p, None, rng)
    P = GroupHandle(G.degree, [x], element_budget=G.element_budget)
    while P.order < target:
        N = normalizer(G, P)
        y = _p_element(N, p, P, rng)
        if y is None:
            raise ArithmeticError("normalizer growth stalled below the Sylow order")
        P = GroupHandle(G.degree, P.generators + [y], element_budget=G.element_budget)
    if P.order != target:
        raise ArithmeticError("grown p-subgroup overshot the p-part")
    G.cache[key] = P
    return P


def p_core(G: GroupHandle, p: int) -> GroupHandle:
    """``O_p(G)``: intersect a Sylow subgroup with its generator conjugates until stable."""
    if G.order % p:
        return GroupHandle.trivial(G.degree)
    D = sylow_subgroup(G, p)
    changed = True
    while changed and D.order > 1:
        changed = False
        for s in G.generators:
            # d lies in D^s iff d^(s^-1) lies in D
            rows = D.elements()
            _, ok = D.rank_rows(conjugate_rows(rows, np.asarray(~s)))
            if not ok.all():
                D = subgroup_from_rows(G, rows[ok])
                changed = True
    return D


def odd_generated_subgroup(H: GroupHandle) -> GroupHandle:
    """``O^2(H)``, the subgroup generated by the elements of odd order."""
    table = H.elements()
    odd = np.concatenate([orders_rows(table[s:e]) % 2 == 1 for s, e in _chunks(H.order)])
    rows = table[odd]
    gens: list[Permutation] = []
    K = GroupHandle.trivial(H.degree)
    while True:
        _, ok = K.rank_rows(rows)
        miss = np.flatnonzero(~ok)
        if miss.size == 0:
            return K
        gens.append(Permutation(rows[miss[0]], check=False))
        K = GroupHandle(H.degree, gens, element_budget=H.element_budget)


# -- conjugacy classes --------------------------------------------------------------


@dataclass
class ConjugacyClass:
    """A conjugacy class, identified by its index in the group's class list."""

    group: GroupHandle = field(repr=False)
    index: int
    representative: Permutation
    size: int
    element_order: int
    _centralizer: GroupHandle | None = field(default=None, repr=False)

    @property
    def centralizer(self) -> GroupHandle:
        if self._centralizer is None:
            C = centralizer(self.group, self.representative)
            if C.order * self.size != self.group.order:
                raise ArithmeticError("class size and centralizer order disagree")
            self._centralizer = C
        return self._centralizer

    def contains(self, g) -> bool:
        if not self.group.contains(g):
            return False
        return int(class_labels(self.group)[self.group.rank(g)]) == self.index

    __contains__ = contains

    def ranks(self) -> np.ndarray:
        """Ranks in ``G`` of the members, ascending."""
        return np.flatnonzero(class_labels(self.group) == self.index)


def conjugation_action(G: GroupHandle, s) -> np.ndarray:
    """The permutation of ranks induced by ``g -> g^s``."""
    table = G.elements()
    s = np.asarray(s)
    out = np.empty(G.order, dtype=np.int64)
    for a, b in _chunks(G.order):
        out[a:b], ok = G.rank_rows(conjugate_rows(table[a:b], s))
        if not ok.all():
            raise ValueError("conjugating element does not normalize G")
    return out


def conjugation_actions(G: GroupHandle) -> list[np.ndarray]:
    """Rank permutations induced by conjugation with each generator of ``G``."""
    conjugacy_classes(G)
    return G.cache["conj_actions"]


def class_labels(G: GroupHandle) -> np.ndarray:
    """Class index of every element, by rank."""
    conjugacy_classes(G)
    return G.cache["class_labels"]


def _lex_least(rows: np.ndarray) -> int:
    idx = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        if idx.size == 1:
            break
        vals = rows[idx, col]
        idx = idx[vals == vals.min()]
    return int(idx[0])


def conjugacy_classes(G: GroupHandle) -> list[ConjugacyClass]:
    """Classes of ``G`` as orbits of conjugation by the generators.

    Classes are ordered by element order, then size, then representative;
    each representative is the lexicographically least member.
    """
    if "classes" in G.cache:
        return G.cache["classes"]
    table = G.elements()
    n = G.order
    src, dst = [], []
    for s in G.generators:
        src.append(np.arange(n))
        dst.append(conjugation_action(G, s))
    if src:
        graph = coo_matrix((np.ones(n * len(src), dtype=np.int8),
                            (np.concatenate(src), np.concatenate(dst))), shape=(n, n))
        _, raw = connected_components(graph, directed=True, connection="weak")
    else:
        raw = np.zeros(n, dtype=np.int64)
    order = np.argsort(raw, kind="stable")
    bounds = np.flatnonzero(np.diff(raw[order])) + 1
    info = []
    for members in np.split(order, bounds):
        rows = table[members]
        rep = rows[_lex_least(rows)]
        info.append((element_order(rep), members.size, tuple(int(v) for v in rep), raw[members[0]]))
    info.sort()
    relabel = np.empty(len(info), dtype=np.int64)
    classes = []
    for i, (o, size, rep, old) in enumerate(info):
        relabel[old] = i
        classes.append(ConjugacyClass(G, i, Permutation(rep, check=False), size, o))
    G.cache["conj_actions"] = dst
    G.cache["class_labels"] = relabel[raw]
    G.cache["classes"] = classes
    return classes


def element_ranks_of_orders(G: GroupHandle, orders) -> np.ndarray:
    """Ranks of all elements whose order lies in ``orders``, ascending."""
    wanted = [c.index for c in conjugacy_classes(G) if c.element_order in set(orders)]
    return np.flatnonzero(np.isin(class_labels(G), wanted))


def right_transversal(G: GroupHandle, U: GroupHandle) -> np.ndarray:
    """One element (as rank in ``G``) from each right coset ``Ug``; rank 0 first."""
    n = G.order
    seen = np.zeros(n, dtype=bool)
    urows = U.elements()
    reps = []
    nxt = 0
    table = G.elements()
    while nxt < n:
        g = table[nxt]
        ranks, ok = G.rank_rows(compose_rows(urows, np.broadcast_to(g, urows.shape)))
        if not ok.all():
            raise ValueError("U is not a subgroup of G")
        seen[ranks] = True
        reps.append(nxt)
        while nxt < n and seen[nxt]:
            nxt += 1
    return np.array(reps, dtype=np.int64)
