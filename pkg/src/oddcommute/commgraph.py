"""Commuting graphs on elements of odd prime order.

The vertex set is ``E_rho(G)``, the elements whose order is a prime in
``rho``.  Adjacency is never stored: the neighbours of ``x**g`` are the
vertices of ``C_G(x)**g``, so one centralizer per class describes the whole
graph.  A component is *big* when conjugation by ``G`` maps it to itself.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import numtheory as nt
from .numtheory import PrimeSet
from .perm.group import GroupHandle
from .perm.ops import (ConjugacyClass, centralizer, class_labels, conjugacy_classes,
                       conjugation_actions, generated_subgroup)
from .perm.permutation import Permutation, compose_rows, conjugate_by_rows, conjugate_rows
from .unionfind import UnionFind


class EngineError(AssertionError):
    """An invariant that holds for every finite group failed: a bug, not a finding."""


@dataclass
class VertexIndex:
    """Elements of ``G`` of order in ``rho``, in rank order, tagged with their class."""

    group: GroupHandle = field(repr=False)
    rho: PrimeSet
    ranks: np.ndarray
    class_ids: np.ndarray
    classes: list[ConjugacyClass] = field(repr=False)
    lookup: np.ndarray = field(repr=False)

    def __len__(self):
        return self.ranks.size

    def vertex(self, rank: int) -> int:
        return int(self.lookup[rank])

    def element(self, v: int) -> Permutation:
        return self.group.element(int(self.ranks[v]))

    def rows(self) -> np.ndarray:
        return self.group.elements()[self.ranks]


def _index(G: GroupHandle, rho: PrimeSet, classes: list[ConjugacyClass]) -> VertexIndex:
    labels = class_labels(G)
    ids = [c.index for c in classes]
    ranks = np.flatnonzero(np.isin(labels, ids))
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[ranks] = np.arange(ranks.size)
    return VertexIndex(G, rho, ranks, labels[ranks], classes, lookup)


def _check_rho(rho, allow_even: bool = False) -> PrimeSet:
    rho = PrimeSet(rho)
    if 2 in rho and not allow_even:
        raise ValueError("rho must contain odd primes only")
    return rho


def vertex_set(G: GroupHandle, rho, allow_even: bool = False) -> VertexIndex:
    """``E_rho(G)``."""
    rho = _check_rho(rho, allow_even)
    classes = [c for c in conjugacy_classes(G) if c.element_order in rho]
    return _index(G, rho, classes)


@dataclass
class Component:
    id: int
    size: int
    orders: PrimeSet
    classes: tuple[int, ...]
    big: bool = False


@dataclass
class ComponentPartition:
    """Connected components of a commuting graph, labelled per vertex."""

    index: VertexIndex
    labels: np.ndarray
    components: list[Component]
    fingerprints: list[tuple] = field(default_factory=list)

    @property
    def group(self) -> GroupHandle:
        return self.index.group

    def __len__(self):
        return len(self.components)

    def big(self) -> list[Component]:
        return [c for c in self.components if c.big]

    def small(self) -> list[Component]:
        return [c for c in self.components if not c.big]

    def component_of(self, g) -> Component:
        v = self.index.vertex(self.group.rank(g))
        if v < 0:
            raise ValueError("element is not a vertex")
        return self.components[int(self.labels[v])]

    def small_primes(self) -> PrimeSet:
        return PrimeSet(p for c in self.small() for p in c.orders)

    def big_prime_sets(self) -> list[PrimeSet]:
        return [c.orders for c in self.big()]

    def as_sets(self) -> set[frozenset]:
        """The partition as a set of frozensets of ranks (for comparisons)."""
        groups = defaultdict(list)
        for r, lab in zip(self.index.ranks.tolist(), self.labels.tolist()):
            groups[lab].append(r)
        return {frozenset(v) for v in groups.values()}


# -- the per-class sweep ----------------------------------------------------------------


def class_transversal(G: GroupHandle, cls: ConjugacyClass) -> tuple[np.ndarray, np.ndarray]:
    """Members of ``cls`` (ranks) and for each one a ``g`` with ``rep**g`` equal to it.

    A breadth-first search over conjugation by the generators, so ``g`` is
    accumulated as a word in the generators.
    """
    actions = conjugation_actions(G)
    gens = [np.asarray(s) for s in G.generators]
    start = G.rank(cls.representative)
    members = [start]
    words = [np.arange(G.degree, dtype=np.int64)]
    seen = {start: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            r = members[i]
            for s, act in zip(gens, actions):
                t = int(act[r])
                if t not in seen:
                    seen[t] = len(members)
                    members.append(t)
                    words.append(s[words[i]])
                    nxt.append(seen[t])
        frontier = nxt
    if len(members) != cls.size:
        raise EngineError("class orbit size differs from the class size")
    return np.array(members, dtype=np.int64), np.stack(words)


def _class_edges(G: GroupHandle, cls: ConjugacyClass, index: VertexIndex):
    """Edges ``(x**g, y**g)`` for ``y`` a vertex in ``C_G(x)``, one ``g`` per class member."""
    C = cls.centralizer
    cranks, ok = G.rank_rows(C.elements())
    if not ok.all():
        raise EngineError("centralizer is not inside G")
    xr = G.rank(cls.representative)
    nb = cranks[(index.lookup[cranks] >= 0) & (cranks != xr)]
    members, words = class_transversal(G, cls)
    src_v = index.lookup[members]
    if nb.size == 0:
        return src_v, np.empty((0,), np.int64), np.empty((0,), np.int64)
    table = G.elements()
    ys = table[nb]
    srcs, dsts = [], []
    if len(members) <= nb.size:
        for i, w in enumerate(words):
            r, _ = G.rank_rows(conjugate_rows(ys, w))
            srcs.append(np.full(nb.size, src_v[i]))
            dsts.append(index.lookup[r])
    else:
        for y in ys:
            r, _ = G.rank_rows(conjugate_by_rows(y, words.astype(ys.dtype)))
            srcs.append(src_v)
            dsts.append(index.lookup[r])
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    if (dst < 0).any():
        raise EngineError("conjugate of a vertex is not a vertex")
    return src_v, src, dst


def _partition(index: VertexIndex, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    n = len(index)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    ncomp, raw = connected_components(graph, directed=False)
    # renumber by first vertex so labels follow the enumeration order
    _, first = np.unique(raw, return_index=True)
    remap = np.empty(ncomp, dtype=np.int64)
    remap[raw[np.sort(first)]] = np.arange(ncomp)
    return remap[raw]


def _sweep(G: GroupHandle, index: VertexIndex) -> np.ndarray:
    srcs, dsts = [], []
    for cls in index.classes:
        _, s, d = _class_edges(G, cls, index)
        srcs.append(s)
        dsts.append(d)
    src = np.concatenate(srcs) if srcs else np.empty(0, np.int64)
    dst = np.concatenate(dsts) if dsts else np.empty(0, np.int64)
    return _partition(index, src, dst)


def _summaries(index: VertexIndex, labels: np.ndarray) -> tuple[list[Component], list[tuple]]:
    """Per-component size, order set and fingerprint ``((order, class, count), ...)``."""
    orders = {c.index: c.element_order for c in index.classes}
    ncomp = int(labels.max()) + 1 if labels.size else 0
    nclass = max(orders, default=0) + 1
    keys, counts = np.unique(labels * nclass + index.class_ids, return_counts=True)
    parts: list[list[tuple[int, int, int]]] = [[] for _ in range(ncomp)]
    for key, k in zip(keys.tolist(), counts.tolist()):
        cid, cls = divmod(key, nclass)
        parts[cid].append((orders[cls], cls, k))
    primesets: dict[frozenset, PrimeSet] = {}
    comps, prints = [], []
    for cid, fp in enumerate(parts):
        fp.sort()
        ords = frozenset(o for o, _, _ in fp)
        if ords not in primesets:
            primesets[ords] = PrimeSet(ords)
        comps.append(Component(cid, sum(k for _, _, k in fp), primesets[ords],
                               tuple(sorted(c for _, c, _ in fp))))
        prints.append(tuple(fp))
    return comps, prints


def classify(partition: ComponentPartition, G: GroupHandle | None = None) -> ComponentPartition:
    """Mark the components preserved by conjugation as big and check their shape.

    A preserved component is a union of whole classes, and a big component
    equals ``E_rho'(G)`` for its own order set ``rho'``; a violation of either
    is an engine error.
    """
    G = G or partition.group
    index = partition.index
    labels = partition.labels
    moved = np.zeros(len(partition.components), dtype=bool)
    for act in conjugation_actions(G):
        img = index.lookup[act[index.ranks]]
        if (img < 0).any():
            raise EngineError("vertex set is not closed under conjugation")
        moved[labels[labels != labels[img]]] = True
    sizes = {c.index: c.size for c in conjugacy_classes(G)}
    orders = {c.index: c.element_order for c in conjugacy_classes(G)}
    for comp, fp in zip(partition.components, partition.fingerprints):
        comp.big = not moved[comp.id]
        if not comp.big:
            continue
        for order, cid, count in fp:
            if count != sizes[cid]:
                raise EngineError(f"big component {comp.id} holds part of class {cid}")
        expected = sum(sizes[c.index] for c in index.classes if c.element_order in comp.orders)
        if comp.size != expected:
            raise EngineError(f"big component {comp.id} is not E_rho(G) for rho = {comp.orders}")
    return partition


def components(G: GroupHandle, rho=None, allow_even: bool = False) -> ComponentPartition:
    """Connected components of ``Gamma_{E_rho(G)}``, classified big/small.

    ``rho`` defaults to all odd primes dividing ``|G|``.  The prime 2 is
    refused unless ``allow_even`` is set (the p-local criteria use it).
    """
    if rho is None:
        rho = nt.odd_prime_factors(G.order)
    index = vertex_set(G, rho, allow_even)
    labels = _sweep(G, index)
    comps, prints = _summaries(index, labels)
    return classify(ComponentPartition(index, labels, comps, prints), G)


def components_naive(G: GroupHandle, rho=None) -> ComponentPartition:
    """Reference implementation: test every pair for commuting, merge with union-find."""
    if rho is None:
        rho = nt.odd_prime_factors(G.order)
    index = vertex_set(G, rho)
    rows = index.rows().astype(np.intp)
    uf = UnionFind(len(index))
    for i in range(len(index)):
        x = rows[i]
        commute = (x[rows] == rows[:, x]).all(axis=1)
        for j in np.flatnonzero(commute[i + 1:]) + i + 1:
            uf.union(i, int(j))
    labels = np.array(uf.labels(), dtype=np.int64)
    comps, prints = _summaries(index, labels)
    return classify(ComponentPartition(index, labels, comps, prints), G)


def gamma_connected(G: GroupHandle, p: int) -> bool:
    """Is ``Gamma_p`` (elements of order p) connected?"""
    return len(components(G, [p], allow_even=True)) == 1


def class_components(G: GroupHandle, cls: ConjugacyClass) -> ComponentPartition:
    """Components of the commuting graph on the single class ``cls``."""
    if not nt.is_prime(cls.element_order) or cls.element_order == 2:
        raise ValueError("class elements must have odd prime order")
    index = _index(G, PrimeSet([cls.element_order]), [cls])
    _, src, dst = _class_edges(G, cls, index)
    labels = _partition(index, src, dst)
    comps, prints = _summaries(index, labels)
    return ComponentPartition(index, labels, comps, prints)


def class_connected(G: GroupHandle, cls: ConjugacyClass) -> bool:
    """Is the commuting graph on ``x**G`` connected?"""
    return len(class_components(G, cls)) == 1


def component_stabilizer(partition: ComponentPartition, x) -> GroupHandle:
    """``H_x``: the elements of ``G`` mapping the component of ``x`` to itself.

    ``H_x`` is generated by ``C_G(x)`` together with one conjugating element
    for each member of ``x**G`` in the component; its order is checked
    against ``|C_G(x)|`` times the number of such members.
    """
    G = partition.group
    xr = G.rank(x)
    labels = class_labels(G)
    cls = next(c for c in conjugacy_classes(G) if c.index == labels[xr])
    members, words = class_transversal(G, cls)
    # re-base the transversal at x: if rep**w0 = x then x**(w0^-1 w) runs over the class
    w0 = words[int(np.flatnonzero(members == xr)[0])]
    w0_inv = np.empty_like(w0)
    w0_inv[w0] = np.arange(w0.size)
    home = partition.labels[partition.index.vertex(xr)]
    same = partition.labels[partition.index.lookup[members]] == home
    shifts = compose_rows(np.broadcast_to(w0_inv, words[same].shape), words[same])
    C = centralizer(G, x)
    H = generated_subgroup(G, list(C.generators) + [Permutation(w, check=False) for w in shifts])
    if H.order != C.order * int(same.sum()):
        raise EngineError("component stabilizer has the wrong order")
    return H


@dataclass
class PrimeLinkGraph:
    """Odd primes of ``|G|``; ``p -> r`` when ``r`` divides some ``|C_G(x)|`` with ``o(x) = p``."""

    nodes: PrimeSet
    edges: set[tuple[int, int]]

    def prime_component(self, r: int) -> PrimeSet:
        adj = defaultdict(set)
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {r}
        stack = [r]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return PrimeSet(seen)


def prime_link_graph(G: GroupHandle) -> PrimeLinkGraph:
    nodes = nt.odd_prime_factors(G.order)
    edges = set()
    for cls in conjugacy_classes(G):
        p = cls.element_order
        if p in nodes:
            for r in nt.odd_prime_factors(G.order // cls.size):
                if r != p:
                    edges.add((p, r))
    return PrimeLinkGraph(nodes, edges)
