"""Permutation groups backed by a verified stabilizer chain."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .bsgs import StabChain, schreier_sims
from .permutation import Permutation, point_dtype

DEFAULT_BUDGET = 50_000_000
CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    """The group is too large for an operation that enumerates its elements."""


class GroupHandle:
    """A permutation group: generators plus an exact stabilizer chain.

    Handles are immutable.  Element-level sweeps read the element table
    (one row per element, in rank order) which is built lazily, cached, and
    refused for groups larger than ``element_budget``.
    """

    def __init__(self, degree: int, generators, chain: StabChain | None = None, *,
                 known_order: int | None = None, element_budget: int = DEFAULT_BUDGET,
                 name: str | None = None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = g if isinstance(g, Permutation) else Permutation(g)
            if g.degree != self.degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
            gens.append(g)
        self.generators: list[Permutation] = gens
        self.chain = chain if chain is not None else schreier_sims(
            self.degree, [g.images for g in gens], known_order=known_order)
        self.order = self.chain.order()
        self.element_budget = element_budget
        self.name = name
        self._table = None
        self.cache: dict = {}

    @classmethod
    def trivial(cls, degree: int, **kw) -> "GroupHandle":
        return cls(degree, [], **kw)

    def __repr__(self):
        label = self.name or "Group"
        return f"<{label} degree={self.degree} order={self.order}>"

    def __len__(self):
        return self.order

    @property
    def base(self) -> list[int]:
        return self.chain.base

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g) -> bool:
        return self.chain.contains(np.asarray(g))

    __contains__ = contains

    def is_subgroup_of(self, other: "GroupHandle") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_trivial(self) -> bool:
        return self.order == 1

    def rank(self, g) -> int:
        r, ok = self.chain.rank_rows(np.asarray(g)[None, :])
        if not ok[0]:
            raise ValueError("element is not in the group")
        return int(r[0])

    def rank_rows(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized ranks and membership mask, chunked to bound memory."""
        rows = np.asarray(rows)
        if rows.shape[0] <= CHUNK:
            return self.chain.rank_rows(rows)
        ranks = np.empty(rows.shape[0], dtype=np.int64)
        ok = np.empty(rows.shape[0], dtype=bool)
        for s in range(0, rows.shape[0], CHUNK):
            ranks[s:s + CHUNK], ok[s:s + CHUNK] = self.chain.rank_rows(rows[s:s + CHUNK])
        return ranks, ok

    def element(self, rank: int) -> Permutation:
        return Permutation(self.chain.unrank(np.array([rank]))[0], check=False)

    def check_budget(self):
        if self.order > self.element_budget:
            raise BudgetExceeded(
                f"|G| = {self.order} exceeds the element budget {self.element_budget}")

    def elements(self) -> np.ndarray:
        """Element table, row ``r`` being the element of rank ``r``."""
        if self._table is None:
            self.check_budget()
            table = np.empty((self.order, self.degree), dtype=point_dtype(self.degree))
            for s in range(0, self.order, CHUNK):
                e = min(self.order, s + CHUNK)
                table[s:e] = self.chain.unrank(np.arange(s, e))
            table.setflags(write=False)
            self._table = table
        return self._table

    def enumerate_elements(self, chunk: int = CHUNK) -> Iterator[Permutation]:
        """Stream every element once, in rank order, without building the table."""
        self.check_budget()
        for s in range(0, self.order, chunk):
            for row in self.chain.unrank(np.arange(s, min(self.order, s + chunk))):
                yield Permutation(row, check=False)

    def subgroup(self, generators, known_order: int | None = None) -> "GroupHandle":
        return GroupHandle(self.degree, generators, known_order=known_order,
                           element_budget=self.element_budget)

    def random_element(self, rng: np.random.Generator) -> Permutation:
        return self.element(int(rng.integers(self.order)))
