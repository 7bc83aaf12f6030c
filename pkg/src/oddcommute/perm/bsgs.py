"""Stabilizer chains (base and strong generating set).

The chain is first grown by random Schreier-Sims and then completed by the
deterministic Schreier-generator test, so the returned chain is always exact.
When the caller already knows the group order, reaching it is itself a
proof of completeness (the chain only ever describes a subset of the group)
and the deterministic pass is skipped.

Besides order and membership the chain gives a perfect hash of the group:
``g = u_{k-1} * ... * u_1 * u_0`` with ``u_i`` a transversal element of
level ``i``, and the mixed-radix number formed from the transversal indices
is the *rank* of ``g``.  ``rank_rows`` and ``unrank`` are vectorized over
stacks of permutations.
"""

from __future__ import annotations

import numpy as np

from .permutation import point_dtype


class Level:
    """One step of the chain: a base point, its basic orbit and transversal."""

    def __init__(self, base_point: int, degree: int):
        self.base_point = base_point
        self.gens: list[np.ndarray] = []
        self.orbit: list[int] = [base_point]
        self.index = np.full(degree, -1, dtype=np.int64)
        self.index[base_point] = 0
        ident = np.arange(degree, dtype=np.int64)
        self.trans: list[np.ndarray] = [ident]
        self.trans_inv: list[np.ndarray] = [ident]
        self.checked: set[tuple[int, int]] = set()
        self._tables = None

    def grow(self):
        """Close the orbit under ``gens`` keeping existing transversal elements."""
        i = 0
        while i < len(self.orbit):
            beta = self.orbit[i]
            u = self.trans[i]
            for s in self.gens:
                gamma = int(s[beta])
                if self.index[gamma] < 0:
                    self.index[gamma] = len(self.orbit)
                    self.orbit.append(gamma)
                    us = s[u]
                    inv = np.empty_like(us)
                    inv[us] = np.arange(us.size)
                    self.trans.append(us)
                    self.trans_inv.append(inv)
            i += 1
        self._tables = None

    def tables(self):
        if self._tables is None:
            dt = point_dtype(self.index.size)
            self._tables = (np.stack(self.trans).astype(dt), np.stack(self.trans_inv).astype(dt))
        return self._tables

    def __len__(self):
        return len(self.orbit)


class StabChain:
    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[Level] = []
        self.identity = np.arange(degree, dtype=np.int64)

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv)
        return out

    @property
    def strong_generators(self) -> list[np.ndarray]:
        return self.levels[0].gens if self.levels else []

    def strip(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Sift ``g`` from level ``start``; return the residue and the level it stopped at."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            j = lv.index[g[lv.base_point]]
            if j < 0:
                return g, i
            g = lv.trans_inv[j][g]
        return g, len(self.levels)

    def contains(self, g) -> bool:
        g = np.asarray(g, dtype=np.int64)
        if g.size != self.degree:
            return False
        h, j = self.strip(g)
        return j == len(self.levels) and np.array_equal(h, self.identity)

    def _add_strong(self, h: np.ndarray, first: int, stop: int):
        """Add ``h`` as strong generator for levels ``first .. stop``.

        ``stop == len(levels)`` means ``h`` fixes the whole base, so a new
        level based at a point moved by ``h`` is appended first.
        """
        if stop == len(self.levels):
            moved = np.flatnonzero(h != self.identity)
            self.levels.append(Level(int(moved[0]), self.degree))
        for lv in self.levels[first:stop + 1]:
            lv.gens.append(h)
            lv.grow()

    def add_generator(self, g) -> bool:
        """Sift ``g`` into the chain; return True if the chain changed."""
        g = np.asarray(g, dtype=np.int64)
        h, j = self.strip(g)
        if j == len(self.levels) and np.array_equal(h, self.identity):
            return False
        self._add_strong(h, 0, j)
        return True

    def complete(self):
        """Deterministic Schreier-Sims: make every Schreier generator sift to the identity."""
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = None
            for a in range(len(lv.orbit)):
                u = lv.trans[a]
                for si, s in enumerate(lv.gens):
                    if (a, si) in lv.checked:
                        continue
                    us = s[u]
                    b = lv.index[s[lv.orbit[a]]]
                    h = lv.trans_inv[b][us]
                    res, j = self.strip(h, i + 1)
                    if j < len(self.levels) or not np.array_equal(res, self.identity):
                        self._add_strong(res, i + 1, j)
                        restart = min(j, len(self.levels) - 1)
                        break
                    lv.checked.add((a, si))
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    # -- vectorized rank / unrank -------------------------------------------------

    def radices(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def rank_rows(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Ranks of a stack of permutations and a membership mask.

        Non-members receive rank -1.
        """
        rows = np.asarray(rows)
        m = rows.shape[0]
        p = rows.astype(point_dtype(self.degree), copy=False)
        rank = np.zeros(m, dtype=np.int64)
        ok = np.ones(m, dtype=bool)
        weight = 1
        for lv in self.levels:
            _, inv = lv.tables()
            c = lv.index[p[:, lv.base_point]]
            ok &= c >= 0
            c = np.where(c >= 0, c, 0)
            rank += c * weight
            weight *= len(lv)
            p = inv[c[:, None], p]
        ok &= (p == np.arange(self.degree)).all(axis=1)
        rank[~ok] = -1
        return rank, ok

    def unrank(self, ranks: np.ndarray) -> np.ndarray:
        """Elements with the given ranks, as a stack of image arrays."""
        ranks = np.asarray(ranks, dtype=np.int64)
        dtype = point_dtype(self.degree)
        if not self.levels:
            return np.broadcast_to(self.identity.astype(dtype), (ranks.size, self.degree)).copy()
        coords = []
        r = ranks.copy()
        for lv in self.levels:
            coords.append(r % len(lv))
            r //= len(lv)
        trans = [lv.tables()[0] for lv in self.levels]
        out = trans[-1][coords[-1]]
        for i in range(len(self.levels) - 2, -1, -1):
            out = np.take_along_axis(trans[i][coords[i]], out.astype(np.intp), axis=1)
        out = out.astype(dtype, copy=False)
        return out


def schreier_sims(degree: int, gens, known_order: int | None = None, seed: int = 0,
                  base: list[int] | None = None) -> StabChain:
    """Exact stabilizer chain for the group generated by ``gens``."""
    chain = StabChain(degree)
    ident = chain.identity
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    gens = [g for g in gens if not np.array_equal(g, ident)]
    for b in base or []:
        chain.levels.append(Level(int(b), degree))
    if not gens:
        chain.levels = []
        return chain
    for g in gens:
        if not chain.levels or all(g[lv.base_point] == lv.base_point for lv in chain.levels):
            moved = np.flatnonzero(g != ident)
            chain.levels.append(Level(int(moved[0]), degree))
    chain.levels[0].gens.extend(gens)
    for i, lv in enumerate(chain.levels):
        if i > 0:
            fixed = chain.base[:i]
            lv.gens.extend(g for g in gens if all(g[b] == b for b in fixed))
        lv.grow()

    # random phase: product replacement, stop after a run of trivial sifts
    rng = np.random.default_rng(seed)
    pool = list(gens) * max(1, (11 // len(gens)) + 1)
    pool = pool[: max(10, len(gens))]
    acc = ident.copy()
    for _ in range(50):
        i, j = rng.choice(len(pool), size=2, replace=False)
        pool[i] = pool[j][pool[i]] if rng.random() < 0.5 else pool[i][pool[j]]
    quiet = 0
    while quiet < 30:
        if known_order is not None and chain.order() == known_order:
            break
        i, j = rng.choice(len(pool), size=2, replace=False)
        pool[i] = pool[j][pool[i]]
        acc = pool[i][acc]
        quiet = 0 if chain.add_generator(acc) else quiet + 1
    if known_order is None or chain.order() != known_order:
        chain.complete()
    return chain
