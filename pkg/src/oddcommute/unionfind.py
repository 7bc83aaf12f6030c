"""Disjoint-set forest with path halving and union by size."""

from __future__ import annotations


class UnionFind:
    """Union-find over the integers ``0 .. n-1``.

    :param n: number of elements
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; return False if they were already one."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True

    def labels(self) -> list[int]:
        """Component label per element, numbered by first appearance."""
        seen: dict[int, int] = {}
        out = []
        for a in range(len(self.parent)):
            r = self.find(a)
            out.append(seen.setdefault(r, len(seen)))
        return out
