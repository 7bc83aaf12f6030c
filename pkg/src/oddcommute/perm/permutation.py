"""Permutations stored as image arrays on the points ``0 .. degree-1``.

Products compose left to right: ``(a * b)[i] == b[a[i]]``, i.e. ``a`` is
applied first.  Conjugation follows the same convention, ``x ** g`` being
``g**-1 * x * g``.
"""

from __future__ import annotations

import math
import re

import numpy as np


def point_dtype(degree: int):
    """Smallest unsigned dtype able to hold the points of ``degree``."""
    return np.uint8 if degree <= 256 else np.uint16 if degree <= 65536 else np.uint32


class Permutation:
    """Immutable permutation; hashable and usable as a numpy array."""

    __slots__ = ("images", "_key")

    def __init__(self, images, check: bool = True):
        arr = np.array(images, dtype=np.int64).reshape(-1)
        if check:
            n = arr.size
            if n < 1:
                raise ValueError("degree must be at least 1")
            if arr.min() < 0 or arr.max() >= n or np.unique(arr).size != n:
                raise ValueError("image array is not a permutation")
        arr.setflags(write=False)
        self.images = arr
        self._key = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(np.arange(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles, degree: int, one_based: bool = False) -> "Permutation":
        img = np.arange(degree)
        shift = 1 if one_based else 0
        for cyc in cycles:
            pts = [int(c) - shift for c in cyc]
            if len(set(pts)) != len(pts):
                raise ValueError(f"repeated point in cycle {cyc}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if not 0 <= a < degree:
                    raise ValueError(f"point {a + shift} outside degree {degree}")
                img[a] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse 1-based disjoint-cycle notation such as ``(1,2,3)(4,5)``."""
        body = re.sub(r"\s+", "", text)
        if body in ("", "()"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", body):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [c.split(",") for c in re.findall(r"\(([^)]*)\)", body)]
        return cls.from_cycles(cycles, degree, one_based=True)

    @property
    def degree(self) -> int:
        return self.images.size

    def __array__(self, dtype=None, copy=None):
        return self.images if dtype is None else self.images.astype(dtype)

    def __len__(self):
        return self.images.size

    def __getitem__(self, i):
        return int(self.images[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(np.asarray(other)[self.images], check=False)

    def __invert__(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.images.size)
        return Permutation(inv, check=False)

    inverse = __invert__

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return self.conjugate(k)
        k = int(k)
        base = self if k >= 0 else ~self
        k = abs(k)
        result = np.arange(self.degree)
        acc = base.images
        while k:
            if k & 1:
                result = acc[result]
            acc = acc[acc]
            k >>= 1
        return Permutation(result, check=False)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g**-1 * self * g``."""
        g = np.asarray(g)
        out = np.empty_like(self.images)
        out[g] = g[self.images]
        return Permutation(out, check=False)

    def commutes_with(self, other: "Permutation") -> bool:
        a, b = self.images, np.asarray(other)
        return bool(np.array_equal(a[b], b[a]))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(int(j))
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return element_order(self)

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.images.astype(point_dtype(self.degree)).tobytes()
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and self.key() == other.key()

    def __lt__(self, other: "Permutation"):
        return tuple(self.images) < tuple(other.images)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()}, degree={self.degree})"


def element_order(g) -> int:
    """Least ``k >= 1`` with ``g**k = 1``: the lcm of the cycle lengths."""
    img = np.asarray(g)
    seen = np.zeros(img.size, dtype=bool)
    order = 1
    for start in range(img.size):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = img[j]
            length += 1
        order = math.lcm(order, length)
    return order


def compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise product ``a[i] * b[i]`` of two stacks of permutations."""
    return np.take_along_axis(b, a.astype(np.intp, copy=False), axis=1)


def invert_rows(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    out[rows, a] = np.arange(a.shape[1], dtype=a.dtype)
    return out


def power_rows(a: np.ndarray, k: int) -> np.ndarray:
    """Row-wise ``k``-th power of a stack of permutations."""
    result = np.broadcast_to(np.arange(a.shape[1], dtype=a.dtype), a.shape).copy()
    acc = a if k >= 0 else invert_rows(a)
    k = abs(int(k))
    while k:
        if k & 1:
            result = compose_rows(result, acc)
        k >>= 1
        if k:
            acc = compose_rows(acc, acc)
    return result


def conjugate_rows(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Conjugate every row of ``x`` by the single permutation ``g``."""
    g = np.asarray(g)
    out = np.empty_like(x)
    out[:, g] = g[x]
    return out


def conjugate_by_rows(x: np.ndarray, gs: np.ndarray) -> np.ndarray:
    """Conjugate the single permutation ``x`` by every row of ``gs``."""
    x = np.asarray(x, dtype=np.intp)
    out = np.empty_like(gs)
    rows = np.arange(gs.shape[0])[:, None]
    out[rows, gs] = gs[:, x]
    return out


def is_identity_rows(a: np.ndarray) -> np.ndarray:
    return (a == np.arange(a.shape[1], dtype=a.dtype)).all(axis=1)


def orders_rows(a: np.ndarray) -> np.ndarray:
    """Element order of every row, by iterating the cycle structure."""
    m, n = a.shape
    order = np.ones(m, dtype=np.int64)
    a = a.astype(np.intp, copy=False)
    idx = np.arange(n)
    pos = np.broadcast_to(idx, (m, n)).copy()
    length = np.zeros((m, n), dtype=np.int64)
    done = np.zeros((m, n), dtype=bool)
    step = 0
    rows = np.arange(m)[:, None]
    # walk every point until it returns home; the first return time is its cycle length
    while not done.all():
        step += 1
        pos = a[rows, pos]
        back = (pos == idx) & ~done
        length[back] = step
        done |= back
    for j in range(n):
        order = np.lcm(order, length[:, j])
    return order
