"""Classical groups as permutation groups on projective points.

Matrices act on row vectors, ``v -> v M``, which matches the left-to-right
product of permutations.  Generators are transvections: a candidate is kept
only when it enlarges the group built so far, and construction stops once
the textbook order is reached.  Because every candidate lies in the group,
reaching the order proves the construction is complete.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .. import numtheory as nt
from ..perm.group import DEFAULT_BUDGET, GroupHandle
from ..perm.permutation import Permutation
from .fields import GF, field


class ProjectiveAction:
    """A set of points of ``GF(q)**n`` (normalized vectors) and the induced action."""

    def __init__(self, F: GF, n: int, vectors: np.ndarray, projective: bool = True):
        self.F = F
        self.n = n
        self.projective = projective
        self.vectors = vectors
        self.weights = F.q ** np.arange(n, dtype=np.int64)
        self.lookup = np.full(F.q**n, -1, dtype=np.int64)
        self.lookup[vectors @ self.weights] = np.arange(len(vectors))

    @property
    def degree(self) -> int:
        return len(self.vectors)

    def apply(self, M: np.ndarray, V: np.ndarray | None = None) -> np.ndarray:
        """``V M`` over the field, for a stack of row vectors."""
        F = self.F
        V = self.vectors if V is None else V
        out = np.zeros((V.shape[0], self.n), dtype=np.int64)
        for i in range(self.n):
            out = F.add(out, F.mul(V[:, i:i + 1], M[i][None, :]))
        return out

    def normalize(self, V: np.ndarray) -> np.ndarray:
        if not self.projective:
            return V
        lead = V[np.arange(V.shape[0]), (V != 0).argmax(axis=1)]
        return self.F.mul(V, self.F.inv(lead)[:, None])

    def permutation(self, M: np.ndarray) -> Permutation:
        images = self.lookup[self.normalize(self.apply(M)) @ self.weights]
        if (images < 0).any():
            raise ValueError("matrix does not preserve the point set")
        return Permutation(images)


def normalized_vectors(F: GF, n: int) -> np.ndarray:
    """All nonzero vectors whose first nonzero entry is 1, in a fixed order."""
    out = []
    for lead in range(n):
        for tail in itertools.product(range(F.q), repeat=n - lead - 1):
            out.append([0] * lead + [1] + list(tail))
    return np.array(out, dtype=np.int64)


def nonzero_vectors(F: GF, n: int) -> np.ndarray:
    return np.array([v for v in itertools.product(range(F.q), repeat=n) if any(v)],
                    dtype=np.int64)


def identity_matrix(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add(out, F.mul(A[:, k:k + 1], B[k][None, :]))
    return out


def transvection(F: GF, form, v: np.ndarray, lam: int) -> np.ndarray:
    """Matrix of ``x -> x + lam * form(x, v) * v``."""
    n = len(v)
    M = identity_matrix(n)
    for i in range(n):
        c = F.mul(lam, form(np.eye(n, dtype=np.int64)[i], v))
        M[i] = F.add(M[i], F.mul(c, v))
    return M


def symplectic_form(F: GF, n: int):
    """Alternating form with antidiagonal Gram matrix ``(e_1..e_m, f_m..f_1)``."""
    m = n // 2

    def form(x, y):
        total = 0
        for i in range(m):
            j = n - 1 - i
            total = F.add(total, F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])))
        return int(total)
    return form


def hermitian_form(F: GF, n: int):
    """``h(x, y) = sum x_i * conj(y_{n-1-i})`` over ``GF(q**2)``, ``conj(a) = a**q``."""
    q = math.isqrt(F.q)

    def form(x, y):
        total = 0
        for i in range(n):
            total = F.add(total, F.mul(x[i], F.pow(y[n - 1 - i], q)))
        return int(total)
    return form


def _prime_subfield_basis(F: GF, sub_q: int) -> list[int]:
    """A basis over GF(p) of the subfield of order ``sub_q`` inside ``F``."""
    members = [a for a in range(F.q) if int(F.pow(a, sub_q)) == a]
    basis: list[int] = []
    span = {0}
    for a in members:
        if a not in span:
            basis.append(a)
            span = {int(F.add(s, F.mul(F.from_int(c), a))) for s in span for c in range(F.p)}
        if len(span) == sub_q:
            break
    return basis


def _grow(action: ProjectiveAction, candidates, target: int, budget: int, name: str) -> GroupHandle:
    gens: list[Permutation] = []
    G = GroupHandle.trivial(action.degree)
    for M in candidates:
        g = action.permutation(M)
        if G.contains(g):
            continue
        gens.append(g)
        G = GroupHandle(action.degree, gens, element_budget=budget)
        if G.order == target:
            return small_generating_pair(G, name=name)
        if G.order > target:
            raise ArithmeticError(f"{name}: generated group exceeds the expected order")
    raise ArithmeticError(f"{name}: candidates exhausted at order {G.order} < {target}")


def small_generating_pair(G: GroupHandle, seed: int = 1, tries: int = 200, name: str | None = None) -> GroupHandle:
    """Replace the generators of ``G`` by two random elements generating it, if found.

    Fewer generators make every later sweep over generators cheaper.
    """
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        a, b = G.random_element(rng), G.random_element(rng)
        H = GroupHandle(G.degree, [a, b], known_order=G.order, element_budget=G.element_budget)
        if H.order == G.order:
            H.name = name
            return H
    G.name = name
    return G


def _budget_check(order: int, budget: int):
    if order > budget:
        from ..perm.group import BudgetExceeded
        raise BudgetExceeded(f"|G| = {order} exceeds the element budget {budget}")


def _require_prime_power(q: int):
    if not nt.is_prime_power(q):
        raise ValueError(f"{q} is not a prime power")


def linear_candidates(F: GF, n: int):
    basis = F.additive_basis()
    for i in range(n - 1):
        for lam in basis:
            for a, b in ((i, i + 1), (i + 1, i)):
                M = identity_matrix(n)
                M[a, b] = lam
                yield M


def projective_special_linear(n: int, q: int, budget: int = DEFAULT_BUDGET) -> GroupHandle:
    """``PSL_n(q)`` on the ``(q**n - 1)/(q - 1)`` points of projective space."""
    _require_prime_power(q)
    if n < 2:
        raise ValueError("n must be at least 2")
    target = nt.order_psl(n, q)
    _budget_check(target, budget)
    F = field(q)
    action = ProjectiveAction(F, n, normalized_vectors(F, n))
    return _grow(action, linear_candidates(F, n), target, budget, f"PSL({n},{q})")


def special_linear_on_vectors(n: int, q: int, budget: int = DEFAULT_BUDGET):
    """``SL_n(q)`` acting faithfully on nonzero vectors, with its projection to ``PSL_n(q)``.

    Returns ``(SL, PSL, project)`` where ``project`` maps an element of the
    first handle to its image in the second.
    """
    _require_prime_power(q)
    F = field(q)
    vec = ProjectiveAction(F, n, nonzero_vectors(F, n), projective=False)
    proj = ProjectiveAction(F, n, normalized_vectors(F, n))
    target = nt.order_sl(n, q)
    _budget_check(target, budget)
    mats = list(linear_candidates(F, n))
    SL = _grow(vec, mats, target, budget, f"SL({n},{q})")
    PSL = projective_special_linear(n, q, budget)
    # a projective point is the class of its normalized vector
    rep_idx = vec.lookup[proj.vectors @ vec.weights]

    def project(g) -> Permutation:
        g = np.asarray(g)
        images = vec.vectors[g[rep_idx]]
        return Permutation(proj.lookup[proj.normalize(images) @ proj.weights])
    return SL, PSL, project


def symplectic(two_m: int, q: int, budget: int = DEFAULT_BUDGET) -> GroupHandle:
    """``PSp_{2m}(q)`` on all projective points (every point is isotropic)."""
    _require_prime_power(q)
    if two_m < 2 or two_m % 2:
        raise ValueError("dimension must be even and positive")
    target = nt.order_psp(two_m, q)
    _budget_check(target, budget)
    F = field(q)
    pts = normalized_vectors(F, two_m)
    action = ProjectiveAction(F, two_m, pts)
    form = symplectic_form(F, two_m)
    basis = F.additive_basis()
    cands = (transvection(F, form, v, lam) for v in pts for lam in basis)
    return _grow(action, cands, target, budget, f"PSp({two_m},{q})")


def isotropic_points(F: GF, n: int) -> np.ndarray:
    form = hermitian_form(F, n)
    pts = normalized_vectors(F, n)
    return pts[[form(v, v) == 0 for v in pts]]


def projective_special_unitary(n: int, q: int, budget: int = DEFAULT_BUDGET) -> GroupHandle:
    """``PSU_n(q)`` on the isotropic points of its hermitian space over ``GF(q**2)``."""
    _require_prime_power(q)
    if n < 3:
        raise ValueError("n must be at least 3")
    target = nt.order_psu(n, q)
    _budget_check(target, budget)
    F = field(q * q)
    pts = isotropic_points(F, n)
    action = ProjectiveAction(F, n, pts)
    form = hermitian_form(F, n)
    # lam with lam**q = -lam, times a basis of GF(q)
    lam0 = next(a for a in range(1, F.q) if int(F.pow(a, q)) == int(F.neg(a)))
    lams = [int(F.mul(lam0, c)) for c in _prime_subfield_basis(F, q)]
    cands = (transvection(F, form, v, lam) for v in pts for lam in lams)
    return _grow(action, cands, target, budget, f"PSU({n},{q})")
