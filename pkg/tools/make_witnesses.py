"""Regenerate the witness files for the UABg and abelian-family checks.

Run from the repository root: ``python3 tools/make_witnesses.py``.  Output
goes to ``src/oddcommute/catalog/data``.  Everything is built from the
catalog's own point actions, so the permutations live in the same
representation as ``suite_group("PSp6(2)")`` and ``suite_group("PSU3(4)")``.
"""

from __future__ import annotations

import itertools

import numpy as np

from oddcommute.catalog import classical, suite_group
from oddcommute.catalog.fields import field
from oddcommute.catalog.groups import data_path
from oddcommute.perm import ops
from oddcommute.perm.group import GroupHandle
from oddcommute.perm.permutation import orders_rows


def write(fname, name, role, degree, gens, order=None, comment=""):
    lines = ([f"# {comment}"] if comment else []) + ["# Regenerate with tools/make_witnesses.py.",
                                                      f"name {name}", f"degree {degree}", f"role {role}"]
    if order is not None:
        lines.append(f"order {order}")
    lines += [g.to_cycle_string() for g in gens]
    data_path(fname).write_text("\n".join(lines) + "\n")
    print("wrote", fname)


def sp6_uabg():
    F = field(2)
    n = 6
    action = classical.ProjectiveAction(F, n, classical.normalized_vectors(F, n))
    form = classical.symplectic_form(F, n)

    def unit(*idx):
        v = np.zeros(n, dtype=np.int64)
        v[list(idx)] = 1
        return v

    def tv(v):
        return action.permutation(classical.transvection(F, form, v, 1))

    # basis order e1 e2 e3 f3 f2 f1: the pair <e1, f1> is coordinates 0 and 5
    a_gens = [tv(unit(0)), tv(unit(5))]
    inner = (1, 2, 3, 4)
    b_gens = [tv(unit(*s)) for k in (1, 2) for s in itertools.combinations(inner, k)]
    A = GroupHandle(action.degree, a_gens)
    B = GroupHandle(action.degree, b_gens)
    assert A.order == 6 and B.order == 720, (A.order, B.order)
    swap = np.eye(n, dtype=np.int64)[[1, 0, 2, 3, 5, 4]]
    g = action.permutation(swap)
    x = a_gens[0] * a_gens[1]
    assert x.order() == 3
    G = suite_group("PSp6(2)")
    assert all(G.contains(h) for h in a_gens + b_gens + [g])
    U = GroupHandle(action.degree, a_gens + b_gens)
    note = "Sp2(2) x Sp4(2) inside Sp6(2), basis e1 e2 e3 f3 f2 f1"
    write("sp6_2_uabg_U.grp", "Sp2(2)xSp4(2)", "U", action.degree, U.generators, U.order, note)
    write("sp6_2_uabg_A.grp", "Sp2(2) on <e1,f1>", "A", action.degree, a_gens, 6, note)
    write("sp6_2_uabg_B.grp", "Sp4(2) on <e2,e3,f3,f2>", "B", action.degree, b_gens, 720, note)
    write("sp6_2_uabg_g.grp", "swap e1<->e2, f1<->f2", "g", action.degree, [g], 2, note)
    write("sp6_2_uabg_x.grp", "order-3 element of A", "x", action.degree, [x], 3, note)


def psu3_4_family():
    G = suite_group("PSU3(4)")
    cls = next(c for c in ops.conjugacy_classes(G)
               if c.element_order == 5 and c.centralizer.order == 300)
    x = cls.representative
    C = cls.centralizer
    rows = C.elements()
    fives = [C.element(i) for i in np.flatnonzero(orders_rows(rows) == 5)]
    # tori <x, y> with y of order 5 outside <x>; keep the first pair whose normalizers generate G
    X = GroupHandle(G.degree, [x])
    tori = []
    seen = set()
    for y in fives:
        if X.contains(y):
            continue
        T = GroupHandle(G.degree, [x, y])
        key = frozenset(G.rank_rows(T.elements())[0].tolist())
        if key in seen:
            continue
        seen.add(key)
        tori.append(T)
    norms = [ops.normalizer(G, T) for T in tori]
    for i, j in itertools.combinations(range(len(tori)), 2):
        J = GroupHandle(G.degree, norms[i].generators + norms[j].generators)
        if J.order == G.order:
            note = "x of order 5 with |C(x)| = 300 and two 5x5 tori through x"
            write("psu3_4_abelian_x.grp", "x", "x", G.degree, [x], 5, note)
            write("psu3_4_abelian_t1.grp", "torus 1", "family-member", G.degree,
                  tori[i].generators, tori[i].order, note)
            write("psu3_4_abelian_t2.grp", "torus 2", "family-member", G.degree,
                  tori[j].generators, tori[j].order, note)
            return
    raise SystemExit("no generating pair of tori found")


if __name__ == "__main__":
    sp6_uabg()
    psu3_4_family()
