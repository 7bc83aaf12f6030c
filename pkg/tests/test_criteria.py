import pytest

from oddcommute import commgraph as cg
from oddcommute import criteria as cr
from oddcommute.catalog import alternating, data_path, frobenius, read_group_file, symmetric
from oddcommute.catalog.groups import handle_from_file
from oddcommute.perm import ops
from oddcommute.perm.group import GroupHandle
from oddcommute.perm.permutation import Permutation


def P(text, n):
    return Permutation.parse(text, n)


def sub(n, *cycles):
    return GroupHandle(n, [P(c, n) for c in cycles])


def witness_file(name):
    gf = read_group_file(data_path(name + ".grp"))
    return gf, handle_from_file(gf)


def wreath_3_2():
    return sub(6, "(1,2,3)", "(1,4)(2,5)(3,6)")


# -- p-local -----------------------------------------------------------------------------


@pytest.mark.parametrize("make, p, verdict", [
    (lambda: frobenius(7, 3), 7, True),
    (lambda: alternating(5), 3, False),
    (lambda: symmetric(4), 2, True),
    (wreath_3_2, 3, True),
    (lambda: frobenius(13, 3), 13, True),
])
def test_p_local_examples(make, p, verdict):
    G = make()
    rep = cr.p_local_criterion(G, p)
    assert rep.verdict is verdict
    if verdict:
        assert cr.gamma_connected(G, p)
        assert cr.rebuild(G, rep.witness["p_core"]).order == ops.p_core(G, p).order
    else:
        assert rep.counterexample is not None


def test_p_local_rejects_non_divisors():
    with pytest.raises(ValueError):
        cr.p_local_criterion(alternating(5), 7)


# -- generation, strongly embedded, Bender -----------------------------------------------


def test_generation_psl2_7(suite):
    G = suite("PSL2(7)")
    rep = cr.generation_criterion(G, 7)
    assert rep.verdict is False
    U = cr.rebuild(G, rep.counterexample["U"])
    assert U.order == 21
    assert cr.strongly_p_embedded(G, U, 7)


def test_generation_alt8():
    rep = cr.generation_criterion(alternating(8), 3)
    assert rep.verdict is True and rep.witness["U_order"] == 20160


def test_generation_psu3_3(suite):
    # listed as true in one example line; the computation and the no-big-component
    # classification of PSU3(3) both say false (see the decisions ledger)
    G = suite("PSU3(3)")
    rep = cr.generation_criterion(G, 3)
    assert rep.verdict is False
    assert not cr.gamma_connected(G, 3)


def test_strongly_embedded_negative_cases():
    A8 = alternating(8)
    C = ops.centralizer(A8, P("(1,2,3)", 8))
    assert cr.strongly_p_embedded(A8, C, 3) is False
    S5 = symmetric(5)
    assert cr.strongly_p_embedded(S5, alternating(5), 3) is False
    with pytest.raises(ValueError):
        cr.strongly_p_embedded(S5, S5, 3)


def test_index_limit(monkeypatch):
    monkeypatch.setattr(cr, "INDEX_LIMIT", 5)
    G = alternating(5)
    U = sub(5, "(1,2,3,4,5)")
    with pytest.raises(cr.IndexTooLarge):
        cr.strongly_p_embedded(G, U, 5)


def test_sylow_limit(monkeypatch):
    monkeypatch.setattr(cr, "SYLOW_LIMIT", 8)
    with pytest.raises(cr.SylowTooLarge):
        cr.generation_criterion(alternating(9), 3)


@pytest.mark.parametrize("name, p, connected, u_order", [
    ("PSL2(7)", 7, False, 21),
    ("Alt8", 3, True, None),
    ("M11", 11, False, 55),
    ("Alt5", 5, False, 10),
    ("PSL3(3)", 3, True, None),
])
def test_bender_examples(suite, name, p, connected, u_order):
    G = suite(name)
    rep = cr.bender_equivalence(G, p)
    assert rep.verdict is connected
    assert rep.witness["gamma_connected"] is rep.witness["generation"] is connected
    if not connected:
        assert rep.witness["U"]["order"] == u_order
        assert rep.witness["U_strongly_p_embedded"] is True


def test_bender_on_nonsimple_groups():
    for G, p in ((symmetric(4), 3), (symmetric(4), 2), (frobenius(7, 3), 7), (wreath_3_2(), 3)):
        rep = cr.bender_equivalence(G, p)
        assert rep.witness["gamma_connected"] == rep.witness["generation"]


@pytest.mark.parametrize("make, p, expected", [
    (lambda: alternating(5), 5, True),
    (lambda: alternating(9), 3, False),
    (lambda: alternating(9), 7, True),
    (lambda: symmetric(4), 2, False),
])
def test_sylow_cyclic_examples(make, p, expected):
    assert cr.sylow_cyclic(make(), p) is expected


def test_sylow_cyclic_psl3_3(suite):
    assert cr.sylow_cyclic(suite("PSL3(3)"), 13) is True


@pytest.mark.parametrize("name", ["Alt5", "Alt6", "Alt7", "PSL2(7)", "PSL2(8)", "PSL3(3)",
                                  "PSU3(3)", "M11"])
def test_connected_gamma_forbids_cyclic_sylow(suite, name):
    G = suite(name)
    for p in cg.nt.odd_prime_factors(G.order):
        if cr.gamma_connected(G, p):
            assert not cr.sylow_cyclic(G, p) or ops.p_core(G, p).order > 1


# -- amalgam ------------------------------------------------------------------------------


def test_amalgam_alt6_point_stabilizers_fail():
    # Gamma_3(Alt5) is disconnected (the 3-cycles have centralizer of order 3),
    # so this pair never satisfies the hypotheses, and Gamma_3(Alt6) is disconnected too
    G = alternating(6)
    A = sub(6, "(1,2,3)", "(1,2,3,4,5)")
    B = sub(6, "(2,3,4)", "(2,3,4,5,6)")
    rep = cr.amalgam_criterion(G, A, B, 3)
    assert rep.verdict is False
    assert rep.witness["hypotheses"]["generate"] and rep.witness["hypotheses"]["intersection_has_p_element"]
    assert set(rep.counterexample["failed"]) == {"gamma_A_connected", "gamma_B_connected"}
    assert not cr.gamma_connected(G, 3)


def test_amalgam_alt8_from_two_alt7():
    G = alternating(8)
    A = sub(8, "(1,2,3)", "(1,2,3,4,5,6,7)")
    B = sub(8, "(2,3,4)", "(2,3,4,5,6,7,8)")
    rep = cr.amalgam_criterion(G, A, B, 3)
    assert rep.verdict is True and rep.witness["gamma_connected"]
    assert rep.witness["intersection_order"] == 360


def test_amalgam_not_generating():
    G = alternating(7)
    A = sub(7, "(1,2,3)", "(1,2,3,4,5)")
    rep = cr.amalgam_criterion(G, A, A, 3)
    assert rep.verdict is False and "generate" in rep.counterexample["failed"]


def test_amalgam_m22():
    _, G = witness_file("m22")
    _, A = witness_file("m22_alt7_a")
    _, B = witness_file("m22_alt7_b")
    rep = cr.amalgam_criterion(G, A, B, 3)
    assert rep.verdict is True
    assert A.order == B.order == 2520


# -- UABg ---------------------------------------------------------------------------------


def test_uabg_degenerate():
    G = alternating(5)
    U = sub(5, "(1,2,3,4,5)")
    g = P("(2,5)(3,4)", 5)
    rep = cr.uabg_criterion(G, U, U, U, g, P("(1,2,3,4,5)", 5))
    assert rep.verdict is True
    assert rep.witness["grown_order"] == 10 and rep.witness["H_x_order"] == 10


def test_uabg_conjugate_not_in_b():
    G = alternating(5)
    U = sub(5, "(1,2,3,4,5)")
    rep = cr.uabg_criterion(G, U, U, U, P("(1,2,3)", 5), P("(1,2,3,4,5)", 5))
    assert rep.verdict is False and "A_conj_in_B" in rep.counterexample["failed"]


def test_uabg_sp6_2(suite):
    G = suite("PSp6(2)")
    parts = {k: witness_file("sp6_2_uabg_" + k) for k in "UABgx"}
    U, A, B = parts["U"][1], parts["A"][1], parts["B"][1]
    g = parts["g"][0].generators[0]
    x = parts["x"][0].generators[0]
    rep = cr.uabg_criterion(G, U, A, B, g, x)
    assert rep.verdict is True
    assert all(rep.witness["hypotheses"].values())
    assert rep.witness["U_order"] == 4320 < rep.witness["grown_order"] <= rep.witness["H_x_order"]


# -- abelian family -----------------------------------------------------------------------


def test_abelian_degenerate_normal_subgroup():
    G = frobenius(7, 3)
    x = next(c for c in ops.conjugacy_classes(G) if c.element_order == 7).representative
    rep = cr.abelian_criterion(G, x, [GroupHandle(G.degree, [x])])
    assert rep.verdict is True and rep.witness["class_connected"]


def test_abelian_proper_join_is_inconclusive():
    G = alternating(5)
    x = P("(1,2,3,4,5)", 5)
    rep = cr.abelian_criterion(G, x, [GroupHandle(5, [x])])
    assert rep.verdict is False and rep.conclusive is False
    assert rep.counterexample["join_order"] == 10


def test_abelian_rejects_bad_members():
    G = alternating(5)
    x = P("(1,2,3)", 5)
    with pytest.raises(ValueError):
        cr.abelian_criterion(G, x, [sub(5, "(1,2,3)", "(1,2)(4,5)")])
    with pytest.raises(ValueError):
        cr.abelian_criterion(G, x, [sub(5, "(1,2)(3,4)")])


def test_abelian_psu3_4(suite):
    G = suite("PSU3(4)")
    x = witness_file("psu3_4_abelian_x")[0].generators[0]
    family = [witness_file(f"psu3_4_abelian_{t}")[1] for t in ("t1", "t2")]
    rep = cr.abelian_criterion(G, x, family)
    assert rep.verdict is True and rep.witness["join_order"] == 62400
    assert ops.centralizer(G, x).order == 300


# -- scans --------------------------------------------------------------------------------


@pytest.mark.parametrize("name, cls, corder", [("Alt8", "3A", 180), ("M12", "3A", 54),
                                               ("PSL3(3)", "3A", 54)])
def test_nonabelian_scan(suite, name, cls, corder):
    G = suite(name)
    rep = cr.nonabelian_centralizer_scan(G, cg.components(G))
    (w,) = rep.witness["witnesses"]
    assert (w["class"], w["centralizer_order"]) == (cls, corder)
    x = Permutation.parse(w["representative"], G.degree)
    assert not ops.is_abelian(ops.centralizer(G, x))


def test_nonabelian_scan_vacuous():
    G = alternating(5)
    rep = cr.nonabelian_centralizer_scan(G, cg.components(G))
    assert rep.verdict is True and rep.witness["witnesses"] == []


@pytest.mark.parametrize("name, classes", [("M12", {"5A", "11A", "11B"}),
                                           ("Alt8", {"7A", "7B"}),
                                           ("PSL3(3)", {"13A", "13B", "13C", "13D"})])
def test_small_component_corollary(suite, name, classes):
    G = suite(name)
    rep = cr.small_component_corollary(G, cg.components(G), name)
    assert rep.verdict is True
    assert {row["class"] for row in rep.witness["checked"]} == classes


def test_small_component_corollary_needs_big():
    G = alternating(5)
    with pytest.raises(ValueError):
        cr.small_component_corollary(G, cg.components(G))


def test_atlas_names_alt5():
    names = sorted(cr.atlas_class_names(alternating(5)).values())
    assert names == ["1A", "2A", "3A", "5A", "5B"]


# -- reports ------------------------------------------------------------------------------


def test_witnesses_revalidate(suite):
    G = suite("PSL2(7)")
    for rep in (cr.generation_criterion(G, 7), cr.bender_equivalence(G, 3),
                cr.p_local_criterion(G, 7)):
        d = rep.to_dict()
        for blob in (d["witness"], d["counterexample"] or {}):
            for key, val in blob.items():
                if isinstance(val, dict) and "generators" in val:
                    assert cr.rebuild(G, val).order == val["order"], key


def test_report_to_dict_shape():
    rep = cr.CriterionReport("x", True, {"a": 1})
    assert rep.to_dict() == {"criterion": "x", "verdict": True, "witness": {"a": 1},
                             "counterexample": None, "conclusive": True}
