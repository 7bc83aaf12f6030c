import math

import numpy as np
import pytest

from oddcommute import numtheory as nt
from oddcommute.catalog import (EXTRAS, SUITE, GroupFileError, GroupSpec, alternating, classical,
                                data_path, field, load_group, parse_group_text, read_group_file)
from oddcommute.catalog.fields import CONWAY
from oddcommute.catalog.groups import handle_from_file
from oddcommute.perm.group import BudgetExceeded

FIELD_ORDERS = sorted({p**e for p, e in CONWAY} | {2, 3, 5, 7, 11, 13})


def poly_powers(p, e):
    """Coefficient vectors of alpha**k, k = 0 .. q-2, by plain polynomial arithmetic."""
    c = CONWAY[(p, e)]
    v = [1] + [0] * (e - 1)
    out = []
    for _ in range(p**e - 1):
        out.append(tuple(v))
        top = v[-1]
        v = [0] + v[:-1]
        v = [(v[i] - top * c[i]) % p for i in range(e)]
    return out


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms_exhaustive(q):
    F = field(q)
    A, M = F.tables()
    e = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[A[:, :, None], e[None, None, :]] == A[e[:, None, None], A[None, :, :]]).all()
    assert (M[M[:, :, None], e[None, None, :]] == M[e[:, None, None], M[None, :, :]]).all()
    # a(b + c) = ab + ac
    assert (M[e[:, None, None], A[None, :, :]] == A[M[:, :, None], M[:, None, :]]).all()
    assert (A[0] == e).all() and (M[1] == e).all()
    nz = e[1:]
    assert (M[nz, F.inv(nz)] == 1).all()
    assert all(sorted(A[a]) == list(e) for a in range(q))


@pytest.mark.parametrize("pe", sorted(CONWAY))
def test_extension_field_matches_polynomial_arithmetic(pe):
    p, e = pe
    q = p**e
    F = field(q)
    vecs = poly_powers(p, e)
    # the Conway polynomial is primitive: powers of alpha are all distinct
    assert len(set(vecs)) == q - 1
    vec = {0: (0,) * e}
    vec.update({k + 1: v for k, v in enumerate(vecs)})
    index = {v: k for k, v in vec.items()}
    A, _ = F.tables()
    for a in range(q):
        for b in range(q):
            s = tuple((x + y) % p for x, y in zip(vec[a], vec[b]))
            assert A[a, b] == index[s]


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25])
def test_frobenius_is_additive(q):
    F = field(q)
    A, _ = F.tables()
    fa = F.frobenius(np.arange(q))
    assert (fa[A] == A[fa[:, None], fa[None, :]]).all()


def test_field_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        field(12)


@pytest.mark.parametrize("n, order", [(5, 60), (8, 20160), (10, 1814400)])
def test_alternating_orders(n, order):
    assert alternating(n).order == order


def test_alternating_range():
    with pytest.raises(ValueError):
        alternating(13)


@pytest.mark.parametrize("ctor, args, order, degree", [
    (classical.projective_special_linear, (2, 7), 168, 8),
    (classical.projective_special_linear, (3, 3), 5616, 13),
    (classical.projective_special_linear, (3, 4), 20160, 21),
    (classical.projective_special_unitary, (3, 3), 6048, 28),
    (classical.projective_special_unitary, (3, 4), 62400, 65),
    (classical.projective_special_unitary, (4, 2), 25920, 45),
    (classical.symplectic, (4, 4), 979200, 85),
    (classical.symplectic, (6, 2), 1451520, 63),
    (classical.symplectic, (4, 3), 25920, 40),
])
def test_classical_orders(ctor, args, order, degree):
    G = ctor(*args)
    assert G.order == order and G.degree == degree
    assert len(G.generators) <= 2


@pytest.mark.parametrize("n, q", [(2, 5), (2, 7), (2, 9), (3, 3)])
def test_projective_kernel_is_the_centre(n, q):
    SL, PSL, project = classical.special_linear_on_vectors(n, q)
    centre = math.gcd(n, q - 1)
    assert SL.order == nt.order_sl(n, q)
    assert PSL.order * centre == SL.order
    assert all(PSL.contains(project(g)) for g in SL.generators)
    kernel = [g for g in SL.enumerate_elements() if project(g).is_identity()]
    assert len(kernel) == centre


def test_classical_budget():
    with pytest.raises(BudgetExceeded):
        classical.projective_special_linear(3, 5, budget=10_000)


def test_classical_rejects_bad_q():
    with pytest.raises(ValueError):
        classical.projective_special_linear(2, 6)


@pytest.mark.parametrize("fname, degree, order", [
    ("m11.grp", 11, 7920), ("m12.grp", 12, 95040), ("m22.grp", 22, 443520),
    ("j1.grp", 266, 175560), ("j2.grp", 100, 604800), ("sz8.grp", 65, 29120),
])
def test_data_files(fname, degree, order):
    gf = read_group_file(data_path(fname))
    assert gf.degree == degree and gf.order == order and gf.simple is True
    assert handle_from_file(gf).order == order


def test_witness_files_have_roles():
    roles = {}
    for f in ("m22_alt7_a", "sp6_2_uabg_U", "sp6_2_uabg_A", "sp6_2_uabg_B", "sp6_2_uabg_g",
              "sp6_2_uabg_x", "psu3_4_abelian_x", "psu3_4_abelian_t1"):
        gf = read_group_file(data_path(f + ".grp"))
        roles[f] = gf.role
        assert handle_from_file(gf).order == gf.order
    assert roles["sp6_2_uabg_g"] == "g" and roles["psu3_4_abelian_t1"] == "family-member"


def test_parse_group_text():
    gf = parse_group_text("# comment\nname T\ndegree 4\norder 12\nsimple false\n"
                          "( 1 , 2 , 3 )\n(1,2)(3,4)\n")
    assert gf.name == "T" and gf.simple is False and len(gf.generators) == 2
    assert handle_from_file(gf).order == 12


@pytest.mark.parametrize("text", [
    "degree 4\n(1,2)\n",                      # no name
    "name T\ndegree 4\n(1,5)\n",              # point out of range
    "name T\ndegree x\n",                     # bad integer
    "name T\ndegree 4\ncolour red\n",         # unknown header
    "name T\ndegree 4\nrole Q\n",             # unknown role
    "name T\ndegree 4\nname U\n",             # duplicate header
    "name T\ndegree 4\nsimple maybe\n",
])
def test_parse_errors(text):
    with pytest.raises(GroupFileError):
        parse_group_text(text)


def test_order_mismatch_is_detected():
    gf = parse_group_text("name T\ndegree 4\norder 24\n(1,2,3)\n(1,2)(3,4)\n")
    with pytest.raises(GroupFileError):
        handle_from_file(gf)


def test_group_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec("x", "linear", n=2, q=6)
    with pytest.raises(ValueError):
        GroupSpec("x", "orthogonal", n=2, q=5)
    with pytest.raises(ValueError):
        GroupSpec("x", "file")
    with pytest.raises(GroupFileError):
        load_group(GroupSpec("x", "alternating", n=5, expected_order=61))


def test_suite_metadata(suite):
    assert "PSU3(5)" not in SUITE and "PSU3(5)" in EXTRAS
    assert "2G2(3)'" in SUITE["PSL2(8)"].notes
    for name, spec in SUITE.items():
        assert spec.expected_simple is True
        assert spec.expected_order is not None
