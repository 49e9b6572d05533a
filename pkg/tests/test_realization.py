import pytest

from nilsoliton import linalg
from nilsoliton.algebra import check_jacobi, killing_form
from nilsoliton.classify import iwasawa_for
from nilsoliton.errors import UnsupportedRealForm
from nilsoliton.realization import build_space, canonical_id, catalog_ids
from nilsoliton.scalars import identity

# (dim g, root system, dim n, multiplicity of each simple root) from the standard real-form tables
TABLE = {
    "sl2r": (3, "A1", 1, (1,)), "sl3r": (8, "A2", 3, (1, 1)), "sl4r": (15, "A3", 6, (1, 1, 1)),
    "sl3c": (16, "A2", 6, (2, 2)), "sl4c": (30, "A3", 12, (2, 2, 2)),
    "sl3h": (35, "A2", 12, (4, 4)), "sl4h": (63, "A3", 24, (4, 4, 4)),
    "so23": (10, "B2", 4, (1, 1)), "so5c": (20, "B2", 8, (2, 2)),
    "so2q:4": (15, "B2", 6, (1, 2)), "so2q:5": (21, "B2", 8, (1, 3)), "so2q:6": (28, "B2", 10, (1, 4)),
    "so2q:7": (36, "B2", 12, (1, 5)), "so2q:8": (45, "B2", 14, (1, 6)),
    "sun1:2": (8, "BC1", 3, (2,)), "sun1:3": (15, "BC1", 5, (4,)), "sun1:4": (24, "BC1", 7, (6,)),
    "spn1:2": (21, "BC1", 7, (4,)), "spn1:3": (36, "BC1", 11, (8,)),
    "split:A1": (3, "A1", 1, (1,)), "split:A2": (8, "A2", 3, (1, 1)), "split:A3": (15, "A3", 6, (1, 1, 1)),
    "split:A4": (24, "A4", 10, (1,) * 4), "split:B2": (10, "B2", 4, (1, 1)), "split:B3": (21, "B3", 9, (1,) * 3),
    "split:B4": (36, "B4", 16, (1,) * 4), "split:C3": (21, "C3", 9, (1,) * 3),
    "split:C4": (36, "C4", 16, (1,) * 4), "split:D4": (28, "D4", 12, (1,) * 4), "split:G2": (14, "G2", 6, (1, 1)),
    "son1:3": (6, "A1", 2, (2,)), "son1:4": (10, "A1", 3, (3,)), "son1:5": (15, "A1", 4, (4,)),
    "so46": (45, "B4", 20, (1, 1, 1, 2)), "su23": (24, "BC2", 10, (2, 2)),
}


def test_catalog_covers_table():
    assert set(catalog_ids()) == set(TABLE)


@pytest.mark.parametrize("space", sorted(TABLE))
def test_restricted_roots(space):
    dim_g, kind, dim_n, simple_mults = TABLE[space]
    iw = iwasawa_for(space)
    assert iw.g.dim == dim_g
    assert iw.roots.simple.kind_label == kind
    assert iw.n_algebra.dim == dim_n
    assert tuple(iw.mult(r.coords) for r in iw.roots.simple_roots) == simple_mults


@pytest.mark.parametrize("space", ["sl3r", "so23", "sl3c", "sun1:2", "split:G2", "so2q:4"])
def test_cartan_involution(space):
    pkg = build_space(space)
    g, th = pkg.g, pkg.theta
    assert check_jacobi(g)
    assert linalg.all_zero(linalg.matmul(th, th) - identity(g.dim))
    # theta[e_i, e_j] = [theta e_i, theta e_j]
    lhs = linalg.einsum("ijk,lk->ijl", g.c, th)
    rhs = linalg.einsum("ai,bj,abl->ijl", th, th, g.c)
    assert linalg.all_zero(lhs - rhs)
    # the metric is B_theta = -B(., theta .)
    assert linalg.all_zero(g.gram + linalg.matmul(killing_form(g), th))
    assert linalg.is_positive_definite(g.gram)


@pytest.mark.parametrize("alias,target", [("su21", "sun1:2"), ("sp21", "spn1:2"), ("so31", "son1:3")])
def test_aliases(alias, target):
    assert canonical_id(alias) == target


def test_unknown_space():
    with pytest.raises(UnsupportedRealForm):
        canonical_id("e8")
