import mpmath
import pytest
from gmpy2 import mpq

from nilsoliton import linalg
from nilsoliton.algebra import MetricLieAlgebra, abelian, heisenberg, to_float_algebra, with_gram
from nilsoliton.classify import iwasawa_for
from nilsoliton.geometry import (connection_residuals, einstein_check, levi_civita, ricci_form,
                                 ricci_nilpotent_formula, ricci_operator, soliton_decide)
from nilsoliton.scalars import identity, to_float, zeros


def hyperbolic_plane():
    """[e1, e2] = e2, orthonormal: curvature -1."""
    c = zeros((2, 2, 2))
    c[0, 1, 1] = mpq(1)
    c[1, 0, 1] = mpq(-1)
    return MetricLieAlgebra(c, identity(2))


def test_heisenberg_ricci():
    ric = ricci_operator(heisenberg())
    assert [ric[i, i] for i in range(3)] == [mpq(-1, 2), mpq(-1, 2), mpq(1, 2)]
    assert all(ric[i, j] == 0 for i in range(3) for j in range(3) if i != j)


def test_heisenberg_soliton():
    v = soliton_decide(heisenberg())
    assert v.is_soliton and v.c == mpq(-3, 2)
    assert sorted(v.derivation[i, i] for i in range(3)) == [1, 1, 2]


def test_connection_is_levi_civita():
    for alg in (heisenberg(), hyperbolic_plane(), iwasawa_for("sl3c").n_algebra):
        metric, torsion = connection_residuals(alg)
        assert metric == 0 and torsion == 0


def test_hyperbolic_plane_einstein():
    assert einstein_check(hyperbolic_plane()) == -1
    v = soliton_decide(hyperbolic_plane())
    assert v.is_soliton and v.c == -1


def test_abelian_is_flat():
    assert linalg.all_zero(ricci_form(abelian(4)))
    assert soliton_decide(abelian(4)).is_soliton


@pytest.mark.parametrize("space", ["sl3r", "so23", "sl3c", "sun1:3"])
def test_nilpotent_formula_matches_general(space):
    n = iwasawa_for(space).n_algebra
    assert linalg.all_zero(ricci_form(n) - ricci_nilpotent_formula(n))


def test_nonorthonormal_gram():
    g = identity(3)
    g[0, 1] = g[1, 0] = mpq(1, 2)
    h = with_gram(heisenberg(), g)
    assert linalg.all_zero(ricci_form(h) - ricci_nilpotent_formula(h))
    assert soliton_decide(h).is_soliton


@pytest.mark.parametrize("t", [mpq(2), mpq(1, 3)])
def test_scaling(t):
    h = with_gram(heisenberg(), identity(3) * t)
    assert soliton_decide(h).c == mpq(-3, 2) / t


def test_float_matches_exact():
    exact = soliton_decide(heisenberg())
    fl = soliton_decide(to_float_algebra(heisenberg()))
    assert fl.is_soliton and abs(to_float(fl.c) - to_float(exact.c)) < mpmath.mpf("1e-30")


@pytest.mark.parametrize("space", ["sl3r", "sl4r", "so23", "sl3c", "spn1:2"])
def test_nonabelian_nilpotent_is_not_einstein(space):
    n = iwasawa_for(space).n_algebra
    v = soliton_decide(n)
    assert v.is_soliton
    assert not linalg.all_zero(v.derivation)
    assert einstein_check(n) is None


def test_christoffel_shape():
    conn = levi_civita(heisenberg())
    assert conn.gamma.shape == (3, 3, 3)
    # nabla_{e1} e2 = e3 / 2
    assert conn.gamma[0, 1, 2] == mpq(1, 2)
