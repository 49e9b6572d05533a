import numpy as np
import pytest
from gmpy2 import mpq

from nilsoliton.algebra import (MetricLieAlgebra, abelian, check_jacobi, derivation_defect, derivation_space, dump,
                                heisenberg, is_derivation, load, lower_central_series, nilpotency_degree,
                                subalgebra_restrict, to_float_algebra, with_gram)
from nilsoliton.errors import DimensionError, NilsolitonError, NotASubalgebra
from nilsoliton.scalars import FLOAT, identity, zeros


def filiform4():
    """[e1,e2] = e3, [e1,e3] = e4: nilpotency degree 3."""
    c = zeros((4, 4, 4))
    for i, j, k in ((0, 1, 2), (0, 2, 3)):
        c[i, j, k] = mpq(1)
        c[j, i, k] = mpq(-1)
    return MetricLieAlgebra(c, identity(4))


def test_heisenberg_basics():
    h = heisenberg()
    assert h.dim == 3
    assert check_jacobi(h)
    assert lower_central_series(h) == [3, 1, 0]
    assert nilpotency_degree(h) == 2


@pytest.mark.parametrize("alg,degree", [(abelian(3), 1), (heisenberg(), 2), (filiform4(), 3)])
def test_nilpotency_degree(alg, degree):
    assert nilpotency_degree(alg) == degree


def test_non_nilpotent():
    c = zeros((2, 2, 2))
    c[0, 1, 1] = mpq(1)
    c[1, 0, 1] = mpq(-1)
    assert nilpotency_degree(MetricLieAlgebra(c, identity(2))) is None


def test_heisenberg_derivations():
    # gl(2) on the generators plus the two maps into the centre
    ders = derivation_space(heisenberg())
    assert len(ders) == 6
    for D in ders:
        assert is_derivation(heisenberg(), D)


def test_derivation_defect_detects_non_derivation():
    D = identity(3)
    assert not is_derivation(heisenberg(), D)
    d = derivation_defect(heisenberg(), D)
    assert d[0, 1, 2] == mpq(-1)


def test_antisymmetry_and_gram_validation():
    c = zeros((2, 2, 2))
    c[0, 1, 1] = mpq(1)
    with pytest.raises(NilsolitonError):
        MetricLieAlgebra(c, identity(2))
    g = identity(2)
    g[1, 1] = mpq(-1)
    with pytest.raises(NilsolitonError):
        MetricLieAlgebra(zeros((2, 2, 2)), g)
    with pytest.raises(DimensionError):
        MetricLieAlgebra(zeros((3, 3, 3)), identity(2))


def test_subalgebra_restrict():
    h = heisenberg()
    v = [np.array([mpq(1), mpq(0), mpq(0)], dtype=object), np.array([mpq(0), mpq(0), mpq(1)], dtype=object)]
    sub = subalgebra_restrict(h, v)
    assert sub.dim == 2 and nilpotency_degree(sub) == 1
    with pytest.raises(NotASubalgebra):
        subalgebra_restrict(h, [np.array([mpq(1), mpq(0), mpq(0)], dtype=object),
                                np.array([mpq(0), mpq(1), mpq(0)], dtype=object)])


@pytest.mark.parametrize("alg", [heisenberg(), filiform4(), to_float_algebra(heisenberg())])
def test_dump_load_round_trip(alg):
    back = load(dump(alg))
    assert back.mode == alg.mode
    assert dump(back) == dump(alg)


def test_with_gram_keeps_brackets():
    g = identity(3) * mpq(2)
    h = with_gram(heisenberg(), g)
    assert h.gram[0, 0] == 2 and h.c[0, 1, 2] == 1


def test_float_mode():
    h = to_float_algebra(heisenberg())
    assert h.mode == FLOAT
    assert check_jacobi(h)
