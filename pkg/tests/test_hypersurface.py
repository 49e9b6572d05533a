import mpmath
import pytest
from gmpy2 import mpq

from nilsoliton.algebra import is_derivation
from nilsoliton.classify import iwasawa_for
from nilsoliton.errors import DegenerateDimension, InvalidSpec
from nilsoliton.geometry import soliton_decide
from nilsoliton.hypersurface import (AUTO, closed_form_checks, decide_both, make_hypersurface, parse_spec,
                                     shape_trace, soliton_decide_formula)
from nilsoliton.scalars import EXACT, FLOAT, to_float


def hyp(space, text, mode=AUTO, seed=None):
    return make_hypersurface(iwasawa_for(space), parse_spec(text, seed), mode)


@pytest.mark.parametrize("text", ["", "alpha1", "alpha1=0", "alpha1=-1", "alpha1=1,alpha1=1", "alpha1=x"])
def test_parse_errors(text):
    with pytest.raises(InvalidSpec):
        parse_spec(text)


def test_unknown_root():
    with pytest.raises(InvalidSpec):
        hyp("sl3r", "alpha3=1")


def test_degenerate_dimension():
    with pytest.raises(DegenerateDimension):
        hyp("sl2r", "alpha1=1")


@pytest.mark.parametrize("space,text,dim", [("sl3r", "alpha1=1", 2), ("sl4c", "alpha1=s2/2,alpha3=s2/2", 11),
                                            ("sun1:3", "alpha1=1", 4), ("su23", "alpha1=1/2,alpha2=s3/2", 9)])
def test_codimension_one(space, text, dim):
    h = hyp(space, text)
    assert h.dim == dim == h.s_algebra.dim
    assert h.xi_norm2 > 0


@pytest.mark.parametrize("space,text", [("so23", "alpha1=1/2,alpha2=s3/2"), ("sl4h", "alpha1=s2/2,alpha3=s2/2"),
                                        ("sl3h", "alpha1=1"), ("so2q:6", "alpha2=1")])
def test_minimal(space, text):
    assert shape_trace(hyp(space, text)) == 0


def test_decimal_coefficients_are_normalised():
    a = decide_both(hyp("so23", "alpha1=0.6,alpha2=0.8"))
    b = decide_both(hyp("so23", "alpha1=3,alpha2=4"))
    assert a.formula.is_soliton and a.formula.c == b.formula.c


def test_mode_selection():
    assert hyp("so23", "alpha1=1/2,alpha2=s3/2").mode == EXACT
    # three square classes do not fit in one quadratic field
    assert hyp("sl4r", "alpha1=1/2,alpha2=s2/3,alpha3=s3/4").mode == FLOAT
    h = hyp("sl4r", "alpha1=1/2,alpha2=s2/3,alpha3=s3/4", EXACT)
    assert h.mode == FLOAT and h.fallback


@pytest.mark.parametrize("space,text", [("so23", "alpha1=1/2,alpha2=s3/2"), ("sl3c", "alpha1=s2/2,alpha2=s2/2"),
                                        ("sl4r", "alpha1=s2/2,alpha3=s2/2"), ("sl4r", "alpha1=3/5,alpha3=4/5")])
def test_exact_float_agree(space, text):
    e = decide_both(hyp(space, text, EXACT))
    f = decide_both(hyp(space, text, FLOAT))
    assert e.paths_agree and f.paths_agree
    assert e.formula.is_soliton == f.formula.is_soliton
    if e.formula.is_soliton:
        assert abs(to_float(e.formula.c) - to_float(f.formula.c)) < mpmath.mpf("1e-20")


@pytest.mark.parametrize("space,root", [("sl3c", "alpha1"), ("sl3h", "alpha2"), ("so2q:5", "alpha2"),
                                        ("sun1:3", "alpha1"), ("spn1:2", "alpha1")])
def test_seed_invariance(space, root):
    verdicts = {decide_both(hyp(space, f"{root}=1", seed=s)).formula.is_soliton for s in range(5)}
    assert len(verdicts) == 1


def test_formula_matches_oracle():
    h = hyp("so23", "alpha1=1/2,alpha2=s3/2")
    v = soliton_decide_formula(h)
    o = soliton_decide(h.s_algebra)
    res = decide_both(h)
    assert v.is_soliton and o.is_soliton
    assert res.gauss_residual == 0
    assert v.c == res.k - o.c


@pytest.mark.parametrize("space,text", [("so23", "alpha1=1/2,alpha2=s3/2"), ("sl4c", "alpha1=s2/2,alpha3=s2/2"),
                                        ("so2q:5", "alpha1=3/5,alpha2=4/5"), ("su23", "alpha1=s2/2,alpha2=s2/2"),
                                        ("split:G2", "alpha1=1/2,alpha2=s3/2")])
def test_closed_forms(space, text):
    checks = closed_form_checks(hyp(space, text))
    assert checks
    for name, (count, resid) in checks.items():
        assert count > 0 and resid == 0, name


def test_derivation_of_soliton():
    h = hyp("sl4r", "alpha1=s2/2,alpha3=s2/2")
    v = soliton_decide_formula(h)
    assert v.is_soliton and v.c == mpq(-1, 8)
    assert is_derivation(h.s_algebra, v.derivation)
