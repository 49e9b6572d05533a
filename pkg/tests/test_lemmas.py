import pytest

from nilsoliton.classify import iwasawa_for
from nilsoliton.lemmas import default_hypersurfaces, geometry_suite, lemma_suite

SMALL = ["sl3r", "so23", "sl3c", "sun1:2", "so2q:4", "split:G2", "su23"]


@pytest.mark.parametrize("space", SMALL)
def test_lemma_suite(space):
    iw = iwasawa_for(space)
    results = lemma_suite(iw, default_hypersurfaces(iw), samples=25, seed=1)
    bad = [r.line() for r in results if not r.passed]
    assert not bad
    names = {r.name.split("[")[0] for r in results}
    assert {"adjoint_rule", "sum_strings", "ric_n_structure", "theta_xi_xi", "an_nabla_xi_xi",
            "shape_trace", "normality"} <= names


@pytest.mark.parametrize("space", SMALL[:4])
def test_geometry_suite(space):
    iw = iwasawa_for(space)
    results = geometry_suite(iw, default_hypersurfaces(iw))
    assert all(r.passed for r in results)
    assert any(r.name.startswith("gauss[") for r in results)


def test_rank_one_skips():
    iw = iwasawa_for("sl2r")
    results = lemma_suite(iw, default_hypersurfaces(iw), samples=5)
    assert all(r.passed for r in results)
    assert any(r.skipped for r in results)


def test_failure_is_reported():
    from nilsoliton.lemmas import LemmaResult
    from gmpy2 import mpq
    r = LemmaResult("x", 3, mpq(1, 7))
    assert not r.passed and "FAIL" in r.line()
