import json

import pytest

from nilsoliton.classify import (NOT_SOLITON, PAIR, SIMPLEX, SINGLE, SOLITON, SPECIAL, UNVERIFIED, CaseRecord,
                                 Report, classify_space, decide_case, golden_table, off_special_pair_grid,
                                 pair_grid, rank_observations, run_catalog, simplex_grid)
from nilsoliton.errors import CatalogMismatch
from nilsoliton.hypersurface import parse_spec
from nilsoliton.scalars import parse_coefficient


def test_pair_grid_unit_vectors():
    for a, b in pair_grid(range(1, 10), 10):
        assert parse_coefficient(a)[0] + parse_coefficient(b)[0] == 1
    assert SPECIAL in pair_grid((2, 3), 10)
    assert SPECIAL not in off_special_pair_grid()


@pytest.mark.parametrize("rank,den,count", [(2, 5, 4), (3, 5, 6), (4, 4, 1)])
def test_simplex_grid(rank, den, count):
    grid = simplex_grid(rank, den, special=False)
    assert len(grid) == count
    for co in grid:
        assert sum(parse_coefficient(x)[0] for x in co) == 1


def test_golden_table_shape():
    table = golden_table()
    items = {e.provenance.split(")")[0] + ")" for e in table if e.provenance.startswith("(")}
    assert items == {"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"}
    verified = [e for e in table if e.expected != UNVERIFIED]
    negatives = [e for e in table if e.provenance.startswith("negative")]
    assert len(verified) >= 20 and len(negatives) >= 5
    assert {e.space_id for e in table if e.expected == UNVERIFIED} == {"OH2", "E6(-26)"}
    assert {e.family for e in table} >= {SINGLE, PAIR, SIMPLEX}


def test_decide_case_schema():
    rec = decide_case("so23", parse_spec("alpha1=1/2,alpha2=s3/2"))
    v = rec.verdict()
    assert set(v) == {"space", "phi", "coeffs", "seed", "is_soliton", "c", "residual", "mode", "dim_s",
                      "paths_agree"}
    assert v["is_soliton"] and v["c"] == "-3/8" and v["mode"] == "exact" and v["dim_s"] == 3
    json.dumps(v)


def test_run_catalog_small_and_deterministic():
    entries = [e for e in golden_table() if e.space_id in ("so23", "sl3r")]
    a = run_catalog(entries)
    b = run_catalog(entries)
    assert a.all_match and a.to_json() == b.to_json()
    assert "runtime" not in a.to_json() and "runtime" in a.to_json(timings=True)


def test_mismatch_raises():
    entries = [e for e in golden_table() if e.space_id == "so23" and e.family == SINGLE][:1]
    flipped = [type(e)(e.space_id, e.family, e.roots, NOT_SOLITON, "flipped", e.grid, e.seeds) for e in entries]
    with pytest.raises(CatalogMismatch) as err:
        run_catalog(flipped)
    assert err.value.report is not None and not err.value.report.all_match
    assert not run_catalog(flipped, strict=False).all_match


def _rec(space, phi, mults, rank, split, nil, soliton=True):
    return CaseRecord(space, list(phi), ["1"] * len(phi), 0, soliton, "-1", "0", "exact", 3, True,
                      nilpotency=nil, rank=rank, split=split, phi_mults=list(mults))


def test_rank_observations():
    ok = Report([_rec("x", ["alpha1"], [1], 4, False, 5), _rec("y", ["alpha1", "alpha2"], [1, 1], 2, True, 3)],
                [], "exact")
    obs = {o.name: o.passed for o in rank_observations(ok)}
    assert obs == {"non_split_rank_ge_4_new_examples": True, "non_split_rank_ge_4_literal": False,
                   "nilpotency_at_most_3": True}
    bad = Report([_rec("x", ["alpha1", "alpha2"], [2, 2], 4, False, 4)], [], "exact")
    assert not any(o.passed for o in rank_observations(bad))


def test_classify_space_sweep():
    recs = classify_space("sl3r", grid_den=2)
    assert [r.phi for r in recs] == [["alpha1"], ["alpha2"], ["alpha1", "alpha2"]]
    assert all(r.is_soliton for r in recs)


def test_expected_values_are_labels():
    assert {e.expected for e in golden_table()} == {SOLITON, NOT_SOLITON, UNVERIFIED}
