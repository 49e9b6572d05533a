"""Golden verdict table, catalog runner and derived-corollary checks.

A catalog entry names a space, a family of normal directions (one simple
root, a pair of simple roots with a coefficient grid, or all simple roots
with a simplex grid) and the expected verdict.  Running an entry expands it
into concrete specs and decides each one along both paths.
"""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations

from .algebra import nilpotency_degree
from .errors import CatalogMismatch, CrossCheckFailure
from .hypersurface import AUTO, NormalVectorSpec, decide_both, make_hypersurface
from .iwasawa import build_iwasawa
from .realization import build_space, canonical_id
from .scalars import FLOAT, format_scalar, to_float

SOLITON = "soliton"
NOT_SOLITON = "not_soliton"
UNVERIFIED = "expected_unverified"

SINGLE = "single_root"
PAIR = "pair"
SIMPLEX = "full_simplex"
NONE = "unrealized"

SPECIAL = ("s2/2", "s2/2")


@dataclass(frozen=True)
class GridConfig:
    """Coefficient grids: pairs use a_1 = k / den for k in ``pair_steps`` (a_2 completes the
    unit vector); simplices use squares n_i / ``simplex_den`` with every n_i >= 1."""
    pair_steps: tuple = (2, 3, 4, 5, 6, 7, 8)
    pair_den: int = 10
    simplex_den: int = 5
    include_special: bool = True


DEFAULT_GRID = GridConfig()


def pair_grid(steps, den, special=True):
    out = [(f"{k}/{den}", f"s{den * den - k * k}/{den}") for k in steps]
    if special:
        out.append(SPECIAL)
    return tuple(out)


def off_special_pair_grid(grid=DEFAULT_GRID):
    """Pair grid points with a_1 != a_2 (exact comparison of squares)."""
    return tuple(p for p in pair_grid(grid.pair_steps, grid.pair_den, False)
                 if 2 * int(p[0].split("/")[0]) ** 2 != grid.pair_den ** 2)


def simplex_grid(rank, den, special=True):
    """Coefficient tuples with a_i^2 = n_i / den, n_i >= 1, sum n_i = den; plus the barycentre."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            if left >= 1:
                out.append(prefix + (left,))
            return
        for n in range(1, left - slots + 2):
            rec(prefix + (n,), left - n, slots - 1)

    rec((), den, rank)
    grid = [tuple(f"s{n * den}/{den}" for n in ns) for ns in out]
    if special:
        bary = tuple(f"s{rank}/{rank}" for _ in range(rank))
        if bary not in grid:
            grid.append(bary)
    return tuple(grid)


@dataclass(frozen=True)
class CatalogEntry:
    space_id: str
    family: str                  # SINGLE | PAIR | SIMPLEX | NONE
    roots: tuple                 # simple root names
    expected: str                # SOLITON | NOT_SOLITON | UNVERIFIED
    provenance: str              # classification item or negative control tag
    grid: tuple = (("1",),)      # coefficient tuples
    seeds: tuple = (None,)

    def specs(self):
        if self.family == NONE:
            return []
        return [NormalVectorSpec(tuple(self.roots), tuple(co), seed)
                for co in self.grid for seed in self.seeds]


def _names(rank):
    return tuple(f"alpha{i + 1}" for i in range(rank))


def golden_table(grid=DEFAULT_GRID):
    """The verdict table: items (i)-(vi) of the classification plus negative controls."""
    pg = pair_grid(grid.pair_steps, grid.pair_den, grid.include_special)
    off = off_special_pair_grid(grid)
    so23_grid = pair_grid(range(1, 10), 10, False)
    seeds = (None, 1, 2)
    E = []

    def single(space, root, expected, prov, s=(None,)):
        E.append(CatalogEntry(space, SINGLE, (root,), expected, prov, (("1",),), s))

    # (i) hyperbolic spaces
    for k in (3, 4, 5):
        single(f"son1:{k}", "alpha1", SOLITON, "(i) real hyperbolic")
    for k in (2, 3, 4):
        single(f"sun1:{k}", "alpha1", SOLITON, "(i) complex hyperbolic", seeds)
    single("spn1:2", "alpha1", SOLITON, "(i) quaternionic hyperbolic plane", seeds)
    single("spn1:3", "alpha1", NOT_SOLITON, "(i) quaternionic hyperbolic space of dim 12 is not listed", seeds)
    E.append(CatalogEntry("OH2", NONE, (), UNVERIFIED, "(i) octonionic hyperbolic plane", ()))
    # (ii) one-dimensional simple root spaces
    for space, rank in (("sl4r", 3), ("so23", 2), ("split:G2", 2), ("split:B3", 3), ("split:C3", 3),
                        ("split:D4", 4), ("split:B4", 4), ("split:C4", 4), ("split:A4", 4)):
        for r in _names(rank):
            single(space, r, SOLITON, "(ii) dim g_alpha = 1")
    for q in range(4, 9):
        single(f"so2q:{q}", "alpha1", SOLITON, "(ii) long root, dim g_alpha = 1")
    for r in ("alpha1", "alpha2", "alpha3"):
        single("so46", r, SOLITON, "(ii) long root, dim g_alpha = 1")
    # (iii)
    for r in ("alpha1", "alpha2"):
        single("sl3h", r, SOLITON, "(iii) sl3h, xi in a simple root space", (None, 1, 2, 3, 4))
    E.append(CatalogEntry("E6(-26)", NONE, (), UNVERIFIED, "(iii) exceptional, no realization", ()))
    # (iv)
    single("so5c", "alpha2", SOLITON, "(iv) shortest simple root", seeds)
    for q in range(4, 9):
        single(f"so2q:{q}", "alpha2", SOLITON, "(iv) shortest simple root", seeds)
    single("so5c", "alpha1", NOT_SOLITON, "(iv) long simple root of so5c", seeds)
    # (v)
    for space in ("sl3r", "sl3c", "so23"):
        for r in ("alpha1", "alpha2"):
            single(space, r, SOLITON, "(v) rank two, single root", seeds if space == "sl3c" else (None,))
        g = so23_grid if space == "so23" else pg
        E.append(CatalogEntry(space, PAIR, ("alpha1", "alpha2"), SOLITON, "(v) rank two, Phi = Pi", g))
    # (vi)
    for space in ("sl4r", "sl4c", "sl4h"):
        E.append(CatalogEntry(space, PAIR, ("alpha1", "alpha3"), SOLITON, "(vi) orthogonal pair at 2^(-1/2)",
                              (SPECIAL,)))
        E.append(CatalogEntry(space, PAIR, ("alpha1", "alpha3"), NOT_SOLITON,
                              "(vi) orthogonal pair off 2^(-1/2)", off))
    # negative controls
    E.append(CatalogEntry("sl3h", PAIR, ("alpha1", "alpha2"), NOT_SOLITON, "negative: A2 with dim 4, Phi = Pi", pg))
    E.append(CatalogEntry("so2q:5", PAIR, ("alpha1", "alpha2"), NOT_SOLITON, "negative: B2, Phi = Pi", pg))
    E.append(CatalogEntry("sl4r", PAIR, ("alpha1", "alpha2"), NOT_SOLITON, "negative: connected pair in A3", pg))
    E.append(CatalogEntry("sl4r", SIMPLEX, _names(3), NOT_SOLITON, "negative: A3, Phi = Pi",
                          simplex_grid(3, grid.simplex_den, grid.include_special)))
    for space in ("sl4c", "sl4h"):
        for r in ("alpha1", "alpha2"):
            single(space, r, NOT_SOLITON, "negative: rank three, dim g_alpha > 1")
    for r in ("alpha1", "alpha2"):
        single("su23", r, NOT_SOLITON, "negative: BC2, dim g_alpha > 1", seeds)
    E.append(CatalogEntry("su23", PAIR, ("alpha1", "alpha2"), NOT_SOLITON, "negative: BC2, Phi = Pi", (SPECIAL,)))
    single("so46", "alpha4", NOT_SOLITON, "negative: rank four, short root with dim 2", seeds)
    return E


# ---------------------------------------------------------------------------
# running

@lru_cache(maxsize=None)
def iwasawa_for(space_id):
    return build_iwasawa(build_space(canonical_id(space_id)))


@dataclass
class CaseRecord:
    space: str
    phi: list
    coeffs: list
    seed: int
    is_soliton: bool
    c: str
    residual: str
    mode: str
    dim_s: int
    paths_agree: bool
    verdict_formula: bool = None
    verdict_oracle: bool = None
    c_oracle: str = None
    c_value: float = None
    gauss_residual: str = None
    fallback: bool = False
    nilpotency: int = None
    rank: int = None
    split: bool = None
    phi_mults: list = None
    expected: str = None
    provenance: str = None
    match: bool = None
    runtime: float = field(default=None, compare=False)

    def verdict(self):
        """The public verdict schema."""
        return {k: getattr(self, k) for k in ("space", "phi", "coeffs", "seed", "is_soliton", "c", "residual",
                                              "mode", "dim_s", "paths_agree")}


def _seed_out(seed):
    return 0 if seed is None else int(seed)


def decide_case(space_id, spec, mode=AUTO):
    """Decide one (space, spec) along both paths; raises CrossCheckFailure on disagreement."""
    t0 = time.perf_counter()
    sid = canonical_id(space_id)
    iw = iwasawa_for(sid)
    h = make_hypersurface(iw, spec, mode)
    res = decide_both(h)
    if not res.paths_agree:
        raise CrossCheckFailure(
            f"{sid} {spec.text()} seed={spec.seed}: formula {res.formula.summary()} vs oracle "
            f"{res.oracle.summary()}, gauss residual {format_scalar(res.gauss_residual, 6)}")
    v = res.formula
    nil = nilpotency_degree(h.s_algebra) if v.is_soliton else None
    return CaseRecord(
        space=sid, phi=list(spec.phi), coeffs=list(spec.coeffs), seed=_seed_out(spec.seed),
        is_soliton=bool(v.is_soliton), c=format_scalar(v.c, 15) if v.is_soliton else "none",
        residual=format_scalar(v.residual, 6), mode=h.mode, dim_s=h.dim, paths_agree=True,
        verdict_formula=bool(v.is_soliton), verdict_oracle=bool(res.oracle.is_soliton),
        c_oracle=format_scalar(res.oracle.c, 15) if res.oracle.is_soliton else "none",
        c_value=float(to_float(v.c)) if v.is_soliton else None,
        gauss_residual=format_scalar(res.gauss_residual, 6), fallback=h.fallback, nilpotency=nil,
        rank=iw.rank, split=iw.roots.is_split, phi_mults=[iw.mult(g) for g in h.phi],
        runtime=time.perf_counter() - t0)


def _run_one(args):
    entry, spec, mode = args
    rec = decide_case(entry.space_id, spec, mode)
    rec.expected = entry.expected
    rec.provenance = entry.provenance
    rec.match = rec.is_soliton == (entry.expected == SOLITON)
    return rec


@dataclass
class Report:
    records: list
    unverified: list
    mode: str

    @property
    def all_match(self):
        return all(r.match for r in self.records)

    def mismatches(self):
        return [r for r in self.records if not r.match]

    def to_dict(self, timings=False):
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timings:
                d.pop("runtime")
            recs.append(d)
        return {
            "mode": self.mode,
            "cases": len(self.records),
            "all_match": self.all_match,
            "records": recs,
            "expected_unverified": [{"space": e.space_id, "provenance": e.provenance} for e in self.unverified],
        }

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)


def expand(entries, mode=FLOAT):
    jobs, unverified = [], []
    for e in entries:
        if e.expected == UNVERIFIED:
            unverified.append(e)
            continue
        jobs.extend((e, s, mode) for s in e.specs())
    return jobs, unverified


def run_catalog(entries, mode=FLOAT, jobs=1, strict=True):
    """Run every verified entry; raises CatalogMismatch (carrying the report) on any mismatch."""
    work, unverified = expand(entries, mode)
    if jobs and jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_run_one, work, chunksize=1))
    else:
        records = [_run_one(w) for w in work]
    report = Report(records, unverified, mode)
    if strict and not report.all_match:
        lines = [f"{r.space} {r.phi} {r.coeffs} seed={r.seed}: got {'soliton' if r.is_soliton else 'not_soliton'}, "
                 f"expected {r.expected} [{r.provenance}] (c={r.c}, residual={r.residual}, mode={r.mode})"
                 for r in report.mismatches()]
        raise CatalogMismatch("catalog mismatches:\n" + "\n".join(lines), report)
    return report


# ---------------------------------------------------------------------------
# sweeps and corollaries

def sweep_entries(space_id, grid_den=4):
    """Every Phi-family of one space: each simple root, and every subset of size >= 2 on a grid."""
    sid = canonical_id(space_id)
    iw = iwasawa_for(sid)
    names = _names(iw.rank)
    out = [CatalogEntry(sid, SINGLE, (r,), UNVERIFIED, "sweep") for r in names]
    for size in range(2, iw.rank + 1):
        for sub in combinations(names, size):
            out.append(CatalogEntry(sid, PAIR if size == 2 else SIMPLEX, sub, UNVERIFIED, "sweep",
                                    simplex_grid(size, grid_den)))
    return out


def classify_space(space_id, grid_den=4, mode=AUTO):
    """Verdict records for every spec of every Phi-family of one space."""
    recs = []
    for e in sweep_entries(space_id, grid_den):
        for s in e.specs():
            recs.append(decide_case(e.space_id, s, mode))
    return recs


@dataclass(frozen=True)
class Observation:
    name: str
    passed: bool
    detail: str


def _single_root_dim_one(r):
    """Phi = {alpha} with dim g_alpha = 1."""
    return len(r.phi) == 1 and r.phi_mults == [1]


def rank_observations(report):
    """Rank and nilpotency corollaries over the soliton records of a report."""
    recs = report.records if isinstance(report, Report) else report
    sol = [r for r in recs if r.is_soliton]
    high = [r for r in sol if not r.split and r.rank >= 4]
    literal = [r for r in high]
    scoped = [r for r in high if not _single_root_dim_one(r)]
    nil = [r for r in sol if not _single_root_dim_one(r) and (r.nilpotency is None or r.nilpotency > 3)]
    checked_spaces = sorted({r.space for r in recs if not r.split and r.rank >= 4})

    def fmt(rs):
        return "; ".join(f"{r.space} {','.join(r.phi)}" for r in rs[:6]) or "none"

    return [
        Observation("non_split_rank_ge_4_new_examples", not scoped,
                    f"non-split rank >= 4 spaces checked: {', '.join(checked_spaces) or 'none'}; "
                    f"solitons outside the one-dimensional single-root case: {fmt(scoped)}"),
        Observation("non_split_rank_ge_4_literal", not literal,
                    f"all solitons in non-split rank >= 4 spaces (including one-dimensional single roots): "
                    f"{fmt(literal)}"),
        Observation("nilpotency_at_most_3", not nil,
                    f"{sum(1 for r in sol if not _single_root_dim_one(r))} solitons outside the single-root "
                    f"one-dimensional case; degree > 3: {fmt(nil)}"),
    ]
