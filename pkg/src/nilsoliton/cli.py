"""Command line interface: nilsoliton <command> ..."""
import argparse
import json
import os
import sys
import time

from .classify import (FLOAT, classify_space, decide_case, golden_table, iwasawa_for, rank_observations,
                       run_catalog)
from .errors import CatalogMismatch, InvalidSpec, NilsolitonError
from .hypersurface import AUTO, parse_spec
from .lemmas import default_hypersurfaces, geometry_suite, lemma_suite
from .realization import canonical_id, catalog_ids
from .scalars import EXACT


def _mode(args):
    if getattr(args, "exact", False):
        return EXACT
    if getattr(args, "float", False):
        return FLOAT
    return AUTO


def _print_record(r):
    verdict = "soliton" if r.is_soliton else "not a soliton"
    print(f"space {r.space}  phi {','.join(r.phi)}  coeffs {','.join(r.coeffs)}  seed {r.seed}  mode {r.mode}")
    print(f"  {verdict}: c = {r.c}  residual {r.residual}  dim s {r.dim_s}  "
          f"paths {'agree' if r.paths_agree else 'DISAGREE'}  gauss residual {r.gauss_residual}")


def cmd_list_spaces(args):
    for sid in catalog_ids():
        print(sid)
    return 0


def cmd_check(args):
    spec = parse_spec(args.xi, args.seed)
    mode = _mode(args)
    rec = decide_case(args.space, spec, mode)
    if mode == EXACT and rec.fallback:
        print("note: coefficients need more than one quadratic field; ran in float mode", file=sys.stderr)
    if args.json:
        print(json.dumps(rec.verdict(), sort_keys=True))
    else:
        _print_record(rec)
    return 0


def cmd_classify(args):
    recs = classify_space(args.space, args.grid)
    if args.json:
        print(json.dumps([r.verdict() for r in recs], indent=2, sort_keys=True))
        return 0
    for r in recs:
        tag = "soliton    " if r.is_soliton else "not soliton"
        print(f"{tag}  {','.join(r.phi):28s} {','.join(r.coeffs):32s} c={r.c}  mode={r.mode}")
    return 0


def cmd_catalog_run(args):
    t0 = time.perf_counter()
    entries = golden_table()
    if args.only:
        keep = {canonical_id(x) for x in args.only}
        entries = [e for e in entries if e.space_id in keep]
        if not entries:
            raise InvalidSpec(f"no golden-table entries for {', '.join(sorted(keep))}")
    mode = EXACT if args.exact else AUTO if args.auto else FLOAT
    try:
        report = run_catalog(entries, mode=mode, jobs=args.jobs)
        failed = None
    except CatalogMismatch as e:
        report, failed = e.report, str(e)
    elapsed = time.perf_counter() - t0
    obs = rank_observations(report)
    if args.out:
        data = report.to_dict(timings=args.timings)
        data["observations"] = [{"name": o.name, "passed": o.passed, "detail": o.detail} for o in obs]
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
    figdir = args.figures or (os.path.join(os.path.dirname(os.path.abspath(args.out)), "figures") if args.out else None)
    if figdir and not args.no_figures:
        from .plotting import render_report_figures
        for p in render_report_figures(report, figdir):
            print(f"figure: {p}")
    n_ok = sum(1 for r in report.records if r.match)
    print(f"{len(report.records)} verified cases, {n_ok} match, {len(report.unverified)} expected-unverified "
          f"entries, mode {mode}, {elapsed:.1f}s")
    for e in report.unverified:
        print(f"  unverified: {e.space_id} [{e.provenance}]")
    for o in obs:
        print(f"  observation {o.name}: {'holds' if o.passed else 'violated'} ({o.detail})")
    if failed:
        print(failed, file=sys.stderr)
        return 1
    return 0


def cmd_verify(args):
    iw = iwasawa_for(canonical_id(args.space))
    hs = default_hypersurfaces(iw)
    results = []
    if args.suite in ("lemmas", "all"):
        results += lemma_suite(iw, hs, samples=args.samples, seed=args.seed)
    if args.suite in ("geometry", "all"):
        results += geometry_suite(iw, hs)
    for r in results:
        print(r.line())
    bad = [r for r in results if not r.passed]
    print(f"{len(results) - len(bad)}/{len(results)} identities hold on {canonical_id(args.space)}")
    return 0 if not bad else 1


def build_parser():
    p = argparse.ArgumentParser(prog="nilsoliton",
                                description="Codimension-one Ricci soliton subgroups of nilpotent Iwasawa groups")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list-spaces", help="print catalog identifiers").set_defaults(func=cmd_list_spaces)

    c = sub.add_parser("check", help="decide a single (space, normal vector)")
    c.add_argument("--space", required=True)
    c.add_argument("--xi", required=True, help='e.g. "alpha1=s2/2,alpha3=s2/2"')
    g = c.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--float", action="store_true")
    c.add_argument("--seed", type=int, default=None, help="random unit vectors inside each root space")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("classify", help="sweep every Phi-family of one space")
    s.add_argument("--space", required=True)
    s.add_argument("--grid", type=int, default=4, help="simplex grid denominator")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    r = sub.add_parser("catalog-run", help="run the golden verdict table")
    r.add_argument("--out", default=None, help="write the JSON report here")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--only", action="append", metavar="SPACE", help="restrict to these spaces (repeatable)")
    m = r.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true", help="exact arithmetic (float fallback where required)")
    m.add_argument("--auto", action="store_true", help="exact where possible")
    r.add_argument("--figures", default=None, help="figure directory (default: next to --out)")
    r.add_argument("--no-figures", action="store_true")
    r.add_argument("--timings", action="store_true", help="include per-case runtimes in the report")
    r.set_defaults(func=cmd_catalog_run)

    v = sub.add_parser("verify", help="structural identity suites")
    v.add_argument("--suite", choices=("lemmas", "geometry", "all"), default="all")
    v.add_argument("--space", required=True)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NilsolitonError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
