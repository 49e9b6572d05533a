"""Figures for catalog reports (matplotlib, file output only)."""
import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .scalars import coefficient_value  # noqa: E402


def _records(report):
    return report.records if hasattr(report, "records") else report


def plot_verdicts(report, path):
    """Per space: soliton and non-soliton case counts, mismatches hatched."""
    counts = defaultdict(lambda: [0, 0, 0])
    for r in _records(report):
        counts[r.space][0 if r.is_soliton else 1] += 1
        if r.match is False:
            counts[r.space][2] += 1
    spaces = sorted(counts)
    sol = [counts[s][0] for s in spaces]
    non = [counts[s][1] for s in spaces]
    bad = [counts[s][2] for s in spaces]
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(spaces) + 2), 4))
    x = range(len(spaces))
    ax.bar(x, sol, color="tab:green", label="soliton")
    ax.bar(x, non, bottom=sol, color="tab:gray", label="not soliton")
    if any(bad):
        ax.bar(x, bad, color="none", edgecolor="tab:red", hatch="//", label="mismatch")
    ax.set_xticks(list(x))
    ax.set_xticklabels(spaces, rotation=70, fontsize=8)
    ax.set_ylabel("cases")
    ax.set_title("verdicts per space")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_pair_constants(report, path):
    """Soliton constant c against a_1^2 for two-root specs, one curve per (space, Phi)."""
    series = defaultdict(list)
    for r in _records(report):
        if r.is_soliton and len(r.phi) == 2 and r.c_value is not None:
            a1 = float(coefficient_value(r.coeffs[0]))
            a2 = float(coefficient_value(r.coeffs[1]))
            series[(r.space, ",".join(r.phi))].append((a1 * a1 / (a1 * a1 + a2 * a2), r.c_value))
    fig, ax = plt.subplots(figsize=(6, 4))
    for (space, phi), pts in sorted(series.items()):
        pts = sorted(set(pts))
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=f"{space} {phi}")
    ax.set_xlabel("a_1^2")
    ax.set_ylabel("c")
    ax.set_title("soliton constant along coefficient grids")
    if series:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_dimensions(report, path):
    """dim s against the nilpotency degree of the soliton cases."""
    pts = defaultdict(int)
    for r in _records(report):
        if r.is_soliton and r.nilpotency is not None:
            pts[(r.dim_s, r.nilpotency, len(r.phi) == 1 and r.phi_mults == [1])] += 1
    fig, ax = plt.subplots(figsize=(6, 4))
    for flag, color, label in ((True, "tab:blue", "single root, dim 1"), (False, "tab:orange", "other solitons")):
        sel = [(d, n, k) for (d, n, f), k in sorted(pts.items()) if f == flag]
        if sel:
            ax.scatter([s[0] for s in sel], [s[1] for s in sel], s=[12 + 6 * s[2] for s in sel],
                       color=color, label=label, alpha=0.7)
    ax.axhline(3, color="k", lw=0.8, ls="--")
    ax.set_xlabel("dim s")
    ax.set_ylabel("nilpotency degree")
    ax.set_title("soliton subalgebras")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_report_figures(report, outdir):
    """Write every report figure into outdir; returns the file paths."""
    os.makedirs(outdir, exist_ok=True)
    return [plot_verdicts(report, os.path.join(outdir, "verdicts.png")),
            plot_pair_constants(report, os.path.join(outdir, "pair_constants.png")),
            plot_dimensions(report, os.path.join(outdir, "nilpotency.png"))]
