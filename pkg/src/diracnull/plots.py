"""Report figures rendered next to the delimited diagnostics output."""

from __future__ import annotations

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def _collect(per_slice_rows, name):
    us, vals = [], []
    for u, rows in per_slice_rows:
        if name in rows:
            us.append(u)
            vals.append(float(np.max(rows[name])))
    return np.array(us), np.array(vals)


def render_report_figures(outdir, per_slice_rows, run_rows, v):
    """Residual-history and norm-suite figures for one run."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    made = []

    groups = {
        "residuals_definitional": [k for _, r in per_slice_rows[:1]
                                   for k in r if k.startswith("Def")],
        "residuals_twins": ["twin_thornrho", "twin_thornmu", "twin_thornpi",
                            "twin_thornPsi2", "twin_Dbeta"],
        "residuals_constraints": ["zeta3zeta1", "eta4eta2", "rhosigma",
                                  "mulambda", "framecoefficient5",
                                  "framecoefficient6", "K_cross_check"],
        "residuals_einstein": [k for _, r in per_slice_rows[:1]
                               for k in r if k.startswith("einstein")],
    }
    for fname, names in groups.items():
        fig, ax = plt.subplots(figsize=(6.0, 3.6))
        plotted = False
        for name in names:
            us, vals = _collect(per_slice_rows, name)
            if len(us) and np.any(vals > 0):
                ax.semilogy(us, np.maximum(vals, 1e-300), label=name, lw=1.2)
                plotted = True
        if not plotted:
            plt.close(fig)
            continue
        ax.set_xlabel("u")
        ax.set_ylabel("max over v of L2(S) residual")
        ax.legend(fontsize=7, ncol=2)
        ax.set_title(fname.replace("_", " "))
        fig.tight_layout()
        out = outdir / f"{fname}.png"
        fig.savefig(out, dpi=150)
        plt.close(fig)
        made.append(out)

    if run_rows:
        names = sorted(k for k in run_rows if k.startswith("Delta"))
        if names:
            fig, ax = plt.subplots(figsize=(6.0, 3.2))
            xs = np.arange(len(names))
            ax.bar(xs, [max(run_rows[k], 1e-300) for k in names])
            ax.set_yscale("log")
            ax.set_xticks(xs)
            ax.set_xticklabels(names, rotation=30, ha="right", fontsize=7)
            ax.set_title("norm suite")
            fig.tight_layout()
            out = outdir / "norm_suite.png"
            fig.savefig(out, dpi=150)
            plt.close(fig)
            made.append(out)
    return made
