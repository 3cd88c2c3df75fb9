"""Report figures: variance-vs-bound study plot and density comparison plot."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_study_figure(rows, path):
    """Empirical variance (dots) against the closed-form bound (lines).

    With several sample sizes per alpha the x axis is n (log-log); with a
    single n the x axis is alpha.
    """
    if not rows:
        raise ValueError("no study rows to plot")
    alphas = sorted({r.alpha for r in rows})
    ns = sorted({r.n for r in rows})
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if len(ns) > 1:
        for i, a in enumerate(alphas):
            sub = sorted((r for r in rows if r.alpha == a), key=lambda r: r.n)
            color = f"C{i % 10}"
            ax.loglog([r.n for r in sub], [r.bound for r in sub],
                      color=color, label=f"bound, alpha={a:g}")
            ax.loglog([r.n for r in sub], [r.empirical_var for r in sub],
                      "o", color=color, label=f"empirical, alpha={a:g}")
        ax.set_xlabel("sample size n")
    else:
        sub = sorted(rows, key=lambda r: r.alpha)
        ax.semilogy([r.alpha for r in sub], [r.bound for r in sub],
                    "-", color="C0", label="bound")
        ax.semilogy([r.alpha for r in sub], [r.empirical_var for r in sub],
                    "o", color="C1", label="empirical")
        ax.set_xlabel("alpha")
    ax.set_ylabel("Var(alpha estimate)")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_density_figure(comp, path):
    """Empirical increment density (dots) against the fitted stable law (line)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.semilogy(comp.histogram[:, 0], comp.histogram[:, 1], "o",
                markersize=3, color="C1", label="empirical")
    ax.semilogy(comp.theoretical[:, 0], comp.theoretical[:, 1], "-",
                color="C0", label="fitted stable law")
    f = comp.fitted
    txt = (f"alpha={f.alpha_tilde:.3f} beta={f.beta_tilde:.3f} "
           f"lambda={f.lambda_tilde:.3g}")
    if comp.tail_slope_theoretical is not None:
        txt += (f"\nslopes: emp {comp.tail_slope_empirical:.2f}, "
                f"theory {comp.tail_slope_theoretical:.2f}")
    ax.set_title(txt, fontsize=9)
    ax.set_xlabel("increment")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
