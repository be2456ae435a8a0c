"""Static figure rendering for sweep and solver outputs (no display needed)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SWEEP_FIGURES = (
    ("elevation_deg", "Elevation angle (deg)"),
    ("theta_deg", "Misalignment angle (deg)"),
    ("eirp_dbw", "TX EIRP toward UE (dBW)"),
    ("path_loss_db", "Total path loss (dB)"),
    ("rx_dbm", "RX power per PRB (dBm)"),
    ("inr_db", "RX INR (dB)"),
)

_X_LABELS = {
    "slant_range": "Slant range (km)",
    "separation_distance": "Separation distance (km)",
}


def _row_metric(row, metric):
    if metric == "path_loss_db":
        return row.fspl_db + row.gaseous_db + row.scint_db
    return getattr(row, metric)


def render_sweep_figures(result, base_path: str) -> list[str]:
    """One SVG per metric, one curve per alpha; returns the file paths."""
    paths = []
    alphas = sorted({row.alpha_deg for row in result.rows})
    for metric, ylabel in _SWEEP_FIGURES:
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for alpha in alphas:
            rows = [r for r in result.rows if r.alpha_deg == alpha]
            xs = [r.variable_km for r in rows]
            ys = [_row_metric(r, metric) for r in rows]
            ax.plot(xs, ys, label=f"alpha = {alpha:g} deg")
        ax.set_xlabel(_X_LABELS[result.spec.variable])
        ax.set_ylabel(ylabel)
        if metric == "inr_db":
            ax.axhline(0.0, color="k", linewidth=0.8, linestyle="--")
        ax.grid(True, alpha=0.4)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = f"{base_path}_{metric}.svg"
        fig.savefig(path)
        plt.close(fig)
        paths.append(path)
    return paths


def render_min_separation_figure(solutions, path: str) -> str:
    """Required 0 dB separation versus slant range."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = [s.slant_range_km for s in solutions if s.separation_km is not None]
    ys = [s.separation_km for s in solutions if s.separation_km is not None]
    ax.plot(xs, ys, marker="o", markersize=3)
    ax.set_xlabel("Slant range (km)")
    ax.set_ylabel("0 dB INR separation distance (km)")
    ax.grid(True, alpha=0.4)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
