"""Figure rendering for sweep results.

Renders to files only (no interactive backend): a log-log heat map for a
full 2D grid, or a semilog line plot when one of the axes has a single
point.  Failed grid points appear as gaps.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweep import SweepRow, SweepSpec

_LABELS = {
    "log_negativity": "logarithmic negativity",
    "log_negativity_base2": "logarithmic negativity (base 2)",
    "nu_tilde_minus": "smallest PT symplectic eigenvalue",
    "n_l": "normal-mode 1 occupation",
    "n_m": "normal-mode 2 occupation",
}


def _values(rows: list[SweepRow], column: str) -> np.ndarray:
    vals = [getattr(r, column) for r in rows]
    return np.array([np.nan if v is None else float(v) for v in vals])


def render_sweep_figure(
    spec: SweepSpec,
    rows: list[SweepRow],
    path: str,
    column: str = "log_negativity",
) -> None:
    """Render the sweep to an image file chosen by extension (png, pdf, svg)."""
    z1 = np.asarray(spec.zeta1_grid)
    z2 = np.asarray(spec.zeta2_grid)
    values = _values(rows, column)
    label = _LABELS.get(column, column)
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    if len(z1) > 1 and len(z2) > 1:
        grid = values.reshape(len(z2), len(z1))
        mesh = ax.pcolormesh(z1, z2, np.ma.masked_invalid(grid), shading="nearest", cmap="gray")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(r"$\zeta_1$")
        ax.set_ylabel(r"$\zeta_2$")
        fig.colorbar(mesh, ax=ax, label=label)
    else:
        if len(z2) == 1:
            x, fixed_name, fixed_val = z1, r"$\zeta_2$", z2[0]
            ax.set_xlabel(r"$\zeta_1$")
        else:
            x, fixed_name, fixed_val = z2, r"$\zeta_1$", z1[0]
            ax.set_xlabel(r"$\zeta_2$")
        ax.semilogx(x, values, "k-")
        ax.set_ylabel(label)
        ax.set_title(f"{fixed_name} = {fixed_val:g}")
    b = spec.base
    fig.suptitle(
        rf"$\omega_b/\omega_a$={b.omega_b / b.omega_a:g}, "
        rf"$\omega_p$={b.omega_p:g}, $\kappa$={b.kappa:g}",
        fontsize=9,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
