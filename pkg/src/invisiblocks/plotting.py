"""Figure rendering for the report path (spectrum and profile commands).

Figures are written straight to file; no interactive backends.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .solver import SpectrumTable

__all__ = ["save_spectrum_figure", "save_profile_figure"]


def save_spectrum_figure(table: SpectrumTable, k0: float, path: str | Path) -> None:
    """Log-scale reflection/transmission coefficients vs k/k0."""
    x = table.k / k0
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogy(x, np.maximum(table.rl2, 1e-300), label=r"$|R^l|^2$", color="tab:blue")
    ax.semilogy(x, np.maximum(table.rr2, 1e-300), label=r"$|R^r|^2$",
                color="black", linestyle=":")
    ax.semilogy(x, np.maximum(table.t2, 1e-300), label=r"$|T|^2$",
                color="tab:purple", linestyle="--")
    ax.set_xlabel(r"$k/k_0$")
    ax.set_ylabel("coefficient")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_profile_figure(x, v, index, path: str | Path) -> None:
    """Refractive-index contrast Re(n - 1) and Im(n) over the sampled window."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(x, np.real(index) - 1.0, label=r"$\mathrm{Re}\,(n-1)$", color="tab:blue")
    ax.plot(x, np.imag(index), label=r"$\mathrm{Im}\,n$",
            color="tab:purple", linestyle="--")
    ax.set_xlabel(r"$x\ (\mu\mathrm{m})$")
    ax.set_ylabel("index contrast")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
