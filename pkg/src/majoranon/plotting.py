"""Matplotlib figures for the report path (PNG next to the CSV output)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
}


def _save(fig, path) -> Path:
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_pseudo_energy(zeta, majoranon, dirac, path, measure_zetas=(), title=None) -> Path:
    """Majoranon (solid) vs Dirac (dashed) pseudo-energy; dotted lines mark measurements."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.4, 2.4))
        ax.plot(zeta, majoranon, "-", color="C0", label="Majoranon")
        ax.plot(zeta, dirac, "--", color="C3", label="Dirac")
        for z in measure_zetas:
            ax.axvline(z, color="0.5", lw=0.8, ls=":")
        ax.set_xlabel(r"$Z\kappa$")
        ax.set_ylabel(r"$\langle\sigma_z\rangle$")
        ax.set_ylim(-1.05, 1.05)
        ax.legend(loc="lower left", frameon=False)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_component_maps(zeta, comp1, comp2, path, measure_zetas=()) -> Path:
    """Side-by-side intensity evolution of the two spinor components."""
    zeta = np.asarray(zeta)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(5.0, 3.0), sharey=True)
        vmax = max(np.max(comp1), np.max(comp2))
        for ax, data, label in zip(axes, (comp1, comp2), (r"$|\psi_{1,n}|^2$", r"$|\psi_{2,n}|^2$")):
            n = data.shape[1]
            im = ax.imshow(
                data,
                aspect="auto",
                origin="upper",
                extent=(0.5, n + 0.5, zeta[-1], zeta[0]),
                vmin=0.0,
                vmax=vmax,
                cmap="viridis",
            )
            for z in measure_zetas:
                ax.axhline(z, color="w", lw=0.8, ls="--")
            ax.set_xlabel("n")
            ax.set_title(label)
        axes[0].set_ylabel(r"$Z\kappa$")
        fig.colorbar(im, ax=axes, shrink=0.8)
        return _save(fig, path)


def plot_site_map(zeta, sites, path, title=None) -> Path:
    """Waveguide-resolved intensity evolution (rows zeta, columns sites)."""
    zeta = np.asarray(zeta)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.4, 3.0))
        k = sites.shape[1]
        ax.imshow(sites, aspect="auto", origin="upper", extent=(0.5, k + 0.5, zeta[-1], zeta[0]), cmap="viridis")
        ax.set_xlabel("waveguide k")
        ax.set_ylabel(r"$Z\kappa$")
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_profiles(zeta_values, comp1_rows, comp2_rows, path) -> Path:
    """Spinor intensities at the measurement distances."""
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, len(zeta_values), figsize=(2.6 * len(zeta_values), 2.2), squeeze=False)
        for ax, z, r1, r2 in zip(axes[0], zeta_values, comp1_rows, comp2_rows):
            n = np.arange(1, len(r1) + 1)
            ax.plot(n, r1, "-o", ms=3, label=r"$|\psi_1|^2$")
            ax.plot(n, r2, "-s", ms=3, label=r"$|\psi_2|^2$")
            ax.set_title(rf"$Z\kappa = {z:g}$")
            ax.set_xlabel("n")
        axes[0][0].legend(frameon=False)
        return _save(fig, path)


def plot_pseudo_energy_single(zeta, values, path, label, measure_zetas=()) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.4, 2.4))
        ax.plot(zeta, values, "-", color="C0", label=label)
        for z in measure_zetas:
            ax.axvline(z, color="0.5", lw=0.8, ls=":")
        ax.set_xlabel(r"$Z\kappa$")
        ax.set_ylabel(r"$\langle\sigma_z\rangle$")
        ax.set_ylim(-1.05, 1.05)
        ax.legend(loc="lower left", frameon=False)
        return _save(fig, path)
