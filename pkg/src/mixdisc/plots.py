"""Figures for the reproduction report, written as PNG files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import discrimination as disc  # noqa: E402
from . import fock  # noqa: E402


def _style(ax, xlabel, ylabel, title):
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=11)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(frameon=False, fontsize=9)


def plot_counting_error(path: Path, n_max: int = 1000) -> Path:
    ns = np.unique(np.geomspace(1, n_max, 60).astype(int))
    exact = [disc.counting_test_error(int(n)) for n in ns]
    asym = [disc.counting_test_asymptote(int(n)) for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, exact, "o", ms=3, label="exact C(2N,N)/2^(2N+1)")
    ax.loglog(ns, asym, "-", label="1/(2 sqrt(pi N))")
    _style(ax, "N", "error probability", "Exact-count vs binomial: counting test")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_error_vs_n(path: Path, n_max: int = 30) -> Path:
    ns = np.arange(1, n_max + 1)
    even = ns[ns % 2 == 0]
    counting = [np.log10(disc.counting_test_error(int(n))) for n in ns]
    qubits = [np.log10(disc.distinguishable_particles_error(int(n))[0]) for n in ns]
    photon_cf = [disc.photon_error(int(n))[0].log10 for n in even]
    photon_asym = [disc.photon_error(int(n))[1].log10 for n in even]
    photon_exp = [disc.photon_error_expansion(int(n)).log10 for n in even]
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot(ns, counting, "o-", ms=3, label="counting test (individual)")
    ax.plot(ns, qubits, "s-", ms=3, label="distinguishable qubits")
    ax.plot(even, photon_cf, "^-", ms=4, label="photons, closed-form overlap")
    ax.plot(even, photon_asym, "--", label="photons, asymptote")
    ax.plot(even, photon_exp, "v-", ms=4, label="photons, expanded states")
    _style(ax, "N", "log10 error probability", "Minimum error probability vs N (odd-N photons: 0)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_fock_overlap(path: Path, n_max: int = 30) -> Path:
    even = np.arange(2, n_max + 1, 2)
    closed = [fock.log10_fock_overlap_closed_form(int(n)) for n in even]
    expanded = [np.log10(fock.fock_overlap_expansion(int(n))) for n in even]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(even, closed, "o-", ms=4, label="1/(2^N ((N/2)!)^2)")
    ax.plot(even, expanded, "s-", ms=4, label="|<N,N|psi2>| from expansion")
    _style(ax, "N (even)", "log10 overlap", "Photon-state overlap")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_all(out_dir: Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        plot_counting_error(out_dir / "counting_error.png"),
        plot_error_vs_n(out_dir / "error_vs_n.png"),
        plot_fock_overlap(out_dir / "fock_overlap.png"),
    ]
