"""Figures for CLI reports (matplotlib, file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ratmono.numeric import EpsilonTable  # noqa: E402


def plot_epsilon_table(T: EpsilonTable, path: str) -> None:
    """ε values in the plane of ``log|ε|`` against ``arg ε``, one point per tuple."""
    vals = np.array([complex(v) for v in T.values.values()])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(np.angle(vals), np.log(np.abs(vals)), s=14)
    ax.axhline(0.0, color="grey", lw=0.6)
    ax.set_xlabel("arg ε")
    ax.set_ylabel("log |ε|")
    ax.set_title(f"ε-table, degree {T.degree}, {len(vals)} tuples")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
