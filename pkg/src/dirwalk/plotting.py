"""Figure builders for the CLI report path.

Figures are rendered headless and written as SVG next to the CSV output.
The plotted points are exactly the table rows; nothing is resampled.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

plt.rcParams["svg.hashsalt"] = "dirwalk"

_FIGSIZE = (7.0, 4.4)


def distribution_figure(xs, probs, title: str = ""):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(xs, probs, lw=1.0, color="tab:blue")
    ax.set_xlabel("position")
    ax.set_ylabel("probability")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def survival_figure(times, values, title: str = ""):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.loglog(times, values, lw=1.0, color="tab:red")
    ax.set_xlabel("t")
    ax.set_ylabel("survival probability")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def moments_figure(times, sigmas, title: str = ""):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(times, sigmas, lw=1.0, color="tab:green")
    ax.set_xlabel("t")
    ax.set_ylabel("standard deviation")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def sweep_figure(alphas, exponents, title: str = ""):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(alphas, exponents, "o-", lw=1.0, ms=3.5, color="tab:purple")
    ax.set_xlabel("alpha")
    ax.set_ylabel("fitted decay exponent")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_svg(fig, path) -> None:
    # strip the creation date so reruns produce stable files
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
