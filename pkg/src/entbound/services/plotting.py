"""SVG figures: max S_ent against L from a sweep CSV, and entropy traces against tau"""
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from loguru import logger  # noqa: E402

from entbound.core.errors import ResultsFormatError  # noqa: E402
from entbound.services.results_io import read_sweep_csv  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.2,
    "lines.markersize": 5,
    "legend.frameon": False,
    "svg.hashsalt": "entbound",
    "svg.fonttype": "none",
}


def plot_sweep(csv_path: Union[str, Path], svg_path: Union[str, Path]) -> Path:
    """Mean +- std of max S_ent per (beta, preset), closed-system bound dashed"""
    frame = read_sweep_csv(csv_path)
    ok = frame[frame["error"] == ""].dropna(subset=["mean_max_entropy_nats"])
    if ok.empty:
        raise ResultsFormatError(f"{csv_path} has no successful sweep points to plot")

    out = Path(svg_path)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        bound = frame.groupby("L", sort=True)["bound_nats"].first()
        ax.plot(bound.index, bound.values, "k--", label="closed-system bound")
        for (beta, preset), group in ok.groupby(["beta", "preset"], sort=True):
            group = group.sort_values("L")
            ax.errorbar(
                group["L"],
                group["mean_max_entropy_nats"],
                yerr=group["std_dev"].fillna(0.0),
                marker="o",
                capsize=3,
                label=f"beta={beta:g} ({preset})",
            )
        M, n = int(frame["M"].iloc[0]), int(frame["n"].iloc[0])
        ax.set_xlabel("L")
        ax.set_ylabel("max S_ent (nats)")
        ax.set_title(f"M={M}, n={n}")
        ax.set_xticks(sorted(frame["L"].unique()))
        ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info(f"Figure written to {out}")
    return out


def plot_trace(frame: pd.DataFrame, svg_path: Union[str, Path]) -> Path:
    """S1 and S2 against tau with the bound dashed"""
    out = Path(svg_path)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.6))
        ax.plot(frame["tau"], frame["S1_nats"], label="S1 (von Neumann)")
        ax.plot(frame["tau"], frame["S2_nats"], label="S2 (Renyi)")
        ax.axhline(frame["bound_nats"].iloc[0], color="k", linestyle="--", label="closed-system bound")
        ax.set_xlabel("tau")
        ax.set_ylabel("S (nats)")
        ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info(f"Trace figure written to {out}")
    return out
