"""Delimited output and figure rendering for the command-line front end.

CSV files are written with 17 significant digits so re-reading reproduces the
in-memory values exactly; figures are rendered with matplotlib to files next
to the delimited output.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# Deterministic ids in SVG output so identical runs produce identical bytes.
plt.rcParams["svg.hashsalt"] = "zbsplinets"


def _save(fig, path: Path) -> None:
    # Strip the creation date so identical runs produce identical bytes.
    if Path(path).suffix == ".svg":
        fig.savefig(path, metadata={"Date": None})
    else:
        fig.savefig(path)


def fmt(value: float) -> str:
    return f"{float(value):.17g}"


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [fmt(v) if isinstance(v, (int, float, np.floating)) and not isinstance(v, bool) else v for v in row]
            )


def write_manifest(path: Path, config: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_wide_histograms(path: Path) -> tuple[np.ndarray, list[str], np.ndarray]:
    """Read a wide histogram CSV: header ``id,x_1,...``, rows ``label,f_1,...``.

    Returns (midpoints, labels, frequency matrix).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        mids = np.array([float(v) for v in header[1:]])
        labels, rows = [], []
        for row in reader:
            if not row:
                continue
            labels.append(row[0])
            rows.append([float(v) for v in row[1:]])
    return mids, labels, np.array(rows)


def save_curve_figure(
    path: Path,
    xs: np.ndarray,
    curves: np.ndarray,
    labels: Sequence[str] | None = None,
    title: str = "",
    xlabel: str = "x",
    ylabel: str = "value",
) -> None:
    """Render one line per column of ``curves`` against ``xs``."""
    fig, ax = plt.subplots(figsize=(8, 5))
    curves = np.atleast_2d(curves)
    if curves.shape[0] == xs.size and curves.ndim == 2:
        cols = curves.T
    else:
        cols = curves
    for idx, col in enumerate(cols):
        label = labels[idx] if labels is not None and idx < len(labels) else None
        ax.plot(xs, col, lw=1.2, label=label)
    if labels is not None and len(cols) <= 12:
        ax.legend(fontsize=8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)


def save_scree_figure(path: Path, explained: np.ndarray, title: str = "Explained variability") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    idx = np.arange(1, explained.size + 1)
    ax.plot(idx, explained, "o-", lw=1.2)
    ax.set_xlabel("component")
    ax.set_ylabel("explained fraction")
    ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)
    plt.close(fig)
