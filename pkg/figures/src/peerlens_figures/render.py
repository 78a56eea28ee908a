"""Render figures from peerlens CSV outputs.

Three kinds are supported, one per CSV schema:

* ``curve``   — `p,value` rows: the private-value curve over investigator beliefs;
* ``heatmap`` — `p,r,value` rows (row-major grid): the public-value surface over
  investigator belief p and peer belief r;
* ``scatter`` — simulation rows: chosen questions plotted as community mean vs
  community SD, under the arc sqrt(m(1-m)) that bounds the SD of any belief
  mixture.

This layer only reads the delimited files and draws; all numbers come from the
core package, so there is no second source of truth for the model.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file renderer only; never needs a display

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("curve", "heatmap", "scatter")

_REQUIRED = {
    "curve": ("p", "value"),
    "heatmap": ("p", "r", "value"),
    "scatter": ("community_mean", "community_sd"),
}


class SchemaError(ValueError):
    """Input CSV is missing columns the figure kind requires."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    input_path: Path
    output_path: Path
    marker: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, expected {KINDS}")


def _read_columns(path: Path, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [name for name in required if name not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing column(s) {', '.join(missing)}; found {header}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return {
        name: np.array([float(row[name]) for row in rows]) for name in required
    }


def load_curve(path: Path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(path, _REQUIRED["curve"])
    return data["p"], data["value"]


def load_surface(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rebuild the (p, r) grid from row-major rows."""
    data = _read_columns(path, _REQUIRED["heatmap"])
    ps = np.unique(data["p"])
    rs = np.unique(data["r"])
    if ps.size * rs.size != data["value"].size:
        raise SchemaError(f"{path}: rows do not form a complete p x r grid")
    values = data["value"].reshape(ps.size, rs.size)
    return ps, rs, values


def load_scatter(path: Path) -> tuple[np.ndarray, np.ndarray]:
    data = _read_columns(path, _REQUIRED["scatter"])
    return data["community_mean"], data["community_sd"]


def build_figure(spec: FigureSpec) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    if spec.kind == "curve":
        ps, values = load_curve(spec.input_path)
        ax.plot(ps, values, lw=2)
        ax.set_xlim(0.0, 1.0)
        ax.set_ylim(bottom=0.0)
        ax.set_xlabel("investigator belief p")
        ax.set_ylabel("expected belief-shift value")
    elif spec.kind == "heatmap":
        ps, rs, values = load_surface(spec.input_path)
        # imshow rows run along y, so transpose to put p on x and r on y.
        im = ax.imshow(
            values.T,
            origin="lower",
            extent=(ps[0], ps[-1], rs[0], rs[-1]),
            aspect="auto",
            cmap="viridis",
        )
        fig.colorbar(im, ax=ax, label="expected belief-shift value")
        ax.set_xlabel("investigator belief p")
        ax.set_ylabel("peer belief r")
    else:
        means, sds = load_scatter(spec.input_path)
        arc_x = np.linspace(0.0, 1.0, 401)
        ax.plot(arc_x, np.sqrt(arc_x * (1.0 - arc_x)), color="0.4", lw=1)
        ax.scatter(means, sds, s=18, alpha=0.8, edgecolors="none")
        ax.set_xlim(0.0, 1.0)
        ax.set_ylim(0.0, 0.5)
        ax.set_xlabel("community mean belief in favored claim")
        ax.set_ylabel("community belief SD")
    if spec.marker is not None:
        ax.plot(
            [spec.marker[0]],
            [spec.marker[1]],
            marker="D",
            color="red",
            markersize=8,
            linestyle="none",
        )
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> Path:
    """Draw the figure and write it to the spec's output path."""
    fig = build_figure(spec)
    try:
        fig.savefig(spec.output_path, dpi=150)
    finally:
        plt.close(fig)
    return Path(spec.output_path)
