"""Shared plumbing for the figure scripts.

The figure scripts consume the simulator only through its command-line
interface: they invoke ``python -m rddi.cli`` to produce CSV files and
read those files back.  Nothing here imports the simulator package.
"""

from __future__ import annotations

import csv
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

STYLE_FILE = Path(__file__).resolve().parent / "style" / "rddi.mplstyle"

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4")


class FigureDataError(RuntimeError):
    """A recipe's input files are missing, empty or miss expected columns."""


@dataclass(frozen=True)
class FigureRecipe:
    """Input CSVs, output image and axis scales for one figure."""

    figure_id: str
    inputs: dict = field(default_factory=dict)   # role name -> csv path
    output: Path = Path("figure.png")
    scales: dict = field(default_factory=dict)   # "x"/"y" -> "linear"/"log"

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure_id!r}")
        for axis, scale in self.scales.items():
            if axis not in ("x", "y") or scale not in ("linear", "log"):
                raise ValueError(f"bad axis scale {axis}={scale}")
        object.__setattr__(self, "output", Path(self.output))


def read_table(path, required_columns=()) -> dict:
    """Read one CSV in the simulator's dialect into column arrays."""
    path = Path(path)
    if not path.exists():
        raise FigureDataError(f"input file {path} does not exist")
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FigureDataError(f"input file {path} is empty") from None
        rows = [row for row in reader if row]
    missing = [c for c in required_columns if c not in header]
    if missing:
        raise FigureDataError(f"{path} misses expected columns {missing}")
    if not rows:
        raise FigureDataError(f"{path} has a header but no data rows")
    data = np.array([[float(cell) for cell in row] for row in rows])
    return {name: data[:, i] for i, name in enumerate(header)}


def new_figure(n_rows=1, n_cols=1, height=3.4):
    plt.style.use(str(STYLE_FILE))
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(4.2 * n_cols, height * n_rows), squeeze=False
    )
    return fig, axes


def finish(fig, recipe: FigureRecipe) -> Path:
    recipe.output.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(recipe.output, metadata={"Software": "rddi-figures"})
    plt.close(fig)
    return recipe.output


def run_cli(*args: str) -> None:
    """Invoke the simulator CLI; raises on non-zero exit."""
    cmd = [sys.executable, "-m", "rddi.cli", *map(str, args)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(
            f"simulator invocation failed ({proc.returncode}): "
            f"{' '.join(cmd)}\n{proc.stderr}"
        )
