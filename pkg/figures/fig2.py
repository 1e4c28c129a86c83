"""Collective rates of the symmetric state across lattice shapes.

Upper/lower left: decay constant and shift against lattice depth at unit
spacing.  Right: subradiant rates of sparse rows (spacing 40, dipoles
perpendicular to the row) against row length.
"""

import argparse
import math
from pathlib import Path

import numpy as np

from figlib import FigureRecipe, finish, new_figure, read_table, run_cli

SWEEP_COLUMNS = ("nx", "nz", "gamma_n", "delta_n")

DENSE_NX = "1,2,3,4,6,8,10,14,18,22,26,30"
DENSE_NZ = "1..30"


def generate(data_dir: Path, fast: bool = False) -> dict:
    data_dir.mkdir(parents=True, exist_ok=True)
    dense = data_dir / "rates_dense.csv"
    sparse = data_dir / "rates_sparse_rows.csv"
    if fast:
        nx, nz, row_n = "1,2,4", "1..6", "2..12"
    else:
        nx, nz, row_n = DENSE_NX, DENSE_NZ, "2..40"
    run_cli("symmetric", "--nx", nx, "--nz", nz, "--xi", "1",
            "--klong", "z", "--out", dense)
    run_cli("symmetric", "--nx", row_n, "--nz", "1..3", "--xi", "40",
            "--pol-angle", f"{math.pi / 2.0:.17g}", "--klong", "z", "--out", sparse)
    return {"dense": dense, "sparse": sparse}


def default_recipe(data_dir: Path, out_dir: Path) -> FigureRecipe:
    return FigureRecipe(
        "fig2",
        inputs={
            "dense": data_dir / "rates_dense.csv",
            "sparse": data_dir / "rates_sparse_rows.csv",
        },
        output=out_dir / "fig2_collective_rates.png",
        scales={"x": "linear", "y": "linear"},
    )


def render(recipe: FigureRecipe) -> Path:
    dense = read_table(recipe.inputs["dense"], SWEEP_COLUMNS)
    sparse = read_table(recipe.inputs["sparse"], SWEEP_COLUMNS)
    fig, axes = new_figure(2, 2, height=2.9)

    # line families against depth, one line per width
    for ax, column, label in (
        (axes[0, 0], "gamma_n", r"$\Gamma_N/\Gamma$"),
        (axes[1, 0], "delta_n", r"$\Delta_N/\Gamma$"),
    ):
        widths = np.unique(dense["nx"]).astype(int)
        shown = [w for w in widths if w in (1, 2, 4, 10, 30)] or widths[:4].tolist()
        for w in shown:
            sel = dense["nx"] == w
            order = np.argsort(dense["nz"][sel])
            ax.plot(dense["nz"][sel][order], dense[column][sel][order],
                    label=f"$N_x={w}$")
        ax.set_xlabel("$N_z$")
        ax.set_ylabel(label)
    axes[0, 0].legend(ncols=2)
    axes[0, 0].set_title("dense lattice, spacing 1")

    ax = axes[0, 1]
    for nz, ls in ((1, "-"), (2, ":"), (3, "--")):
        sel = sparse["nz"] == nz
        if not np.any(sel):
            continue
        order = np.argsort(sparse["nx"][sel])
        ax.plot(sparse["nx"][sel][order], sparse["gamma_n"][sel][order], ls,
                label=f"$N_z={nz}$")
    ax.axhline(1.0, color="0.6", lw=0.9, ls="--", zorder=0)
    ax.set_xlabel("$N_x$")
    ax.set_ylabel(r"$\Gamma_N/\Gamma$")
    ax.set_title("sparse rows, spacing 40")
    ax.legend()
    axes[1, 1].axis("off")
    return finish(fig, recipe)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("figures/out/data"))
    parser.add_argument("--out-dir", type=Path, default=Path("figures/out"))
    parser.add_argument("--fast", action="store_true", help="reduced sweep grids")
    parser.add_argument("--skip-generate", action="store_true")
    args = parser.parse_args(argv)
    if not args.skip_generate:
        generate(args.data_dir, fast=args.fast)
    path = render(default_recipe(args.data_dir, args.out_dir))
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
