"""Pair-coupling kernels of the planar reservoir, both dipole orientations.

Solid curves show the decay-rate coupling -f(xi)/2 and dash-dotted curves
the frequency-shift coupling g(xi)/2, against separation in wavelengths.
"""

import argparse
import math
from pathlib import Path

from figlib import FigureRecipe, finish, new_figure, read_table, run_cli

COLUMNS = ("xi", "f_par", "g_par", "f_perp", "g_perp")


def generate(data_dir: Path, steps: int = 600) -> dict:
    data_dir.mkdir(parents=True, exist_ok=True)
    path = data_dir / "kernel_planar.csv"
    run_cli(
        "kernel",
        "--xi-max", f"{6.0 * math.pi:.17g}",
        "--steps", str(steps),
        "--pol", "parallel,perpendicular",
        "--out", path,
    )
    return {"kernel": path}


def default_recipe(data_dir: Path, out_dir: Path) -> FigureRecipe:
    return FigureRecipe(
        "fig1",
        inputs={"kernel": data_dir / "kernel_planar.csv"},
        output=out_dir / "fig1_kernels.png",
        scales={"x": "linear", "y": "linear"},
    )


def curves(table: dict) -> dict:
    """Plotted data: decay coupling -f/2 (solid) and shift coupling g/2."""
    x = table["xi"] / (2.0 * math.pi)
    return {
        "x": x,
        "decay_par": -0.5 * table["f_par"],
        "shift_par": 0.5 * table["g_par"],
        "decay_perp": -0.5 * table["f_perp"],
        "shift_perp": 0.5 * table["g_perp"],
    }


def render(recipe: FigureRecipe) -> Path:
    table = read_table(recipe.inputs["kernel"], COLUMNS)
    data = curves(table)
    fig, axes = new_figure(1, 2)
    for ax, tag, label in (
        (axes[0, 0], "par", "dipoles parallel to separation"),
        (axes[0, 1], "perp", "dipoles perpendicular to separation"),
    ):
        ax.plot(data["x"], data[f"decay_{tag}"], "-", label="decay coupling")
        ax.plot(data["x"], data[f"shift_{tag}"], "-.", label="shift coupling")
        ax.axhline(0.0, color="0.75", lw=0.8, zorder=0)
        ax.set_xscale(recipe.scales.get("x", "linear"))
        ax.set_yscale(recipe.scales.get("y", "linear"))
        ax.set_xlabel(r"separation $\xi / 2\pi$")
        ax.set_title(label)
    axes[0, 0].set_ylabel(r"pair coupling (units of $\Gamma$)")
    axes[0, 0].legend()
    return finish(fig, recipe)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("figures/out/data"))
    parser.add_argument("--out-dir", type=Path, default=Path("figures/out"))
    parser.add_argument("--skip-generate", action="store_true",
                        help="reuse existing CSVs instead of regenerating")
    args = parser.parse_args(argv)
    if not args.skip_generate:
        generate(args.data_dir)
    path = render(default_recipe(args.data_dir, args.out_dir))
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
