"""Eigen-decay spectra of a square array and subradiant state dynamics.

Left: sorted eigen-decay constants for several spacings, planar against
free-space reservoir, on a log scale with the bare rate as a guide line.
Right: survival intensity of two phase-imprinted states with their
dominant mode weights inset.
"""

import argparse
from pathlib import Path

import numpy as np

from figlib import FigureRecipe, finish, new_figure, read_table, run_cli

SPECTRUM_COLUMNS = ("l", "decay_constant", "re_lambda", "im_lambda")
DYNAMICS_COLUMNS = ("t", "re_amp", "im_amp", "intensity")
WEIGHT_COLUMNS = ("l", "decay_constant", "im_lambda", "weight2")


def generate(data_dir: Path, fast: bool = False) -> dict:
    data_dir.mkdir(parents=True, exist_ok=True)
    n = "6" if fast else "10"
    paths = {}
    for tag, spacing, kind in (
        ("s1", "1", "2d"),
        ("s5", "5", "2d"),
        ("s10", "10", "2d"),
        ("s10_free", "10", "3d"),
    ):
        path = data_dir / f"spectrum_{tag}.csv"
        run_cli("spectrum", "--nx", n, "--nz", n, "--xi", spacing,
                "--kind", kind, "--out", path)
        paths[f"spectrum_{tag}"] = path
    for m in (5, 7):
        dyn = data_dir / f"dynamics_m{m}.csv"
        wts = data_dir / f"weights_m{m}.csv"
        run_cli("dynamics", "--nx", n, "--nz", n, "--xi", "1", "--m", str(m),
                "--klong", "z", "--tmin", "1e-2", "--tmax", "1e3",
                "--tpoints", "400" if fast else "1200",
                "--out", dyn, "--weights-out", wts)
        paths[f"dynamics_m{m}"] = dyn
        paths[f"weights_m{m}"] = wts
    return paths


def default_recipe(data_dir: Path, out_dir: Path) -> FigureRecipe:
    inputs = {
        f"spectrum_{tag}": data_dir / f"spectrum_{tag}.csv"
        for tag in ("s1", "s5", "s10", "s10_free")
    }
    for m in (5, 7):
        inputs[f"dynamics_m{m}"] = data_dir / f"dynamics_m{m}.csv"
        inputs[f"weights_m{m}"] = data_dir / f"weights_m{m}.csv"
    return FigureRecipe(
        "fig3",
        inputs=inputs,
        output=out_dir / "fig3_spectra_dynamics.png",
        scales={"y": "log"},
    )


def render(recipe: FigureRecipe) -> Path:
    fig, axes = new_figure(2, 2, height=3.0)

    ax = axes[0, 0]
    styles = {"s1": "-", "s5": "-.", "s10": ":", "s10_free": "--"}
    labels = {
        "s1": "planar, spacing 1",
        "s5": "planar, spacing 5",
        "s10": "planar, spacing 10",
        "s10_free": "free space, spacing 10",
    }
    for tag, ls in styles.items():
        table = read_table(recipe.inputs[f"spectrum_{tag}"], SPECTRUM_COLUMNS)
        ax.plot(table["l"], table["decay_constant"], ls, label=labels[tag])
    ax.axhline(1.0, color="0.6", lw=0.9, zorder=0)
    ax.set_yscale(recipe.scales.get("y", "log"))
    ax.set_xlabel("mode index $l$")
    ax.set_ylabel(r"eigen-decay constant $\Gamma_l/\Gamma$")
    ax.legend(fontsize=8.5)
    axes[1, 0].axis("off")

    for row, m in ((0, 5), (1, 7)):
        ax = axes[row, 1]
        dyn = read_table(recipe.inputs[f"dynamics_m{m}"], DYNAMICS_COLUMNS)
        ax.plot(dyn["t"], dyn["intensity"], "-")
        ax.set_yscale("log")
        ax.set_xlabel(r"time $\Gamma t$")
        ax.set_ylabel(f"$|A_{{{m}}}(t)|^2$")
        wts = read_table(recipe.inputs[f"weights_m{m}"], WEIGHT_COLUMNS)
        top = np.argsort(wts["weight2"])[::-1][:8]
        inset = ax.inset_axes([0.55, 0.55, 0.42, 0.4])
        inset.bar(wts["l"][top], wts["weight2"][top],
                  width=max(1.0, 0.01 * wts["l"].max()))
        inset.set_xlabel("$l$", fontsize=8)
        inset.set_ylabel("$|w_l|^2$", fontsize=8)
        inset.tick_params(labelsize=7)
    return finish(fig, recipe)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("figures/out/data"))
    parser.add_argument("--out-dir", type=Path, default=Path("figures/out"))
    parser.add_argument("--fast", action="store_true", help="smaller array")
    parser.add_argument("--skip-generate", action="store_true")
    args = parser.parse_args(argv)
    if not args.skip_generate:
        generate(args.data_dir, fast=args.fast)
    path = render(default_recipe(args.data_dir, args.out_dir))
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
