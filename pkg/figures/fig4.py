"""Lifetime contrast of a striped array under the two drive directions.

Survival intensity of the symmetric (m = 0) and a phase-imprinted
(m = 10) state on a 4 x 20 array at spacing 5, drive along the long or
the short axis, against the bare exponential decay.  The dipole
orientation stays transverse to the drive within the plane.
"""

import argparse
import math
from pathlib import Path

import numpy as np

from figlib import FigureRecipe, finish, new_figure, read_table, run_cli

DYNAMICS_COLUMNS = ("t", "re_amp", "im_amp", "intensity")


def generate(data_dir: Path, fast: bool = False) -> dict:
    data_dir.mkdir(parents=True, exist_ok=True)
    nx, nz = ("3", "10") if fast else ("4", "20")
    paths = {}
    for m in (0, 10):
        for axis in ("z", "x"):
            pol = 0.0 if axis == "z" else math.pi / 2.0
            path = data_dir / f"striped_m{m}_k{axis}.csv"
            run_cli("dynamics", "--nx", nx, "--nz", nz, "--xi", "5",
                    "--m", str(m), "--klong", axis,
                    "--pol-angle", f"{pol:.17g}",
                    "--tmin", "1e-2", "--tmax", "1e3",
                    "--tpoints", "500" if fast else "1500",
                    "--out", path)
            paths[f"m{m}_k{axis}"] = path
    return paths


def default_recipe(data_dir: Path, out_dir: Path) -> FigureRecipe:
    inputs = {
        f"m{m}_k{axis}": data_dir / f"striped_m{m}_k{axis}.csv"
        for m in (0, 10)
        for axis in ("z", "x")
    }
    return FigureRecipe(
        "fig4",
        inputs=inputs,
        output=out_dir / "fig4_striped_lifetimes.png",
        scales={"y": "log"},
    )


def render(recipe: FigureRecipe) -> Path:
    fig, axes = new_figure(1, 2)
    panels = ((axes[0, 0], 0, 8.0), (axes[0, 1], 10, 1e3))
    for ax, m, t_max in panels:
        for axis, ls in (("z", "-"), ("x", ":")):
            table = read_table(recipe.inputs[f"m{m}_k{axis}"], DYNAMICS_COLUMNS)
            sel = table["t"] <= t_max
            ax.plot(table["t"][sel], table["intensity"][sel], ls,
                    label=f"drive along {axis}")
        t = np.linspace(0.0, t_max, 300)
        ax.plot(t, np.exp(-t), "--", color="0.5", lw=1.0, label="bare decay")
        ax.set_yscale(recipe.scales.get("y", "log"))
        ax.set_ylim(1e-4, 1.5)
        ax.set_xlabel(r"time $\Gamma t$")
        ax.set_ylabel(f"$|A_{{{m}}}(t)|^2$")
        ax.set_title(f"$m = {m}$")
        if m == 10:
            ax.set_xscale("log")
        ax.legend()
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
