"""Generate all simulation CSVs through the CLI and render the four figures."""

import argparse
from pathlib import Path

import fig1
import fig2
import fig3
import fig4

MODULES = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("figures/out"))
    parser.add_argument("--only", help="comma list of figure ids (default: all)")
    parser.add_argument("--fast", action="store_true",
                        help="reduced grids and array sizes")
    parser.add_argument("--skip-generate", action="store_true",
                        help="reuse CSVs already present in the data directory")
    args = parser.parse_args(argv)

    wanted = args.only.split(",") if args.only else list(MODULES)
    unknown = [w for w in wanted if w not in MODULES]
    if unknown:
        parser.error(f"unknown figure ids: {unknown}")

    data_dir = args.outdir / "data"
    for name in wanted:
        module = MODULES[name]
        if not args.skip_generate:
            try:
                module.generate(data_dir, fast=args.fast)
            except TypeError:
                module.generate(data_dir)
        path = module.render(module.default_recipe(data_dir, args.outdir))
        print(f"{name}: {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
