"""Command-line driver for kernel tabulations, rate sweeps, spectra and dynamics.

Subcommands
    kernel      tabulate pair-coupling kernels over a separation grid
    symmetric   sweep collective rates of the symmetric state over lattice sizes
    spectrum    eigen-decay constants of one lattice
    dynamics    time evolution of one phase-imprinted state
    oracle      run the independent verification suites

Outputs are CSV (comma separated, '.' decimal, header row, 17 significant
digits, losslessly round-trippable) or JSON with the same rows.  Grids on
the command line use ``a..b`` for inclusive integer ranges, ``a:step:b``
for real ranges and comma lists for explicit values.  A JSON config file
supplies defaults that explicit flags override; ``--dump-config`` writes
the fully resolved configuration for exact replay.  Exit status: 0 on
success, 1 on numerical failure or failed oracles, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import oracles
from .collective import (
    assemble,
    diagonalize,
    evolve,
    log_time_grid,
    phase_imprinted_state,
    symmetric_rates,
)
from .kernels import (
    PairGeometry,
    ReservoirKind,
    coherent3d,
    dissipative3d,
    f2d,
    g2d,
    kernel1d,
)
from .lattice import AtomSites, IndexOrder, LatticeSpec, build, load_sites, save_sites
from .specfun import QuadratureError

JOBS_ENV = "RDDI_JOBS"

_KVEC = {"z": (0.0, 1.0), "x": (1.0, 0.0)}

_LATTICE_DEFAULTS = {
    "kind": "2d",
    "pol_angle": 0.0,
    "klong": "z",
    "order": "z-major",
    "format": "csv",
    "jobs": None,
    "sites": None,
    "dump_sites": None,
}

DEFAULTS = {
    "kernel": {
        "kind": "2d",
        "xi_grid": None,
        "xi_max": 6.0 * math.pi,
        "steps": 600,
        "pol": "parallel,perpendicular",
        "format": "csv",
    },
    "symmetric": {**_LATTICE_DEFAULTS, "nx": None, "nz": None, "xi": None},
    "spectrum": {**_LATTICE_DEFAULTS, "nx": None, "nz": None, "xi": None},
    "dynamics": {
        **_LATTICE_DEFAULTS,
        "nx": None,
        "nz": None,
        "xi": None,
        "m": 0,
        "tmin": 1e-2,
        "tmax": 1e3,
        "tpoints": 2000,
        "weights_out": None,
    },
    "oracle": {
        "suite": "all",
        "a_grid": "0,1,3,-3,7.5",
        "b_grid": "0.5,1,2,5",
        "format": "csv",
    },
}


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# grid parsing and output formatting
# ----------------------------------------------------------------------

def parse_int_grid(text: str) -> list[int]:
    """Inclusive integer grids: "2..30", "4", or "1,2,5"."""
    text = str(text).strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise UsageError(f"empty integer range {text!r}")
        return list(range(lo, hi + 1))
    if "," in text:
        return [int(p) for p in text.split(",") if p.strip()]
    return [int(text)]


def parse_real_grid(text: str) -> list[float]:
    """Real grids: "0:0.1:5" (inclusive within half a step), "1.5", "1,2,5"."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"real range must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0.0 or stop < start:
            raise UsageError(f"bad real range {text!r}")
        count = int(round((stop - start) / step)) + 1
        grid = [start + i * step for i in range(count)]
        return [x for x in grid if x <= stop + 0.5 * step]
    if "," in text:
        return [float(p) for p in text.split(",") if p.strip()]
    return [float(text)]


def format_real(x) -> str:
    return f"{float(x):.17g}"


def _format_cell(x) -> str:
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format_real(x)


def write_rows(path, columns, rows, fmt: str, meta: dict | None = None) -> None:
    path = Path(path)
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_format_cell(x) for x in row) for row in rows)
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        payload = {"columns": list(columns), "rows": [list(r) for r in rows]}
        if meta is not None:
            payload["config"] = meta
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        raise UsageError(f"unknown output format {fmt!r}")


# ----------------------------------------------------------------------
# configuration resolution
# ----------------------------------------------------------------------

def _resolve(args: argparse.Namespace) -> dict:
    sub = args.subcommand
    cfg = dict(DEFAULTS[sub])
    cfg["subcommand"] = sub
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a flat JSON object")
        file_sub = loaded.pop("subcommand", sub)
        if file_sub != sub:
            raise UsageError(
                f"config file is for subcommand {file_sub!r}, not {sub!r}"
            )
        unknown = set(loaded) - set(cfg) - {"out"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key, value in vars(args).items():
        if key in ("subcommand", "config", "dump_config"):
            continue
        if value is not None:
            cfg[key] = value
    if "out" not in cfg or cfg["out"] is None:
        raise UsageError("an output path is required (--out)")
    return cfg


def _require(cfg: dict, *keys) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise UsageError(f"missing required options: {', '.join(missing)}")


def _jobs(cfg: dict) -> int:
    jobs = cfg.get("jobs")
    if jobs is None:
        jobs = os.environ.get(JOBS_ENV, "1")
    jobs = int(jobs)
    if jobs < 1:
        raise UsageError("parallelism degree must be >= 1")
    return jobs


def _lattice_pieces(cfg: dict) -> tuple[AtomSites, np.ndarray, np.ndarray, ReservoirKind]:
    kind = ReservoirKind.parse(cfg["kind"])
    pol = float(cfg["pol_angle"])
    p_hat = np.array([math.cos(pol), math.sin(pol)])
    if cfg.get("klong") not in _KVEC:
        raise UsageError("klong must be 'z' or 'x'")
    k_hat = np.asarray(_KVEC[cfg["klong"]])
    if cfg.get("sites"):
        sites = load_sites(cfg["sites"])
    else:
        _require(cfg, "nx", "nz", "xi")
        spec = LatticeSpec(
            int(cfg["nx"]),
            int(cfg["nz"]),
            float(cfg["xi"]),
            polarization_angle=pol,
            drive=_KVEC[cfg["klong"]],
            index_order=IndexOrder.parse(cfg["order"]),
        )
        sites = build(spec)
    if cfg.get("dump_sites"):
        save_sites(sites, cfg["dump_sites"])
    return sites, p_hat, k_hat, kind


# ----------------------------------------------------------------------
# subcommand implementations
# ----------------------------------------------------------------------

def _run_kernel(cfg: dict) -> int:
    kind = ReservoirKind.parse(cfg["kind"])
    if cfg.get("xi_grid"):
        grid = parse_real_grid(cfg["xi_grid"])
    else:
        steps = int(cfg["steps"])
        xi_max = float(cfg["xi_max"])
        if steps < 1 or xi_max <= 0.0:
            raise UsageError("need steps >= 1 and xi_max > 0")
        grid = [(i + 1) * xi_max / steps for i in range(steps)]
    pols = [p.strip() for p in str(cfg["pol"]).split(",") if p.strip()]
    c2_by_pol = {"parallel": 1.0, "perpendicular": 0.0}
    unknown = [p for p in pols if p not in c2_by_pol]
    if unknown or not pols:
        raise UsageError(f"pol must name parallel/perpendicular, got {unknown}")
    tags = {"parallel": "par", "perpendicular": "perp"}
    columns = ["xi"]
    if kind is ReservoirKind.TWO_D:
        names = ("f", "g")
    elif kind is ReservoirKind.THREE_D:
        names = ("dissipative", "coherent")
    else:
        names = ("dissipative", "coherent")
        pols = ["parallel"]  # guided kernel carries no projection dependence
    if kind is ReservoirKind.ONE_D:
        columns += list(names)
    else:
        for pol in pols:
            columns += [f"{names[0]}_{tags[pol]}", f"{names[1]}_{tags[pol]}"]
    rows = []
    for xi in grid:
        row = [xi]
        if kind is ReservoirKind.ONE_D:
            pc = kernel1d(xi)
            row += [pc.dissipative, pc.coherent]
        else:
            for pol in pols:
                geom = PairGeometry(xi, c2_by_pol[pol])
                if kind is ReservoirKind.TWO_D:
                    row += [f2d(geom), g2d(geom)]
                else:
                    row += [dissipative3d(geom), coherent3d(geom)]
        rows.append(row)
    write_rows(cfg["out"], columns, rows, cfg["format"], cfg)
    return 0


def _symmetric_point(task: tuple) -> tuple:
    nx, nz, xi, kind_tag, pol_angle, klong, order = task
    spec = LatticeSpec(
        nx,
        nz,
        xi,
        polarization_angle=pol_angle,
        drive=_KVEC[klong],
        index_order=IndexOrder.parse(order),
    )
    sites = build(spec)
    m = assemble(sites, spec.p_hat, ReservoirKind.parse(kind_tag))
    rates = symmetric_rates(m, sites, spec.k_hat)
    return (nx, nz, rates.gamma_n, rates.delta_n)


def _run_symmetric(cfg: dict) -> int:
    _require(cfg, "nx", "nz", "xi")
    nx_grid = parse_int_grid(cfg["nx"])
    nz_grid = parse_int_grid(cfg["nz"])
    if not nx_grid or not nz_grid:
        raise UsageError("empty lattice grid")
    tasks = [
        (nx, nz, float(cfg["xi"]), cfg["kind"], float(cfg["pol_angle"]),
         cfg["klong"], cfg["order"])
        for nx in nx_grid
        for nz in nz_grid
    ]
    jobs = _jobs(cfg)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_symmetric_point, tasks, chunksize=1))
    else:
        rows = [_symmetric_point(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[1]))
    write_rows(cfg["out"], ["nx", "nz", "gamma_n", "delta_n"], rows, cfg["format"], cfg)
    return 0


def _run_spectrum(cfg: dict) -> int:
    sites, p_hat, _, kind = _lattice_pieces(cfg)
    spectrum = diagonalize(assemble(sites, p_hat, kind))
    rows = [
        (l + 1, -2.0 * lam.real, lam.real, lam.imag)
        for l, lam in enumerate(spectrum.eigenvalues)
    ]
    write_rows(
        cfg["out"],
        ["l", "decay_constant", "re_lambda", "im_lambda"],
        rows,
        cfg["format"],
        cfg,
    )
    return 0


def _run_dynamics(cfg: dict) -> int:
    sites, p_hat, k_hat, kind = _lattice_pieces(cfg)
    m = int(cfg["m"])
    state = phase_imprinted_state(sites, k_hat, m)
    spectrum = diagonalize(assemble(sites, p_hat, kind))
    times = log_time_grid(float(cfg["tmin"]), float(cfg["tmax"]), int(cfg["tpoints"]))
    series = evolve(spectrum, state, times)
    rows = [
        (t, a.real, a.imag, i)
        for t, a, i in zip(series.times, series.amplitude, series.intensity)
    ]
    write_rows(
        cfg["out"], ["t", "re_amp", "im_amp", "intensity"], rows, cfg["format"], cfg
    )
    if cfg.get("weights_out"):
        wrows = [
            (l + 1, -2.0 * lam.real, lam.imag, abs(w) ** 2)
            for l, (lam, w) in enumerate(zip(spectrum.eigenvalues, series.weights))
        ]
        write_rows(
            cfg["weights_out"],
            ["l", "decay_constant", "im_lambda", "weight2"],
            wrows,
            cfg["format"],
            cfg,
        )
    return 0


def _run_oracle(cfg: dict) -> int:
    suite = str(cfg["suite"]).lower()
    known = {"bessel", "pv", "g2d", "solid3d", "dynamics", "all"}
    if suite not in known:
        raise UsageError(f"unknown oracle suite {cfg['suite']!r}")
    reports = []
    if suite in ("bessel", "all"):
        reports += oracles.check_bessel_identities(parse_real_grid(cfg["a_grid"]))
    if suite in ("pv", "all"):
        reports += oracles.check_pv_identities(parse_real_grid(cfg["b_grid"]))
    if suite in ("g2d", "all"):
        reports += oracles.check_g2d_reconstruction((1.0, 2.5), (0.0, 0.7))
    if suite in ("solid3d", "all"):
        reports += oracles.check_dissipative3d_quadrature(
            (0.5, 1.0, math.pi, 7.3), (0.0, 0.3, 1.0)
        )
    if suite in ("dynamics", "all"):
        spec = LatticeSpec(4, 4, 1.5)
        sites = build(spec)
        m = assemble(sites, spec.p_hat)
        state = phase_imprinted_state(sites, spec.k_hat, 3)
        reports.append(oracles.check_dynamics(m, state, horizon=10.0))
    rows = [r.as_row() for r in reports]
    write_rows(cfg["out"], oracles.REPORT_COLUMNS, rows, cfg["format"], cfg)
    print(oracles.format_reports(reports))
    failed = [r for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(reports)} oracle checks FAILED", file=sys.stderr)
        return 1
    print(f"all {len(reports)} oracle checks passed")
    return 0


_RUNNERS = {
    "kernel": _run_kernel,
    "symmetric": _run_symmetric,
    "spectrum": _run_spectrum,
    "dynamics": _run_dynamics,
    "oracle": _run_oracle,
}


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rddi",
        description="Collective emission of emitter arrays in 1D/2D/3D photonic reservoirs",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--out", help="output file path")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--dump-config", help="write the resolved config as JSON")

    def lattice_opts(p):
        p.add_argument("--nx", help="lattice extent along x (integer or grid)")
        p.add_argument("--nz", help="lattice extent along z (integer or grid)")
        p.add_argument("--xi", type=float, help="dimensionless lattice spacing")
        p.add_argument("--kind", choices=("1d", "2d", "3d"), help="reservoir kind")
        p.add_argument("--pol-angle", dest="pol_angle", type=float,
                       help="in-plane dipole angle from x toward z (radians)")
        p.add_argument("--klong", choices=("z", "x"), help="drive direction")
        p.add_argument("--order", choices=("z-major", "x-major"),
                       help="site enumeration order")
        p.add_argument("--sites", help="read explicit sites from this file")
        p.add_argument("--dump-sites", dest="dump_sites",
                       help="export generated sites to this file")
        p.add_argument("--jobs", type=int, help=f"worker count (env {JOBS_ENV})")

    p = subs.add_parser("kernel", help="tabulate pair-coupling kernels")
    common(p)
    p.add_argument("--kind", choices=("1d", "2d", "3d"))
    p.add_argument("--xi-grid", dest="xi_grid", help="explicit separation grid")
    p.add_argument("--xi-max", dest="xi_max", type=float, help="grid endpoint")
    p.add_argument("--steps", type=int, help="number of grid points")
    p.add_argument("--pol", help="comma list of parallel,perpendicular")

    p = subs.add_parser("symmetric", help="collective-rate sweep over lattice sizes")
    common(p)
    lattice_opts(p)

    p = subs.add_parser("spectrum", help="eigen-decay constants of one lattice")
    common(p)
    lattice_opts(p)

    p = subs.add_parser("dynamics", help="time evolution of a phase-imprinted state")
    common(p)
    lattice_opts(p)
    p.add_argument("--m", type=int, help="winding number (0..N, 0 = symmetric)")
    p.add_argument("--tmin", type=float, help="first time, units 1/Gamma")
    p.add_argument("--tmax", type=float, help="last time, units 1/Gamma")
    p.add_argument("--tpoints", type=int, help="log-grid point count")
    p.add_argument("--weights-out", dest="weights_out",
                   help="also write per-mode weights to this file")

    p = subs.add_parser("oracle", help="run independent verification suites")
    common(p)
    p.add_argument("--suite", choices=("bessel", "pv", "g2d", "solid3d", "dynamics", "all"))
    p.add_argument("--a-grid", dest="a_grid", help="grid for the angular identities")
    p.add_argument("--b-grid", dest="b_grid", help="grid for the dispersion identities")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        if getattr(args, "dump_config", None):
            dump = {k: v for k, v in cfg.items() if v is not None}
            Path(args.dump_config).write_text(
                json.dumps(dump, indent=1, sort_keys=True) + "\n"
            )
        runner = _RUNNERS[cfg["subcommand"]]
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return runner(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, QuadratureError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
