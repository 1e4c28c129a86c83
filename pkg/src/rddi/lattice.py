"""Rectangular emitter arrays in the reservoir plane.

Positions are dimensionless (coordinates already multiplied by the
resonant wavenumber) and live in the x-z plane; the drive propagates along
an in-plane unit vector k_hat and the dipole orientation p_hat is in-plane
as well.  The enumeration of sites fixes the emitter index used by the
phase-imprinted states, so it is part of the contract: by default the z
coordinate varies fastest ("z-major").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .kernels import PairGeometry

__all__ = [
    "IndexOrder",
    "LatticeSpec",
    "AtomSites",
    "build",
    "pair_geometry",
    "save_sites",
    "load_sites",
]

MAX_SITES_DEFAULT = 10_000


class IndexOrder(Enum):
    Z_MAJOR = "z-major"  # z fastest: (ix, iz) -> ix * n_z + iz
    X_MAJOR = "x-major"  # x fastest: (ix, iz) -> iz * n_x + ix

    @classmethod
    def parse(cls, tag: str) -> "IndexOrder":
        try:
            return cls(tag.lower())
        except ValueError:
            raise ValueError(f"unknown index order {tag!r}") from None


@dataclass(frozen=True)
class LatticeSpec:
    """Rectangular n_x by n_z array with nearest-neighbor spacing ``spacing``.

    ``polarization_angle`` is the in-plane angle of the dipole orientation
    measured from the x axis toward z, so 0 means p_hat = x_hat and pi/2
    means p_hat = z_hat.  ``drive`` is the in-plane drive direction.
    """

    n_x: int
    n_z: int
    spacing: float
    polarization_angle: float = 0.0
    drive: tuple[float, float] = (0.0, 1.0)
    index_order: IndexOrder = IndexOrder.Z_MAJOR
    max_sites: int = MAX_SITES_DEFAULT

    def __post_init__(self):
        if self.n_x < 1 or self.n_z < 1:
            raise ValueError("n_x and n_z must be positive")
        if not (math.isfinite(self.spacing) and self.spacing > 0.0):
            raise ValueError("spacing must be positive")
        knorm = math.hypot(*self.drive)
        if not math.isclose(knorm, 1.0, rel_tol=0.0, abs_tol=1e-9):
            raise ValueError("drive must be an in-plane unit vector")

    @property
    def n(self) -> int:
        return self.n_x * self.n_z

    @property
    def p_hat(self) -> np.ndarray:
        return np.array(
            [math.cos(self.polarization_angle), math.sin(self.polarization_angle)]
        )

    @property
    def k_hat(self) -> np.ndarray:
        return np.asarray(self.drive, dtype=float)


@dataclass(frozen=True)
class AtomSites:
    """Ordered emitter positions; the row index is the emitter index."""

    positions: np.ndarray  # (n, 2) dimensionless (xi_x, xi_z)
    index_order: IndexOrder = IndexOrder.Z_MAJOR

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ValueError("positions must have shape (n, 2)")
        object.__setattr__(self, "positions", pos)
        if len(np.unique(pos, axis=0)) != len(pos):
            raise ValueError("sites must be pairwise distinct")

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @classmethod
    def from_positions(cls, rows) -> "AtomSites":
        """Escape hatch for irregular geometries: explicit position list."""
        return cls(np.asarray(rows, dtype=float))


def build(spec: LatticeSpec) -> AtomSites:
    """Generate the sites of a rectangular lattice per the spec's enumeration."""
    if spec.n > spec.max_sites:
        raise ValueError(
            f"lattice has {spec.n} sites, exceeding the configured max {spec.max_sites}"
        )
    xs = np.arange(spec.n_x) * spec.spacing
    zs = np.arange(spec.n_z) * spec.spacing
    if spec.index_order is IndexOrder.Z_MAJOR:
        ix, iz = np.meshgrid(xs, zs, indexing="ij")
    else:
        iz, ix = np.meshgrid(zs, xs, indexing="ij")
    pos = np.column_stack([ix.ravel(), iz.ravel()])
    return AtomSites(pos, spec.index_order)


def pair_geometry(sites: AtomSites, i: int, j: int, p_hat) -> PairGeometry:
    """Separation and dipole projection for the (i, j) pair, 0-based, i != j."""
    if i == j:
        raise ValueError("pair geometry requires two distinct emitters")
    d = sites.positions[i] - sites.positions[j]
    xi = math.hypot(d[0], d[1])
    c = (p_hat[0] * d[0] + p_hat[1] * d[1]) / xi
    c2 = min(max(c * c, 0.0), 1.0)
    return PairGeometry(xi, c2)


def save_sites(sites: AtomSites, path) -> None:
    """Write sites as plain-text rows "index, xi_x, xi_z" (1-based index)."""
    lines = ["index, xi_x, xi_z"]
    for k, (x, z) in enumerate(sites.positions, start=1):
        lines.append(f"{k}, {x:.17g}, {z:.17g}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_sites(path) -> AtomSites:
    """Read sites written by :func:`save_sites`; rows are kept in file order."""
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.lower().startswith("index"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"malformed site row: {line!r}")
        rows.append((float(parts[1]), float(parts[2])))
    if not rows:
        raise ValueError(f"no sites found in {path}")
    return AtomSites.from_positions(rows)
