"""Closed-form pair couplings between two-level emitters.

Photon exchange through a shared reservoir couples every emitter pair with
a dissipative part (collective decay) and a coherent part (collective
shift).  Both depend only on the dimensionless separation ``xi`` (resonant
wavenumber times distance) and on the squared projection ``c2`` of the
transition dipole orientation onto the separation axis.  All couplings are
returned in units of the intrinsic single-emitter decay rate of the
reservoir, Gamma = 1 internally.

The planar (2D) reservoir gives Bessel-function kernels, the free-space
(3D) reservoir the familiar sin/cos forms with a 1/xi^3 near-field, and
the guided (1D) reservoir undamped sinusoids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import specfun
from .specfun import QuadratureSpec, bessel_j, bessel_y

__all__ = [
    "GAMMA",
    "CLOSED_FORMS",
    "ReservoirKind",
    "PairGeometry",
    "PairCoupling",
    "f2d",
    "g2d",
    "kernel2d",
    "dissipative3d",
    "coherent3d",
    "kernel3d",
    "kernel1d",
    "quadrature_f2d",
    "pair_coupling",
]

GAMMA = 1.0  # intrinsic single-emitter decay rate; the rate unit throughout

# closed forms shipped by this module; the oracle suite keeps a manifest
# proving each has at least one independent check
CLOSED_FORMS = (
    "f2d",
    "g2d",
    "kernel2d",
    "dissipative3d",
    "coherent3d",
    "kernel3d",
    "kernel1d",
)


class ReservoirKind(Enum):
    """Dimensionality of the photonic reservoir mediating the coupling."""

    ONE_D = "1d"
    TWO_D = "2d"
    THREE_D = "3d"

    @classmethod
    def parse(cls, tag: str) -> "ReservoirKind":
        try:
            return cls(tag.lower())
        except ValueError:
            raise ValueError(f"unknown reservoir kind {tag!r}, expected 1d/2d/3d") from None


@dataclass(frozen=True)
class PairGeometry:
    """Dimensionless separation and dipole projection of an emitter pair.

    ``xi`` is k_L |r_i - r_j| >= 0 and ``c2`` = (p . r_hat)^2 is the squared
    cosine between the dipole orientation and the separation axis.
    """

    xi: float
    c2: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and self.xi >= 0.0):
            raise ValueError(f"xi must be finite and >= 0, got {self.xi}")
        if not (0.0 <= self.c2 <= 1.0):
            raise ValueError(f"c2 must lie in [0, 1], got {self.c2}")


@dataclass(frozen=True)
class PairCoupling:
    """Dissipative and coherent coupling of one pair, in units of Gamma.

    ``dissipative`` is the collective decay part (equals 1 at zero
    separation), ``coherent`` the collective shift part.  The pair enters
    the coupling matrix as Gamma (dissipative + 2i coherent) / 2.
    """

    dissipative: float
    coherent: float


# ----------------------------------------------------------------------
# planar reservoir
# ----------------------------------------------------------------------

def f2d(geom: PairGeometry) -> float:
    """Dissipative kernel of the planar reservoir.

    f(xi) = 2 [J_0(xi) - J_1(xi)/xi + c2 J_2(xi)], continued to f(0) = 1.
    """
    xi = geom.xi
    if xi == 0.0:
        return 1.0
    return 2.0 * (
        bessel_j(0, xi) - bessel_j(1, xi) / xi + geom.c2 * bessel_j(2, xi)
    )


def g2d(geom: PairGeometry) -> float:
    """Coherent kernel of the planar reservoir.

    g(xi) = 2 Y_0(xi) - 2 Y_1(xi)/xi + 2 c2 Y_2(xi)
            - 4/(pi xi^2) (1 - 2 c2),
    logarithmically divergent as xi -> 0 (rejected there).
    """
    xi = geom.xi
    if xi == 0.0:
        raise ValueError("g2d diverges logarithmically at xi = 0")
    return (
        2.0 * bessel_y(0, xi)
        - 2.0 * bessel_y(1, xi) / xi
        + 2.0 * geom.c2 * bessel_y(2, xi)
        - 4.0 / (math.pi * xi * xi) * (1.0 - 2.0 * geom.c2)
    )


def kernel2d(geom: PairGeometry) -> PairCoupling:
    """Planar-reservoir pair coupling (f, g/2); xi = 0 rejected."""
    return PairCoupling(f2d(geom), 0.5 * g2d(geom))


def quadrature_f2d(geom: PairGeometry, spec: QuadratureSpec | None = None) -> float:
    """Angular-quadrature oracle for :func:`f2d`.

    Evaluates (1/pi) Int_0^{2pi} [1 - (cos t cos t' + sin t sin t')^2]
    cos(xi cos t) dt with cos^2 t' = c2, which is the reservoir-mode
    average the closed form was resummed from.  Independent of the Bessel
    evaluators.
    """
    if spec is None:
        spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)
    xi = geom.xi
    ct = math.sqrt(geom.c2)
    st = math.sqrt(1.0 - geom.c2)

    def integrand(t: float) -> float:
        proj = math.cos(t) * ct + math.sin(t) * st
        return (1.0 - proj * proj) * math.cos(xi * math.cos(t))

    return specfun.integrate(integrand, 0.0, 2.0 * math.pi, spec) / math.pi


# ----------------------------------------------------------------------
# free-space reservoir
# ----------------------------------------------------------------------

def dissipative3d(geom: PairGeometry) -> float:
    """Free-space dissipative coupling, continued to 1 at xi = 0.

    (3/2) { (1 - c2) sin(xi)/xi + (1 - 3 c2)(cos(xi)/xi^2 - sin(xi)/xi^3) }
    """
    xi = geom.xi
    c2 = geom.c2
    if xi == 0.0:
        return 1.0
    if xi < 0.1:
        # the cos/xi^2 - sin/xi^3 bracket cancels catastrophically for
        # small xi; its Taylor form is -1/3 + xi^2/30 - xi^4/840 + O(xi^6)
        q = xi * xi
        sinc = 1.0 - q / 6.0 + q * q / 120.0
        bracket = -1.0 / 3.0 + q / 30.0 - q * q / 840.0
        return 1.5 * ((1.0 - c2) * sinc + (1.0 - 3.0 * c2) * bracket)
    s = math.sin(xi)
    c = math.cos(xi)
    return 1.5 * (
        (1.0 - c2) * s / xi + (1.0 - 3.0 * c2) * (c / xi**2 - s / xi**3)
    )


def coherent3d(geom: PairGeometry) -> float:
    """Free-space coherent coupling; diverges as 1/xi^3 (xi = 0 rejected).

    (3/4) { -(1 - c2) cos(xi)/xi + (1 - 3 c2)(sin(xi)/xi^2 + cos(xi)/xi^3) }
    """
    xi = geom.xi
    if xi == 0.0:
        raise ValueError("coherent3d diverges at xi = 0")
    s = math.sin(xi)
    c = math.cos(xi)
    c2 = geom.c2
    return 0.75 * (
        -(1.0 - c2) * c / xi + (1.0 - 3.0 * c2) * (s / xi**2 + c / xi**3)
    )


def kernel3d(geom: PairGeometry) -> PairCoupling:
    """Free-space pair coupling; xi = 0 rejected (coherent part diverges)."""
    return PairCoupling(dissipative3d(geom), coherent3d(geom))


# ----------------------------------------------------------------------
# guided reservoir
# ----------------------------------------------------------------------

def kernel1d(xi: float) -> PairCoupling:
    """Guided-reservoir pair coupling: undamped sinusoids of xi.

    Both parts are normalized to unit amplitude in Gamma units,
    dissipative(0) = 1.  The closed forms fix only the functional shapes;
    the coherent amplitude is an artifact convention.
    """
    if not (math.isfinite(xi) and xi >= 0.0):
        raise ValueError(f"xi must be finite and >= 0, got {xi}")
    return PairCoupling(math.cos(xi), math.sin(xi))


def pair_coupling(kind: ReservoirKind, geom: PairGeometry) -> PairCoupling:
    """Dispatch the pair coupling for the given reservoir dimensionality."""
    if kind is ReservoirKind.TWO_D:
        return kernel2d(geom)
    if kind is ReservoirKind.THREE_D:
        return kernel3d(geom)
    if kind is ReservoirKind.ONE_D:
        return kernel1d(geom.xi)
    raise ValueError(f"unsupported reservoir kind {kind!r}")
