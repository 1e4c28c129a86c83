"""Independent verification machinery for the shipped closed forms.

Every closed-form kernel is re-derived here by a route that shares no code
with its implementation: angular quadrature for the planar dissipative
kernel, principal-value dispersion integrals for the planar coherent
kernel, solid-angle quadrature for the free-space dissipative kernel, and
direct ODE integration against the spectral propagator for the dynamics.
``coverage_manifest`` records which oracle guards which closed form; the
test suite fails if any closed form is left uncovered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import kernels
from .collective import CouplingMatrix, StateCoefficients, diagonalize
from .kernels import PairGeometry
from .specfun import QuadratureSpec, bessel_j, bessel_y, integrate, struve_h

__all__ = [
    "OracleReport",
    "check_bessel_identities",
    "check_pv_identities",
    "check_g2d_reconstruction",
    "check_dissipative3d_quadrature",
    "check_dynamics",
    "coverage_manifest",
    "missing_coverage",
    "format_reports",
    "REPORT_COLUMNS",
]

REPORT_COLUMNS = (
    "identity",
    "point",
    "closed_form",
    "oracle_value",
    "abs_error",
    "rel_error",
    "tolerance",
    "passed",
)


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one identity check at one parameter point."""

    identity: str
    point: dict = field(compare=False)
    closed_form: float = 0.0
    oracle_value: float = 0.0
    tolerance: float = 0.0
    abs_error: float = field(init=False, default=0.0)
    rel_error: float = field(init=False, default=0.0)
    passed: bool = field(init=False, default=False)
    detail: str = field(default="", compare=False)

    def __post_init__(self):
        err = abs(self.oracle_value - self.closed_form)
        scale = max(abs(self.closed_form), abs(self.oracle_value))
        object.__setattr__(self, "abs_error", err)
        object.__setattr__(self, "rel_error", err / scale if scale > 0.0 else 0.0)
        object.__setattr__(self, "passed", err <= self.tolerance and not self.detail)

    def as_row(self):
        point = ";".join(f"{k}={v:g}" for k, v in self.point.items())
        return (
            self.identity,
            point,
            self.closed_form,
            self.oracle_value,
            self.abs_error,
            self.rel_error,
            self.tolerance,
            int(self.passed),
        )


def format_reports(reports) -> str:
    lines = [
        f"{'identity':<22} {'point':<22} {'closed form':>22} {'oracle':>22} "
        f"{'abs err':>10} {'status':>7}"
    ]
    for r in reports:
        point = ";".join(f"{k}={v:g}" for k, v in r.point.items())
        status = "ok" if r.passed else "FAIL"
        lines.append(
            f"{r.identity:<22} {point:<22} {r.closed_form:>22.15g} "
            f"{r.oracle_value:>22.15g} {r.abs_error:>10.2e} {status:>7}"
        )
    return "\n".join(lines)


# ----------------------------------------------------------------------
# angular moments behind the planar dissipative kernel
# ----------------------------------------------------------------------

_ANGULAR_TOL = 1e-9


def _angular_moment(weight, a: float, part: str) -> float:
    trig = math.cos if part == "re" else math.sin

    def integrand(t: float) -> float:
        return weight(t) * trig(a * math.cos(t))

    spec = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)
    return integrate(integrand, 0.0, 2.0 * math.pi, spec)


def check_bessel_identities(a_grid) -> list:
    """Angular moments of e^{i a cos t} against their Bessel closed forms.

    Checks, per grid point, the uniform, cos^2, sin^2 and sin*cos weighted
    full-circle averages; real and imaginary parts are verified and the
    larger discrepancy is reported.
    """
    reports = []
    tol = _ANGULAR_TOL
    for a in a_grid:
        a = float(a)
        aa = abs(a)
        if a == 0.0:
            closed = {
                "angular_uniform": 2.0 * math.pi,
                "angular_cos2": math.pi,
                "angular_sin2": math.pi,
                "angular_sincos": 0.0,
            }
        else:
            closed = {
                "angular_uniform": 2.0 * math.pi * bessel_j(0, aa),
                "angular_cos2": 2.0 * math.pi * (bessel_j(1, a) / a - bessel_j(2, a)),
                "angular_sin2": 2.0 * math.pi * bessel_j(1, aa) / aa,
                "angular_sincos": 0.0,
            }
        weights = {
            "angular_uniform": lambda t: 1.0,
            "angular_cos2": lambda t: math.cos(t) ** 2,
            "angular_sin2": lambda t: math.sin(t) ** 2,
            "angular_sincos": lambda t: math.sin(t) * math.cos(t),
        }
        for name, weight in weights.items():
            try:
                re = _angular_moment(weight, a, "re")
                im = _angular_moment(weight, a, "im")
            except Exception as exc:  # quadrature failure marks the point failed
                reports.append(
                    OracleReport(name, {"a": a}, closed[name], math.nan, tol, str(exc))
                )
                continue
            # the closed forms are real, so the imaginary moment must vanish
            detail = "" if abs(im) <= tol else f"imaginary part {im:.3e} should vanish"
            reports.append(OracleReport(name, {"a": a}, closed[name], re, tol, detail))
    return reports


# ----------------------------------------------------------------------
# principal-value dispersion integrals behind the planar coherent kernel
# ----------------------------------------------------------------------

_PV_TOL = 1e-5


def _pv_spec(b: float | None) -> QuadratureSpec:
    return QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, principal_value=b)


def check_pv_identities(b_grid) -> list:
    """Semi-infinite principal-value integrals of J_n against Y/Struve forms.

    The five checked identities (for b > 0):
      pv_j0_minus : PV Int J_0(a)/(a-b)        = -(pi/2)[Y_0(b) + H_0(b)]
      pv_j0_plus  :    Int J_0(a)/(a+b)        = -(pi/2)[Y_0(b) - H_0(b)]
      pv_j1_minus : PV Int J_1(a)/(a(a-b))     = -(2 + pi b[Y_1+H_1])/(2b^2)
      pv_j1_plus  :    Int J_1(a)/(a(a+b))     = -(2 + pi b[Y_1-H_1])/(2b^2)
      pv_j2_sum   : PV Int J_2(a) 2a/(a^2-b^2) = -4/b^2 - pi Y_2(b)
    """
    reports = []
    for b in b_grid:
        b = float(b)
        if b <= 0.0:
            raise ValueError("principal-value abscissa b must be positive")
        cases = {
            "pv_j0_minus": (
                lambda a: bessel_j(0, a) / (a - b),
                -(math.pi / 2.0) * (bessel_y(0, b) + struve_h(0, b)),
                b,
            ),
            "pv_j0_plus": (
                lambda a: bessel_j(0, a) / (a + b),
                -(math.pi / 2.0) * (bessel_y(0, b) - struve_h(0, b)),
                None,
            ),
            "pv_j1_minus": (
                lambda a: (bessel_j(1, a) / a if a > 0.0 else 0.5) / (a - b),
                -(2.0 + math.pi * b * (bessel_y(1, b) + struve_h(1, b)))
                / (2.0 * b * b),
                b,
            ),
            "pv_j1_plus": (
                lambda a: (bessel_j(1, a) / a if a > 0.0 else 0.5) / (a + b),
                -(2.0 + math.pi * b * (bessel_y(1, b) - struve_h(1, b)))
                / (2.0 * b * b),
                None,
            ),
            "pv_j2_sum": (
                lambda a: bessel_j(2, a) * (1.0 / (a - b) + 1.0 / (a + b)),
                -4.0 / (b * b) - math.pi * bessel_y(2, b),
                b,
            ),
        }
        for name, (integrand, closed, pv_point) in cases.items():
            try:
                value = integrate(integrand, 0.0, math.inf, _pv_spec(pv_point))
            except Exception as exc:
                reports.append(
                    OracleReport(name, {"b": b}, closed, math.nan, _PV_TOL, str(exc))
                )
                continue
            reports.append(OracleReport(name, {"b": b}, closed, value, _PV_TOL))
    return reports


def check_g2d_reconstruction(xi_grid, c2_grid) -> list:
    """Rebuild the planar coherent kernel from its dissipative part.

    Causality ties the two: g(xi) = -(1/pi) PV Int_0^inf f(a)
    [1/(a-xi) + 1/(a+xi)] da at fixed dipole projection.  This checks the
    assembled coherent closed form end to end, independently of the Y and
    Struve evaluators.
    """
    reports = []
    for c2 in c2_grid:
        for xi in xi_grid:
            xi = float(xi)
            geom = PairGeometry(xi, float(c2))
            closed = kernels.g2d(geom)

            def integrand(a: float) -> float:
                if a == xi:
                    return 0.0
                f_val = kernels.f2d(PairGeometry(a, float(c2)))
                return f_val * (1.0 / (a - xi) + 1.0 / (a + xi))

            try:
                value = -integrate(integrand, 0.0, math.inf, _pv_spec(xi)) / math.pi
            except Exception as exc:
                reports.append(
                    OracleReport(
                        "g2d_dispersion", {"xi": xi, "c2": c2}, closed, math.nan,
                        _PV_TOL, str(exc),
                    )
                )
                continue
            reports.append(
                OracleReport("g2d_dispersion", {"xi": xi, "c2": c2}, closed, value, _PV_TOL)
            )
    return reports


# ----------------------------------------------------------------------
# solid-angle quadrature behind the free-space dissipative kernel
# ----------------------------------------------------------------------

def check_dissipative3d_quadrature(xi_grid, c2_grid, nodes: int = 120) -> list:
    """Free-space dissipative coupling from its reservoir-mode average.

    gamma(xi)/Gamma = (3/8pi) Int dOmega_q [1 - (q.p)^2] cos(xi q.n) over
    the unit sphere of mode directions, with n the separation axis and p
    at projection c2 to it.  Evaluated by a tensor Gauss-Legendre rule.
    """
    tn, tw = np.polynomial.legendre.leggauss(nodes)
    theta = 0.5 * math.pi * (tn + 1.0)
    theta_w = 0.5 * math.pi * tw
    phi = math.pi * (tn + 1.0)
    phi_w = math.pi * tw
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    wgt = np.outer(theta_w, phi_w)
    sin_th = np.sin(th)
    cos_th = np.cos(th)
    reports = []
    for c2 in c2_grid:
        c = math.sqrt(float(c2))
        s = math.sqrt(1.0 - float(c2))
        qp = s * sin_th * np.cos(ph) + c * cos_th
        base = (1.0 - qp**2) * sin_th
        for xi in xi_grid:
            xi = float(xi)
            value = float(
                3.0 / (8.0 * math.pi) * np.sum(wgt * base * np.cos(xi * cos_th))
            )
            closed = kernels.dissipative3d(PairGeometry(xi, float(c2)))
            reports.append(
                OracleReport(
                    "solid_angle_3d", {"xi": xi, "c2": c2}, closed, value, 1e-9
                )
            )
    return reports


# ----------------------------------------------------------------------
# direct ODE integration against the spectral propagator
# ----------------------------------------------------------------------

_DYNAMICS_TOL = 1e-7
_DYNAMICS_CAP = 64


def check_dynamics(
    m: CouplingMatrix,
    initial: StateCoefficients,
    horizon: float,
    n_cap: int = _DYNAMICS_CAP,
    samples: int = 200,
) -> OracleReport:
    """Max amplitude discrepancy between ODE and spectral propagation.

    Integrates db/dt = -conj(M) b with an adaptive explicit stepper at
    tolerance 1e-11 and compares against S exp(lambda t) S^{-1} b(0) on a
    uniform sample of the horizon.
    """
    if m.n > n_cap:
        raise ValueError(f"dynamics oracle capped at N = {n_cap}, got {m.n}")
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    spectrum = diagonalize(m)
    times = np.linspace(0.0, horizon, samples)
    coeff = spectrum.inverse_modes @ initial.amplitudes
    spectral = (np.exp(np.outer(times, spectrum.eigenvalues)) * coeff) @ spectrum.modes.T

    generator = -np.conj(m.matrix)
    sol = solve_ivp(
        lambda t, y: generator @ y,
        (0.0, horizon),
        initial.amplitudes,
        t_eval=times,
        method="DOP853",
        rtol=1e-13,
        atol=1e-15,
    )
    point = {"n": m.n, "horizon": horizon}
    if not sol.success:
        return OracleReport(
            "ode_vs_spectral", point, 0.0, math.nan, _DYNAMICS_TOL, sol.message
        )
    max_err = float(np.abs(spectral - sol.y.T).max())
    return OracleReport("ode_vs_spectral", point, 0.0, max_err, _DYNAMICS_TOL)


# ----------------------------------------------------------------------
# coverage bookkeeping
# ----------------------------------------------------------------------

def coverage_manifest() -> dict:
    """Which independent check guards which shipped closed form."""
    return {
        "f2d": ("quadrature_f2d", "check_bessel_identities"),
        "g2d": ("check_g2d_reconstruction", "check_pv_identities"),
        "kernel2d": ("quadrature_f2d", "check_g2d_reconstruction"),
        "dissipative3d": ("check_dissipative3d_quadrature",),
        "coherent3d": ("exact_point_values", "high_precision_recomputation"),
        "kernel3d": ("check_dissipative3d_quadrature", "exact_point_values"),
        "kernel1d": ("trig_identities", "exact_point_values"),
    }


def missing_coverage() -> list:
    """Closed forms without a registered oracle; must stay empty."""
    manifest = coverage_manifest()
    return [
        name
        for name in kernels.CLOSED_FORMS
        if not manifest.get(name)
    ]
