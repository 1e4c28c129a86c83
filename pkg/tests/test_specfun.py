"""Special-function and quadrature checks against independent references.

scipy.special serves as an independent cross-check implementation here;
the package itself never imports it for function evaluation.
"""

import math

import numpy as np
import pytest
from scipy import special as sp

from rddi.specfun import (
    QuadratureError,
    QuadratureSpec,
    bessel_j,
    bessel_y,
    integrate,
    struve_h,
)

TIGHT = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13)

EULER_GAMMA = 0.5772156649015329

# frozen from bisection oracles, reproduced live in the tests below
J0_FIRST_ZERO = 2.404825557695773
Y0_FIRST_ZERO = 0.8935769662791675


def j0_by_quadrature(x):
    # independent route: J_0(x) = (1/pi) int_0^pi cos(x sin t) dt
    return integrate(lambda t: math.cos(x * math.sin(t)), 0.0, math.pi, TIGHT) / math.pi


def bisect(fun, lo, hi, iters=60):
    flo = fun(lo)
    assert flo * fun(hi) < 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * fun(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestBesselJ:
    def test_values_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(1, 0.0) == 0.0
        assert bessel_j(2, 0.0) == 0.0

    def test_first_zero_of_j0(self):
        root = bisect(j0_by_quadrature, 2.0, 3.0)
        assert root == pytest.approx(J0_FIRST_ZERO, abs=1e-12)
        assert abs(bessel_j(0, J0_FIRST_ZERO)) < 1e-10

    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_accuracy_against_scipy(self, order):
        rng = np.random.default_rng(17 + order)
        xs = np.concatenate(
            [
                rng.uniform(1e-8, 1.0, 150),
                rng.uniform(1.0, 30.0, 300),
                rng.uniform(30.0, 100.0, 150),
                [0.5, 24.999, 25.0, 25.001, 50.0, 100.0],
            ]
        )
        err = max(abs(bessel_j(order, float(x)) - sp.jv(order, float(x))) for x in xs)
        assert err < 1e-12

    def test_negative_argument_parity(self):
        for x in (0.7, 3.3, 28.0):
            assert bessel_j(0, -x) == bessel_j(0, x)
            assert bessel_j(1, -x) == -bessel_j(1, x)
            assert bessel_j(2, -x) == bessel_j(2, x)

    def test_rejections(self):
        with pytest.raises(ValueError):
            bessel_j(3, 1.0)
        with pytest.raises(ValueError):
            bessel_j(0, math.inf)


class TestBesselY:
    def test_domain(self):
        for bad in (0.0, -1.0, math.nan):
            with pytest.raises(ValueError):
                bessel_y(0, bad)
        with pytest.raises(ValueError):
            bessel_y(3, 1.0)

    def test_small_x_log_asymptote(self):
        # Y_0 -> (2/pi)(ln(x/2) + euler_gamma); at x = 1e-4 the constant
        # still contributes ~6%, so the leading-log ratio is loose while
        # the two-term form is tight.
        x = 1e-4
        leading = 2.0 / math.pi * math.log(x / 2.0)
        full = 2.0 / math.pi * (math.log(x / 2.0) + EULER_GAMMA)
        assert bessel_y(0, x) / leading == pytest.approx(1.0, abs=0.10)
        assert bessel_y(0, x) == pytest.approx(full, rel=1e-7)

    def test_first_zero_of_y0(self):
        root = bisect(lambda x: sp.y0(x), 0.5, 1.5)
        assert root == pytest.approx(Y0_FIRST_ZERO, abs=1e-12)
        assert abs(bessel_y(0, Y0_FIRST_ZERO)) < 1e-8

    def test_recurrence_at_one(self):
        lhs = bessel_y(2, 1.0)
        rhs = 2.0 / 1.0 * bessel_y(1, 1.0) - bessel_y(0, 1.0)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    @pytest.mark.parametrize("order", [0, 1, 2])
    def test_accuracy_against_scipy(self, order):
        rng = np.random.default_rng(41 + order)
        xs = np.concatenate(
            [
                rng.uniform(1e-6, 1.0, 150),
                rng.uniform(1.0, 30.0, 300),
                rng.uniform(30.0, 100.0, 150),
                [1e-6, 0.1, 24.999, 25.001, 100.0],
            ]
        )
        for x in xs:
            mine = bessel_y(order, float(x))
            ref = sp.yn(order, float(x))
            if abs(ref) < 1e4:
                assert abs(mine - ref) < 1e-10, f"Y_{order}({x})"
            else:
                # representation-limited near the singularity
                assert abs(mine - ref) < 5e-14 * abs(ref), f"Y_{order}({x})"


class TestCrossFamilyIdentities:
    def test_wronskian(self):
        # J_1 Y_0 - J_0 Y_1 = 2/(pi x), sampled densely over the working range
        xs = np.logspace(math.log10(0.1), 2.0, 1200)
        for x in xs:
            x = float(x)
            lhs = bessel_j(1, x) * bessel_y(0, x) - bessel_j(0, x) * bessel_y(1, x)
            assert abs(lhs - 2.0 / (math.pi * x)) < 1e-10

    @pytest.mark.parametrize("family", ["j", "y"])
    def test_three_term_recurrence(self, family):
        f = bessel_j if family == "j" else bessel_y
        xs = np.logspace(math.log10(0.1), 2.0, 1001)
        for x in xs:
            x = float(x)
            assert abs(f(2, x) - (2.0 / x * f(1, x) - f(0, x))) < 1e-10


class TestStruve:
    def test_values_at_zero(self):
        assert struve_h(0, 0.0) == 0.0
        assert struve_h(1, 0.0) == 0.0

    def test_integral_representation(self):
        # H_0(x) = (2/pi) int_0^{pi/2} sin(x cos t) dt
        x = 1.0
        quad = 2.0 / math.pi * integrate(
            lambda t: math.sin(x * math.cos(t)), 0.0, math.pi / 2.0, TIGHT
        )
        assert struve_h(0, x) == pytest.approx(quad, abs=1e-8)

    @pytest.mark.parametrize("order", [0, 1])
    def test_accuracy_against_scipy(self, order):
        rng = np.random.default_rng(7 + order)
        xs = np.concatenate(
            [rng.uniform(1e-6, 25.0, 300), rng.uniform(25.0, 50.0, 150), [24.999, 25.001]]
        )
        err = max(abs(struve_h(order, float(x)) - sp.struve(order, float(x))) for x in xs)
        assert err < 1e-8

    def test_rejections(self):
        with pytest.raises(ValueError):
            struve_h(2, 1.0)
        with pytest.raises(ValueError):
            struve_h(0, -0.5)


class TestIntegrate:
    def test_complex_exponential_angular_moment(self):
        # int_0^{2pi} e^{i 3 cos t} dt = 2 pi J_0(3), via two real integrals
        re = integrate(lambda t: math.cos(3.0 * math.cos(t)), 0.0, 2.0 * math.pi, TIGHT)
        im = integrate(lambda t: math.sin(3.0 * math.cos(t)), 0.0, 2.0 * math.pi, TIGHT)
        assert re == pytest.approx(2.0 * math.pi * bessel_j(0, 3.0), abs=1e-9)
        assert abs(im) < 1e-10

    def test_odd_angular_moment_vanishes(self):
        val = integrate(
            lambda t: math.sin(t) * math.cos(t) * math.cos(2.0 * math.cos(t)),
            0.0,
            2.0 * math.pi,
            TIGHT,
        )
        assert abs(val) < 1e-10

    def test_semi_infinite_principal_value(self):
        # PV int_0^inf J_0(a)/(a-2) da = -(pi/2)[Y_0(2) + H_0(2)]
        spec = QuadratureSpec(abs_tol=1e-11, rel_tol=1e-11, principal_value=2.0)
        val = integrate(lambda a: bessel_j(0, a) / (a - 2.0), 0.0, math.inf, spec)
        closed = -(math.pi / 2.0) * (bessel_y(0, 2.0) + struve_h(0, 2.0))
        assert val == pytest.approx(closed, abs=1e-6)

    def test_removable_singularity_matches_plain_integral(self):
        def f(x):
            return math.sin(x - 1.0) / (x - 1.0) if x != 1.0 else 1.0

        plain = integrate(f, 0.0, 3.0, TIGHT)
        pv = integrate(f, 0.0, 3.0, QuadratureSpec(principal_value=1.0))
        assert pv == pytest.approx(plain, abs=1e-9)

    def test_non_convergence_raises(self):
        spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=3)
        with pytest.raises(QuadratureError):
            integrate(lambda x: abs(x - math.sqrt(0.5)) ** -0.5, 0.0, 1.0, spec)

    def test_singularity_must_be_interior(self):
        spec = QuadratureSpec(principal_value=5.0)
        with pytest.raises(ValueError):
            integrate(lambda x: x, 0.0, 1.0, spec)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)
        with pytest.raises(ValueError):
            QuadratureSpec(tail_cutoff=-1.0)
