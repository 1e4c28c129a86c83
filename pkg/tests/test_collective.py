"""Coupling-matrix assembly, spectral decomposition and state evolution."""

import math

import numpy as np
import pytest

from rddi.collective import (
    CensoredLifetimeError,
    ConditioningError,
    CouplingMatrix,
    assemble,
    diagonalize,
    evolve,
    lifetime,
    log_time_grid,
    phase_imprinted_state,
    symmetric_rates,
    symmetric_state,
)
from rddi.kernels import PairGeometry, ReservoirKind, f2d, g2d
from rddi.lattice import AtomSites, LatticeSpec, build

XHAT = np.array([1.0, 0.0])
ZHAT = np.array([0.0, 1.0])


def lattice(nx, nz, s):
    return build(LatticeSpec(nx, nz, s))


class TestAssemble:
    def test_single_emitter(self):
        m = assemble(lattice(1, 1, 1.0), XHAT)
        assert m.matrix.shape == (1, 1)
        assert m.matrix[0, 0] == 0.5 + 0.0j

    def test_pair_on_x_axis(self):
        sites = AtomSites.from_positions([[0.0, 0.0], [1.0, 0.0]])
        m = assemble(sites, XHAT)
        geom = PairGeometry(1.0, 1.0)
        expect = 0.5 * (f2d(geom) + 1j * g2d(geom))
        assert m.matrix[0, 1] == pytest.approx(expect, rel=1e-14)
        assert m.matrix[1, 0] == m.matrix[0, 1]

    @pytest.mark.parametrize("kind", [ReservoirKind.TWO_D, ReservoirKind.THREE_D])
    def test_complex_symmetry_and_real_diagonal(self, kind):
        m = assemble(lattice(4, 3, 0.8), XHAT, kind)
        assert m.symmetry_defect() == 0.0
        assert np.all(np.diag(m.matrix) == 0.5)

    def test_dissipative_part_positive_semidefinite(self):
        for s in (0.5, 1.0, 5.0):
            m = assemble(lattice(5, 4, s), XHAT)
            assert m.dissipative_min_eigenvalue() >= -1e-10 * m.n

    def test_coincident_sites_rejected(self):
        # AtomSites refuses duplicates at construction, so sneak them past
        # the frozen dataclass to exercise assemble's own guard
        sites = AtomSites.from_positions([[0.0, 0.0], [1.0, 0.0]])
        object.__setattr__(sites, "positions", np.zeros((2, 2)))
        with pytest.raises(ValueError):
            assemble(sites, XHAT)


class TestSymmetricRates:
    def test_single_emitter_anchor(self):
        sites = lattice(1, 1, 1.0)
        rates = symmetric_rates(assemble(sites, XHAT), sites, ZHAT)
        assert rates.gamma_n == pytest.approx(1.0, abs=1e-14)
        assert rates.delta_n == 0.0

    def test_relabeling_invariance(self):
        sites = lattice(3, 3, 1.3)
        m = assemble(sites, XHAT)
        base = symmetric_rates(m, sites, ZHAT)
        rng = np.random.default_rng(5)
        perm = rng.permutation(sites.n)
        shuffled = AtomSites.from_positions(sites.positions[perm])
        m2 = assemble(shuffled, XHAT)
        rates = symmetric_rates(m2, shuffled, ZHAT)
        assert rates.gamma_n == pytest.approx(base.gamma_n, abs=1e-11)
        assert rates.delta_n == pytest.approx(base.delta_n, abs=1e-11)

    def test_gamma_nonnegative(self):
        for s in (1.0, 5.0, 40.0):
            sites = lattice(6, 1, s)
            rates = symmetric_rates(assemble(sites, XHAT), sites, ZHAT)
            assert rates.gamma_n >= 0.0

    def test_size_mismatch_rejected(self):
        sites = lattice(2, 2, 1.0)
        m = assemble(sites, XHAT)
        with pytest.raises(ValueError):
            symmetric_rates(m, lattice(3, 1, 1.0), ZHAT)


class TestDiagonalize:
    def test_single_emitter(self):
        spec = diagonalize(assemble(lattice(1, 1, 1.0), XHAT))
        assert spec.eigenvalues[0] == pytest.approx(-0.5)
        assert spec.decay_constants[0] == pytest.approx(1.0)

    def test_generator_is_entrywise_conjugate(self):
        sites = AtomSites.from_positions([[0.0, 0.0], [1.0, 0.0]])
        m = assemble(sites, XHAT)
        spec = diagonalize(m)
        geom = PairGeometry(1.0, 1.0)
        j = 0.5 * (f2d(geom) - 1j * g2d(geom))  # conjugated pair coupling
        expected = sorted([-0.5 - j, -0.5 + j], key=lambda z: -z.real)
        assert spec.eigenvalues[0] == pytest.approx(expected[0], rel=1e-12)
        assert spec.eigenvalues[1] == pytest.approx(expected[1], rel=1e-12)

    def test_residual_and_trace(self):
        m = assemble(lattice(5, 5, 1.0), XHAT)
        spec = diagonalize(m)
        gen = -np.conj(m.matrix)
        resid = np.linalg.norm(gen @ spec.modes - spec.modes * spec.eigenvalues)
        assert resid <= 1e-9 * np.linalg.norm(m.matrix)
        assert spec.eigenvalues.sum() == pytest.approx(
            -np.conj(m.matrix).trace(), abs=1e-10 * m.n
        )

    def test_sorted_ascending_by_decay(self):
        spec = diagonalize(assemble(lattice(4, 4, 0.7), XHAT))
        assert np.all(np.diff(spec.decay_constants) >= -1e-12)

    def test_decay_constants_nonnegative(self):
        for s in (0.6, 2.0, 10.0):
            spec = diagonalize(assemble(lattice(5, 4, s), XHAT))
            assert spec.eigenvalues.real.max() <= 1e-10

    def test_deterministic_phase_fixing(self):
        m = assemble(lattice(3, 4, 1.1), XHAT)
        a = diagonalize(m)
        b = diagonalize(m)
        assert np.array_equal(a.modes, b.modes)
        cols = np.abs(a.modes).argmax(axis=0)
        anchors = a.modes[cols, np.arange(a.n)]
        assert np.all(anchors.real > 0.0)
        assert np.all(np.abs(anchors.imag) <= 1e-12 * np.abs(anchors))


class TestPhaseImprintedStates:
    def test_zero_winding_is_symmetric_state(self):
        sites = lattice(3, 3, 1.0)
        a = phase_imprinted_state(sites, ZHAT, 0)
        b = phase_imprinted_state(sites, ZHAT, sites.n)
        c = symmetric_state(sites, ZHAT)
        assert np.allclose(a.amplitudes, b.amplitudes, atol=1e-15)
        assert np.allclose(a.amplitudes, c.amplitudes, atol=1e-15)
        drive = np.exp(1j * sites.positions @ ZHAT) / math.sqrt(sites.n)
        assert np.allclose(a.amplitudes, drive, atol=1e-15)

    def test_orthonormal_basis(self):
        sites = lattice(4, 4, 1.7)
        basis = np.column_stack(
            [phase_imprinted_state(sites, ZHAT, m).amplitudes for m in range(1, 17)]
        )
        gram = basis.conj().T @ basis
        assert np.abs(gram - np.eye(16)).max() < 1e-12

    def test_half_winding_alternates_sign(self):
        sites = lattice(4, 1, 1.0)
        state = phase_imprinted_state(sites, ZHAT, 2)  # N = 4, m = 2
        drive = np.exp(1j * sites.positions @ ZHAT)
        winding = state.amplitudes * math.sqrt(4) / drive
        assert np.allclose(winding, [1, -1, 1, -1], atol=1e-14)

    def test_unit_norm(self):
        sites = lattice(5, 2, 0.9)
        for m in (0, 3, 10):
            assert phase_imprinted_state(sites, XHAT, m).norm == pytest.approx(1.0)

    def test_out_of_range_winding(self):
        sites = lattice(2, 2, 1.0)
        with pytest.raises(ValueError):
            phase_imprinted_state(sites, ZHAT, 5)
        with pytest.raises(ValueError):
            phase_imprinted_state(sites, ZHAT, -1)


class TestEvolve:
    def test_weights_sum_to_one(self):
        sites = lattice(4, 3, 1.2)
        spec = diagonalize(assemble(sites, XHAT))
        for m in (0, 2, 7):
            state = phase_imprinted_state(sites, ZHAT, m)
            series = evolve(spec, state, [0.0, 0.5])
            assert series.weights.sum() == pytest.approx(1.0, abs=1e-10)
            assert series.amplitude[0] == pytest.approx(1.0, abs=1e-10)

    def test_single_emitter_amplitude(self):
        sites = lattice(1, 1, 1.0)
        spec = diagonalize(assemble(sites, XHAT))
        state = symmetric_state(sites, ZHAT)
        ts = np.linspace(0.0, 5.0, 11)
        series = evolve(spec, state, ts)
        assert np.allclose(series.amplitude, np.exp(-0.5 * ts), atol=1e-12)
        assert np.allclose(series.intensity, np.exp(-ts), atol=1e-12)

    def test_norm_never_increases(self):
        sites = lattice(3, 3, 0.8)
        spec = diagonalize(assemble(sites, XHAT))
        state = phase_imprinted_state(sites, ZHAT, 4)
        series = evolve(spec, state, log_time_grid(1e-2, 1e2, 400))
        assert np.all(np.diff(series.norms) <= 1e-12)

    def test_trace_conservation(self):
        for s in (0.7, 1.5):
            m = assemble(lattice(4, 4, s), XHAT)
            spec = diagonalize(m)
            assert spec.decay_constants.sum() == pytest.approx(m.n, abs=1e-8 * m.n)

    def test_symmetric_state_early_slope_matches_collective_rate(self):
        sites = lattice(4, 4, 2.0)
        m = assemble(sites, XHAT)
        rates = symmetric_rates(m, sites, ZHAT)
        spec = diagonalize(m)
        state = symmetric_state(sites, ZHAT)
        ts = np.linspace(0.0, 0.1 / rates.gamma_n, 50)
        series = evolve(spec, state, ts)
        slope = np.polyfit(ts, np.log(series.intensity), 1)[0]
        assert slope == pytest.approx(-rates.gamma_n, rel=0.05)

    def test_condition_limit_enforced(self):
        sites = lattice(3, 3, 1.0)
        spec = diagonalize(assemble(sites, XHAT))
        state = symmetric_state(sites, ZHAT)
        with pytest.raises(ConditioningError):
            evolve(spec, state, [0.0, 1.0], condition_limit=1.0)

    def test_time_grid_validated(self):
        sites = lattice(2, 2, 1.0)
        spec = diagonalize(assemble(sites, XHAT))
        state = symmetric_state(sites, ZHAT)
        with pytest.raises(ValueError):
            evolve(spec, state, [1.0, 0.5])
        with pytest.raises(ValueError):
            evolve(spec, state, [-1.0, 0.5])


class TestLifetime:
    def test_single_emitter(self):
        sites = lattice(1, 1, 1.0)
        spec = diagonalize(assemble(sites, XHAT))
        series = evolve(spec, symmetric_state(sites, ZHAT), log_time_grid())
        assert lifetime(series) == pytest.approx(1.0, abs=1e-4)

    def test_censored_reported(self):
        sites = lattice(1, 1, 1.0)
        spec = diagonalize(assemble(sites, XHAT))
        series = evolve(spec, symmetric_state(sites, ZHAT), np.linspace(0.0, 0.2, 10))
        with pytest.raises(CensoredLifetimeError):
            lifetime(series)


def test_coupling_matrix_validation():
    with pytest.raises(ValueError):
        CouplingMatrix(np.zeros((2, 3)))


def test_log_time_grid_validation():
    grid = log_time_grid()
    assert len(grid) == 2000
    assert grid[0] == pytest.approx(1e-2) and grid[-1] == pytest.approx(1e3)
    with pytest.raises(ValueError):
        log_time_grid(1.0, 0.5)
