"""Collective single-excitation dynamics of coupled emitter arrays.

The pair couplings of a lattice assemble into a complex-symmetric matrix M
with diagonal Gamma/2 and off-diagonal Gamma (dissipative + 2i coherent)/2.
A single excitation with amplitudes b evolves under the non-Hermitian
generator db/dt = -conj(M) b (entrywise conjugate), solved spectrally as
b(t) = S exp(lambda t) S^{-1} b(0).

Rate conventions, fixed here once: collective rates and eigenmode decay
constants are quoted at the intensity level, so the single emitter anchors
to Gamma_N = Gamma and the eigen-decay constant of mode l is
Gamma_l = -2 Re(lambda_l).  The amplitude-level generator above carries the
corresponding factor Gamma/2 on its diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import GAMMA, PairGeometry, ReservoirKind, pair_coupling
from .lattice import AtomSites

__all__ = [
    "CouplingMatrix",
    "CollectiveRates",
    "Spectrum",
    "StateCoefficients",
    "TimeSeries",
    "DiagonalizationError",
    "ConditioningError",
    "CensoredLifetimeError",
    "assemble",
    "symmetric_rates",
    "diagonalize",
    "phase_imprinted_state",
    "symmetric_state",
    "evolve",
    "lifetime",
    "log_time_grid",
]


class DiagonalizationError(RuntimeError):
    """Eigendecomposition failed or left a residual above tolerance."""


class ConditioningError(RuntimeError):
    """Eigenvector matrix too ill-conditioned for spectral propagation."""


class CensoredLifetimeError(RuntimeError):
    """Intensity never dropped to 1/e within the sampled time grid."""


@dataclass(frozen=True)
class CouplingMatrix:
    """Complex-symmetric pair-coupling matrix in units of Gamma."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("coupling matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def symmetry_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.T).max())

    def dissipative_min_eigenvalue(self) -> float:
        """Smallest eigenvalue of Re(M); non-negative up to roundoff."""
        return float(np.linalg.eigvalsh(self.matrix.real).min())


@dataclass(frozen=True)
class CollectiveRates:
    """Intensity-level decay rate and shift of the symmetric state."""

    gamma_n: float
    delta_n: float


@dataclass(frozen=True)
class Spectrum:
    """Eigensystem of the generator -conj(M), sorted by decay constant.

    ``eigenvalues`` are the lambda_l in ascending order of
    Gamma_l = -2 Re(lambda_l), ties broken by ascending Im(lambda_l);
    ``modes`` holds right eigenvectors as columns with a deterministic
    phase (largest-magnitude component real positive).
    """

    eigenvalues: np.ndarray
    modes: np.ndarray
    inverse_modes: np.ndarray
    condition: float

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def decay_constants(self) -> np.ndarray:
        return -2.0 * self.eigenvalues.real


@dataclass(frozen=True)
class StateCoefficients:
    """Single-excitation amplitudes b_mu."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1:
            raise ValueError("amplitudes must be a vector")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class TimeSeries:
    """Survival amplitude of an initial state on a time grid.

    ``amplitude`` is A(t) = sum_l w_l exp(lambda_l t), the overlap of the
    evolved state with the initial one; ``weights`` are the per-mode w_l
    and ``norms`` the evolved state norm ||b(t)||.
    """

    times: np.ndarray
    amplitude: np.ndarray
    intensity: np.ndarray
    weights: np.ndarray
    norms: np.ndarray


# ----------------------------------------------------------------------
# assembly
# ----------------------------------------------------------------------

def assemble(
    sites: AtomSites, p_hat, kind: ReservoirKind = ReservoirKind.TWO_D
) -> CouplingMatrix:
    """Pairwise coupling matrix of a site set.

    Kernel evaluations are deduplicated over distinct displacement
    vectors, which collapses the cost on regular lattices from O(n^2) to
    O(n) kernel calls.  Coincident sites are rejected because the coherent
    coupling diverges there.
    """
    pos = np.asarray(sites.positions, dtype=float)
    n = pos.shape[0]
    p_hat = np.asarray(p_hat, dtype=float)
    disp = (pos[:, None, :] - pos[None, :, :]).reshape(-1, 2)
    uniq, inverse = np.unique(disp, axis=0, return_inverse=True)
    zero_rows = int(np.count_nonzero((disp == 0.0).all(axis=1)))
    if zero_rows != n:
        raise ValueError("coincident sites: off-diagonal coupling diverges")
    values = np.empty(len(uniq), dtype=complex)
    for idx, (dx, dz) in enumerate(uniq):
        xi = math.hypot(dx, dz)
        if xi == 0.0:
            values[idx] = 0.5 * GAMMA
            continue
        c = (p_hat[0] * dx + p_hat[1] * dz) / xi
        geom = PairGeometry(xi, min(max(c * c, 0.0), 1.0))
        pc = pair_coupling(kind, geom)
        values[idx] = 0.5 * GAMMA * (pc.dissipative + 2.0j * pc.coherent)
    return CouplingMatrix(values[inverse].reshape(n, n))


def symmetric_rates(m: CouplingMatrix, sites: AtomSites, k_hat) -> CollectiveRates:
    """Collective rate and shift of the drive-phased symmetric state.

    Gamma_N = (2/N) sum_{ij} e^{-i k.(r_i - r_j)} Re M_ij and
    Delta_N  = (2/N) sum_{i != j} of the imaginary parts, normalized so a
    single emitter gives Gamma_N = Gamma.
    """
    pos = sites.positions
    if m.n != len(pos):
        raise ValueError("matrix size does not match site count")
    v = np.exp(1j * (pos @ np.asarray(k_hat, dtype=float)))
    n = m.n
    quad_re = np.vdot(v, m.matrix.real @ v)
    imag_part = m.matrix.imag.copy()
    np.fill_diagonal(imag_part, 0.0)
    quad_im = np.vdot(v, imag_part @ v)
    scale = max(abs(quad_re), abs(quad_im), 1.0)
    residue = max(abs(quad_re.imag), abs(quad_im.imag))
    if residue > 1e-10 * scale:
        raise ArithmeticError(
            f"collective rates acquired an imaginary residue {residue:.2e}"
        )
    return CollectiveRates(2.0 / n * quad_re.real, 2.0 / n * quad_im.real)


# ----------------------------------------------------------------------
# spectral decomposition and propagation
# ----------------------------------------------------------------------

def diagonalize(m: CouplingMatrix) -> Spectrum:
    """Eigensystem of the evolution generator -conj(M)."""
    generator = -np.conj(m.matrix)
    try:
        lam, s = np.linalg.eig(generator)
    except np.linalg.LinAlgError as exc:
        raise DiagonalizationError(f"eigensolver failed: {exc}") from exc
    order = np.lexsort((lam.imag, -2.0 * lam.real))
    lam = lam[order]
    s = s[:, order]
    anchor = s[np.abs(s).argmax(axis=0), np.arange(s.shape[1])]
    s = s * (np.abs(anchor) / anchor)
    s_inv = np.linalg.inv(s)
    m_norm = np.linalg.norm(m.matrix)
    residual = np.linalg.norm(generator @ s - s * lam)
    if residual > 1e-9 * max(m_norm, 1e-300):
        raise DiagonalizationError(
            f"eigendecomposition residual {residual:.3e} exceeds 1e-9 * ||M|| = "
            f"{1e-9 * m_norm:.3e}"
        )
    return Spectrum(lam, s, s_inv, float(np.linalg.cond(s)))


def phase_imprinted_state(sites: AtomSites, k_hat, m: int) -> StateCoefficients:
    """Drive-phased state with winding number m.

    b_mu = N^{-1/2} e^{i k . r_mu} e^{i 2 pi m mu / N} with mu = 0..N-1 in
    lattice enumeration order.  m = N (equivalently m = 0) is the
    symmetric state; the set over m = 1..N is orthonormal.
    """
    n = sites.n
    if not 0 <= m <= n:
        raise ValueError(f"winding number m must lie in [0, {n}], got {m}")
    mu = np.arange(n)
    phases = sites.positions @ np.asarray(k_hat, dtype=float) + 2.0 * math.pi * m * mu / n
    return StateCoefficients(np.exp(1j * phases) / math.sqrt(n))


def symmetric_state(sites: AtomSites, k_hat) -> StateCoefficients:
    """Uniform-amplitude state with drive phases only (m = N)."""
    return phase_imprinted_state(sites, k_hat, sites.n)


def evolve(
    spectrum: Spectrum,
    initial: StateCoefficients,
    times,
    condition_limit: float = 1e12,
) -> TimeSeries:
    """Propagate an initial state spectrally and record its survival.

    Weights are w_l = (h^dag S)_l (S^{-1} h)_l for the initial amplitudes
    h, so A(0) = sum_l w_l = |h|^2 = 1 for unit-norm states.  Times are in
    units of 1/Gamma, sorted and non-negative.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("times must be a non-empty 1-d grid")
    if np.any(times < 0.0) or np.any(np.diff(times) < 0.0):
        raise ValueError("times must be sorted and non-negative")
    if spectrum.condition > condition_limit:
        raise ConditioningError(
            f"eigenvector condition number {spectrum.condition:.3e} exceeds "
            f"{condition_limit:.1e}; spectral propagation unreliable"
        )
    h = initial.amplitudes
    if h.shape[0] != spectrum.n:
        raise ValueError("state dimension does not match spectrum")
    coeff = spectrum.inverse_modes @ h
    weights = (h.conj() @ spectrum.modes) * coeff
    # exp underflows harmlessly to 0 for strongly decaying modes
    with np.errstate(under="ignore"):
        propagators = np.exp(np.outer(times, spectrum.eigenvalues))
    amplitude = propagators @ weights
    bt = propagators * coeff
    norms = np.linalg.norm(bt @ spectrum.modes.T, axis=1)
    return TimeSeries(times, amplitude, np.abs(amplitude) ** 2, weights, norms)


def lifetime(series: TimeSeries) -> float:
    """First time the survival intensity drops to 1/e, linearly interpolated.

    A(0) = 1 is prepended as the exact anchor when the grid starts after
    t = 0.  Raises :class:`CensoredLifetimeError` when the intensity stays
    above 1/e throughout the grid.
    """
    target = math.exp(-1.0)
    t = series.times
    intensity = series.intensity
    if t[0] > 0.0:
        t = np.concatenate([[0.0], t])
        intensity = np.concatenate([[1.0], intensity])
    below = np.nonzero(intensity <= target)[0]
    if len(below) == 0:
        raise CensoredLifetimeError(
            f"intensity still {intensity[-1]:.4f} at t = {t[-1]:g}"
        )
    i = int(below[0])
    if i == 0:
        return float(t[0])
    frac = (target - intensity[i - 1]) / (intensity[i] - intensity[i - 1])
    return float(t[i - 1] + frac * (t[i] - t[i - 1]))


def log_time_grid(start: float = 1e-2, stop: float = 1e3, num: int = 2000) -> np.ndarray:
    """Logarithmic default grid resolving both the early drop and late tails."""
    if not (0.0 < start < stop) or num < 2:
        raise ValueError("need 0 < start < stop and num >= 2")
    return np.logspace(math.log10(start), math.log10(stop), num)
