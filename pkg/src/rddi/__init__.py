"""Collective spontaneous emission of two-level emitter arrays.

Emitters coupled through a shared 1D, 2D or 3D photonic reservoir acquire
pairwise dissipative and coherent couplings; in the single-excitation
sector the array then decays through collective eigenmodes ranging from
superradiant to strongly subradiant.  This package evaluates the coupling
kernels from scratch (Bessel and Struve functions included), assembles and
diagonalizes the coupling matrix, and propagates drive-phased and
phase-imprinted states, with an independent oracle suite verifying every
closed form.
"""

from .collective import (
    CollectiveRates,
    CouplingMatrix,
    Spectrum,
    StateCoefficients,
    TimeSeries,
    assemble,
    diagonalize,
    evolve,
    lifetime,
    log_time_grid,
    phase_imprinted_state,
    symmetric_rates,
    symmetric_state,
)
from .kernels import (
    GAMMA,
    PairCoupling,
    PairGeometry,
    ReservoirKind,
    f2d,
    g2d,
    kernel1d,
    kernel2d,
    kernel3d,
    quadrature_f2d,
)
from .lattice import AtomSites, IndexOrder, LatticeSpec, build, pair_geometry
from .specfun import QuadratureSpec, bessel_j, bessel_y, integrate, struve_h

__version__ = "0.1.0"
