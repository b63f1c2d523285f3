# coding=utf-8
"""
History states on clock ⊗ system and the constraint operator ``𝕁 = Ω̂⊗1 + 1⊗H``.

A :class:`HistoryState` stores one *unweighted* system state per clock point, row ``k`` belonging to ``t_k``. The
quadrature weight ``Δt`` enters only in :meth:`HistoryState.inner`, so conditioning is a plain row extraction.
The history of a normalised ``ψ0`` is kept raw (``norm² = L``); :meth:`HistoryState.unit` derives the normalised
view where one is needed.

The ω-transform uses kernel ``e^{-iωt}``: a system eigenfrequency ``ω_k`` shows up as a line at ``ω = -ω_k``.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from core import grid_clock
from core.exceptions import DimensionMismatch, GridError, NoSupportError
from core.system import SystemState, propagate

SUPPORT_THRESHOLD = 1e-14
DENSE_MAX_POINTS = 32
DENSE_MAX_DIM = 4

logger = logging.getLogger('numerics')


@dataclass(frozen=True)
class HistoryState:
    """
    :ivar grid: Clock grid.
    :vartype grid: core.grid_clock.TimeGrid
    :ivar amplitudes: ``N×d`` array, row ``k`` is the system state at ``t_k``.
    :vartype amplitudes: numpy.ndarray
    :ivar normalization: ``'raw'`` or ``'unit'``.
    :vartype normalization: str
    """
    grid: grid_clock.TimeGrid
    amplitudes: np.ndarray
    normalization: str = 'raw'

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 2 or amplitudes.shape[0] != self.grid.n_points:
            raise DimensionMismatch("history amplitudes need shape ({}, d), got {}"
                                    .format(self.grid.n_points, amplitudes.shape))
        if self.normalization not in ('raw', 'unit'):
            raise ValueError("normalization must be 'raw' or 'unit'")
        amplitudes.flags.writeable = False
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def sys_dim(self):
        return self.amplitudes.shape[1]

    def inner(self, other):
        """``⟨⟨self|other⟩⟩ = Δt·Σ_k ⟨row_k|row'_k⟩``."""
        check_compatible(self, other)
        return complex(self.grid.dt * np.vdot(self.amplitudes, other.amplitudes))

    def norm(self):
        return float(np.sqrt(self.grid.dt) * np.linalg.norm(self.amplitudes))

    def row_norms(self):
        return np.linalg.norm(self.amplitudes, axis=1)

    def unit(self):
        """Normalised copy, tagged ``'unit'``."""
        return HistoryState(self.grid, self.amplitudes / self.norm(), 'unit')

    def with_amplitudes(self, amplitudes, normalization='raw'):
        return HistoryState(self.grid, amplitudes, normalization)


def check_compatible(a, b):
    if a.grid != b.grid:
        raise DimensionMismatch("history states live on different grids")
    if a.sys_dim != b.sys_dim:
        raise DimensionMismatch("history states have system dimensions {} and {}".format(a.sys_dim, b.sys_dim))


def random_history(grid, dim, seed):
    """Seeded complex Gaussian history, unit-normalised. Test and validation fodder."""
    rng = np.random.default_rng(seed)
    shape = (grid.n_points, dim)
    return HistoryState(grid, rng.normal(size=shape) + 1j * rng.normal(size=shape)).unit()


def build_history(grid, h, psi0):
    """
    ``|Ψ⟩⟩ = Σ_k |t_k⟩ e^{-iHt_k}|ψ0⟩``, raw.

    :type grid: core.grid_clock.TimeGrid
    :type h: core.system.Hamiltonian
    :type psi0: core.system.SystemState
    :rtype: HistoryState
    :raise DimensionMismatch: if ``psi0`` and ``h`` disagree on the dimension.
    """
    return HistoryState(grid, propagate(h, psi0, grid.times), 'raw')


def apply_time(psi):
    """``T̂⊗1``."""
    return psi.with_amplitudes(psi.grid.times[:, None] * psi.amplitudes)


def apply_hamiltonian(h, psi):
    """``1⊗H``, row by row."""
    if h.dim != psi.sys_dim:
        raise DimensionMismatch("Hamiltonian has dimension {} but the history has {}".format(h.dim, psi.sys_dim))
    return psi.with_amplitudes(h.apply(psi.amplitudes))


def commutator_residual(psi, h):
    """
    ``‖[T̂⊗1, 1⊗H]ψ‖``. The two factors act on different tensor slots, so this is zero up to roundoff.

    :rtype: float
    """
    th = apply_time(apply_hamiltonian(h, psi))
    ht = apply_hamiltonian(h, apply_time(psi))
    return th.with_amplitudes(th.amplitudes - ht.amplitudes).norm()


@dataclass(frozen=True)
class ConstraintOperator:
    """
    Matrix-free ``𝕁 = Ω̂⊗1 + 1⊗H``: a Fourier multiplier down each system column plus ``H`` across each row.

    :ivar grid: Clock grid.
    :vartype grid: core.grid_clock.TimeGrid
    :ivar hamiltonian: System Hamiltonian.
    :vartype hamiltonian: core.system.Hamiltonian
    """
    grid: grid_clock.TimeGrid
    hamiltonian: object

    def _check(self, psi):
        if psi.grid != self.grid:
            raise DimensionMismatch("history state is not on the operator's grid")
        if psi.sys_dim != self.hamiltonian.dim:
            raise DimensionMismatch("history has system dimension {} but H has {}"
                                    .format(psi.sys_dim, self.hamiltonian.dim))

    def apply_array(self, amplitudes):
        return grid_clock.frequency_multiply(self.grid, amplitudes) + self.hamiltonian.apply(amplitudes)

    def apply(self, psi):
        """
        :type psi: HistoryState
        :rtype: HistoryState
        """
        self._check(psi)
        return psi.with_amplitudes(self.apply_array(psi.amplitudes))

    def dense(self):
        """
        The ``(N·d)×(N·d)`` matrix ``Ω ⊗ 1 + 1 ⊗ H`` in row-major (clock-major) flattening, with ``Ω`` from the
        explicit-sum oracle. Only for ``N <= 32`` and ``d <= 4``.

        :rtype: numpy.ndarray
        :raise GridError: above those limits.
        """
        if self.grid.n_points > DENSE_MAX_POINTS or self.hamiltonian.dim > DENSE_MAX_DIM:
            raise GridError("dense constraint limited to N <= {} and d <= {}".format(DENSE_MAX_POINTS, DENSE_MAX_DIM))
        omega = grid_clock.dense_frequency_operator(self.grid)
        d = self.hamiltonian.dim
        return np.kron(omega, np.eye(d)) + np.kron(np.eye(self.grid.n_points), self.hamiltonian.matrix)


def apply_constraint(j, psi):
    """``(Ω̂⊗1)ψ + (1⊗H)ψ`` on the periodic grid."""
    return j.apply(psi)


@dataclass(frozen=True)
class ConditionedState:
    """
    :ivar state: Unit system state given the clock reading.
    :ivar weight: Row norm before renormalisation.
    :ivar time: The clock reading ``t_k``.
    """
    state: SystemState
    weight: float
    time: float


def condition(psi, k):
    """
    Projects onto clock reading ``t_k``: row ``k``, renormalised.

    :type psi: HistoryState
    :param k: Grid index.
    :type k: int
    :rtype: ConditionedState
    :raise GridError: for an index outside the grid.
    :raise NoSupportError: when the row norm is below 1e-14.
    """
    if not 0 <= k < psi.grid.n_points:
        raise GridError("clock index {} outside 0..{}".format(k, psi.grid.n_points - 1))
    row = psi.amplitudes[k]
    weight = float(np.linalg.norm(row))
    if weight < SUPPORT_THRESHOLD:
        raise NoSupportError("no support at this clock reading (t = {:g})".format(psi.grid.times[k]))
    return ConditionedState(SystemState(row / weight), weight, float(psi.grid.times[k]))


def condition_at(psi, t):
    """:func:`condition` at the grid point nearest to ``t``."""
    return condition(psi, psi.grid.index_of(t))


def _interior_rows(psi, h, edge_fraction):
    """Row norms of ``(-iD_t + H)(wψ)`` with ``w`` the interior taper, and the interior mask."""
    taper = grid_clock.interior_taper(psi.grid, edge_fraction)
    residual = ConstraintOperator(psi.grid, h).apply_array(taper[:, None] * psi.amplitudes)
    return np.linalg.norm(residual, axis=1), grid_clock.interior_mask(psi.grid, edge_fraction)


def schrodinger_residual(psi, h, edge_fraction=grid_clock.EDGE_FRACTION, relative=False):
    """
    Largest interior value of ``r_k = ‖(-iD_t + H)|ψ(t_k)⟩‖`` with ``D_t`` the spectral derivative.

    The rows are multiplied by a smooth taper that is one on the interior and vanishes at the window edge before
    differentiating, so the periodic wrap of a non-commensurate history does not pollute the interior.

    :param relative: Divide each ``r_k`` by the row norm.
    :rtype: float
    """
    if h.dim != psi.sys_dim:
        raise DimensionMismatch("Hamiltonian has dimension {} but the history has {}".format(h.dim, psi.sys_dim))
    rows, interior = _interior_rows(psi, h, edge_fraction)
    if relative:
        rows = rows / np.maximum(psi.row_norms(), SUPPORT_THRESHOLD)
    return float(rows[interior].max())


@dataclass(frozen=True)
class ConstraintResidual:
    """
    :ivar periodic: ``‖𝕁ψ‖/‖ψ‖`` on the full periodic grid.
    :ivar interior: Quadrature norm of the tapered residual over the interior, relative to the interior norm.
    """
    periodic: float
    interior: float


def constraint_residual(j, psi, edge_fraction=grid_clock.EDGE_FRACTION):
    """
    :type j: ConstraintOperator
    :type psi: HistoryState
    :rtype: ConstraintResidual
    """
    periodic = j.apply(psi).norm() / psi.norm()
    rows, interior = _interior_rows(psi, j.hamiltonian, edge_fraction)
    interior_norm = np.linalg.norm(psi.row_norms()[interior])
    return ConstraintResidual(float(periodic), float(np.linalg.norm(rows[interior]) / interior_norm))


@dataclass(frozen=True)
class ConvergencePoint:
    """One grid of an N-doubling sweep. ``order`` is the observed rate against the previous point."""
    n_points: int
    periodic: float
    interior: float
    order: Optional[float]


def constraint_convergence(h, psi0, window, n_values, edge_fraction=grid_clock.EDGE_FRACTION):
    """
    Constraint residual of ``build_history`` at fixed window over increasing ``N``.

    :param n_values: Increasing point counts.
    :type n_values: list[int]
    :rtype: list[ConvergencePoint]
    """
    points: List[ConvergencePoint] = []
    for n_points in n_values:
        grid = grid_clock.make_grid(n_points, window)
        residual = constraint_residual(ConstraintOperator(grid, h), build_history(grid, h, psi0), edge_fraction)
        order = None
        if points and residual.interior > 0 and points[-1].interior > 0:
            order = float(np.log(points[-1].interior / residual.interior) / np.log(n_points / points[-1].n_points))
        points.append(ConvergencePoint(n_points, residual.periodic, residual.interior, order))
        logger.debug('N={}: periodic residual {:.3e}, interior residual {:.3e}'
                     .format(n_points, residual.periodic, residual.interior))
    return points


@dataclass(frozen=True)
class SupportLine:
    eigenvalue: float
    frequency: float
    fraction: float


@dataclass(frozen=True)
class SupportReport:
    """
    ω-mass captured around each line ``-ω_k``.

    :ivar lines: One entry per distinct eigenvalue.
    :ivar captured: Fraction of the total mass inside the union of the capture windows.
    :ivar nyquist_ok: False when some ``|ω_k|`` exceeds ``πN/L``.
    :ivar radius: Capture radius in frequency units.
    """
    lines: List[SupportLine]
    captured: float
    nyquist_ok: bool
    radius: float


def hann_window(grid):
    """Periodic Hann window centred on ``t = 0``."""
    return 0.5 * (1 + np.cos(2 * np.pi * grid.times / grid.window))


def frequency_mass(psi, hann=False):
    """``Σ_d |ψ̃_d(ω_j)|²`` on ``grid.freqs``, optionally after a Hann taper."""
    values = psi.amplitudes
    if hann:
        values = hann_window(psi.grid)[:, None] * values
    return np.sum(np.abs(grid_clock.to_frequency(psi.grid, values)) ** 2, axis=1)


def spectral_support(psi, h, capture_spacings=1, hann=False):
    """
    Fraction of the history's ω-mass within ``capture_spacings`` lattice spacings of ``ω = -ω_k``.

    :type psi: HistoryState
    :type h: core.system.Hamiltonian
    :param capture_spacings: Capture radius in units of ``2π/L``.
    :type capture_spacings: float
    :param hann: Taper the clock index first, trading one extra bin of main lobe for fast sidelobe decay.
    :type hann: bool
    :rtype: SupportReport
    :raise NoSupportError: for a history without ω-mass.
    """
    grid = psi.grid
    nyquist_ok = bool(np.max(np.abs(h.eigenvalues)) <= grid.nyquist)
    if not nyquist_ok:
        logger.warning('System frequencies up to {:g} exceed the grid Nyquist frequency {:g}; lines alias.'
                       .format(np.max(np.abs(h.eigenvalues)), grid.nyquist))
    mass = frequency_mass(psi, hann)
    total = mass.sum()
    if not total > 0:
        raise NoSupportError("no support: the history has no frequency-domain mass")
    radius = capture_spacings * grid.d_omega * (1 + 1e-9)
    eigenvalues = np.unique(np.round(h.eigenvalues, 9))
    captured = np.zeros(grid.n_points, dtype=bool)
    lines = []
    for eigenvalue in eigenvalues:
        window = np.abs(grid.freqs + eigenvalue) <= radius
        captured |= window
        lines.append(SupportLine(float(eigenvalue), float(-eigenvalue), float(mass[window].sum() / total)))
    return SupportReport(lines, float(mass[captured].sum() / total), nyquist_ok, float(capture_spacings * grid.d_omega))
