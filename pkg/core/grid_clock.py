# coding=utf-8
"""
The discretised clock line.

The clock Hilbert space L²(ℝ) is truncated to a periodic window of length ``L`` sampled at ``N`` points,
``t_k = (k - N/2)·Δt`` with ``Δt = L/N``. The conjugate lattice is ``ω_j = 2π·s(j)/L`` with the centred index
``s(j) ∈ {-N/2, …, N/2-1}``; the Nyquist point sits at ``-πN/L``.

Conventions (ħ = 1):

- inner products use the rectangle rule, ``⟨f|g⟩ = Δt·Σ f*(t_k) g(t_k)``;
- the ω-amplitude of a clock vector is ``f̃(ω_j) = Δt/√(2π)·Σ_k e^{-iω_j t_k} f(t_k)``, so the map is unitary
  between the two quadrature inner products;
- ``Ω̂`` acts as ``-i∂/∂t``: on-grid plane waves ``e^{iω_j t}`` are eigenvectors with eigenvalue ``ω_j``.

Every statement about the continuum only holds for vectors negligible at the window edge, because the discrete
Fourier transform wraps the window periodically. :func:`boundary_negligible` makes that checkable.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import fft
from scipy.special import erf

from core.exceptions import GridError

SQRT_2PI = np.sqrt(2 * np.pi)
EDGE_FRACTION = 0.1         # outer share of the window, per side, treated as edge zone
EDGE_TOLERANCE = 1e-8       # relative amplitude allowed inside the edge zone
DENSE_LIMIT = 128           # largest N for which the explicit-sum oracles are built

logger = logging.getLogger('numerics')


@dataclass(frozen=True)
class TimeGrid:
    """
    Symmetric periodic clock grid. Arrays are computed once and handed out read-only.

    :ivar n_points: Number of grid points ``N`` (even, at least 4).
    :type n_points: int
    :vartype n_points: int
    :ivar window: Window length ``L``.
    :type window: float
    :vartype window: float
    """
    n_points: int
    window: float

    @property
    def dt(self):
        return self.window / self.n_points

    @property
    def d_omega(self):
        """Spacing of the frequency lattice, ``2π/L``."""
        return 2 * np.pi / self.window

    @property
    def nyquist(self):
        """Largest representable frequency magnitude, ``πN/L``."""
        return np.pi * self.n_points / self.window

    @cached_property
    def centered_index(self):
        index = np.arange(self.n_points) - self.n_points // 2
        index.flags.writeable = False
        return index

    @cached_property
    def times(self):
        times = self.centered_index * self.dt
        times.flags.writeable = False
        return times

    @cached_property
    def freqs(self):
        freqs = self.centered_index * self.d_omega
        freqs.flags.writeable = False
        return freqs

    def index_of(self, t):
        """
        Nearest grid index to clock reading ``t``.

        :param t: Clock reading inside the window.
        :type t: float
        :rtype: int
        """
        return int(np.argmin(np.abs(self.times - t)))


def make_grid(n_points, window):
    """
    Validates the parameters and builds a :class:`TimeGrid`.

    :param n_points: Number of points, even and at least 4.
    :type n_points: int
    :param window: Window length, strictly positive.
    :type window: float
    :rtype: TimeGrid
    :raise GridError: on odd or too small ``n_points`` or a non-positive window.
    """
    if int(n_points) != n_points:
        raise GridError("n_points must be an integer, got {!r}".format(n_points))
    n_points = int(n_points)
    if n_points % 2:
        raise GridError("n_points must be even")
    if n_points < 4:
        raise GridError("n_points must be at least 4, got {}".format(n_points))
    if not window > 0:
        raise GridError("window must be positive, got {!r}".format(window))
    return TimeGrid(n_points, float(window))


def grid_for_spacing(spacing, window):
    """
    Grid whose spacing stays (close to) ``spacing`` for the given window: ``N`` is the even integer nearest to
    ``window/spacing``. Sweeps use it to change the window while keeping discretisation error fixed.

    :type spacing: float
    :type window: float
    :rtype: TimeGrid
    """
    if not spacing > 0:
        raise GridError("spacing must be positive, got {!r}".format(spacing))
    n_points = max(4, 2 * int(round(window / (2 * spacing))))
    return make_grid(n_points, window)


def along_clock(array, values):
    """Reshapes a per-clock-point ``array`` so it broadcasts over the trailing (system) axes of ``values``."""
    return np.reshape(array, (-1,) + (1,) * (np.ndim(values) - 1))


def to_frequency(grid, values):
    """
    Unitary clock transform t → ω along axis 0, kernel ``e^{-iωt}``.

    :param grid: The clock grid.
    :type grid: TimeGrid
    :param values: Array with the clock index first, shape ``(N,)`` or ``(N, d)``.
    :type values: numpy.ndarray
    :return: ω-amplitudes ordered like ``grid.freqs``.
    :rtype: numpy.ndarray
    """
    values = np.asarray(values, dtype=complex)
    spectrum = fft.fftshift(fft.fft(fft.ifftshift(values, axes=0), axis=0), axes=0)
    return spectrum * (grid.dt / SQRT_2PI)


def to_time(grid, spectrum):
    """
    Inverse of :func:`to_frequency`.

    :type grid: TimeGrid
    :type spectrum: numpy.ndarray
    :rtype: numpy.ndarray
    """
    spectrum = np.asarray(spectrum, dtype=complex)
    values = fft.fftshift(fft.ifft(fft.ifftshift(spectrum, axes=0), axis=0), axes=0)
    return values * (grid.n_points * grid.d_omega / SQRT_2PI)


def frequency_multiply(grid, values):
    """Matrix-free ``Ω̂`` on the clock index of ``values`` (any trailing shape)."""
    omega = along_clock(grid.freqs, values)
    return to_time(grid, omega * to_frequency(grid, values))


def spectral_derivative(grid, values):
    """``d/dt`` on the clock index, i.e. ``iΩ̂``."""
    return 1j * frequency_multiply(grid, values)


def interior_mask(grid, edge_fraction=EDGE_FRACTION):
    """
    Boolean mask of grid points outside the edge zone, ``|t| <= (1/2 - edge_fraction)·L``.

    :type grid: TimeGrid
    :type edge_fraction: float
    :rtype: numpy.ndarray
    """
    if not 0 <= edge_fraction < 0.5:
        raise GridError("edge_fraction must lie in [0, 0.5), got {!r}".format(edge_fraction))
    limit = (0.5 - edge_fraction) * grid.window
    return np.abs(grid.times) <= limit * (1 + 1e-12)


def interior_taper(grid, edge_fraction=EDGE_FRACTION):
    """
    Smooth flat-top window: 1 on the interior to roundoff, 0 at the window edge to roundoff, with erf flanks
    centred in the edge zone. Multiplying by it turns any smooth row into a smooth *periodic* one, so spectral
    derivatives of the product are exact on the interior.

    :type grid: TimeGrid
    :type edge_fraction: float
    :rtype: numpy.ndarray
    """
    if not 0 < edge_fraction < 0.5:
        raise GridError("edge_fraction must lie in (0, 0.5), got {!r}".format(edge_fraction))
    half_zone = edge_fraction * grid.window / 2
    centre = grid.window / 2 - half_zone
    scale = half_zone / 6       # erfc(6) ~ 2e-17
    t = grid.times
    return 0.5 * (erf((t + centre) / scale) - erf((t - centre) / scale))


def boundary_negligible(grid, values, edge_fraction=EDGE_FRACTION, tolerance=EDGE_TOLERANCE):
    """
    True when every amplitude in the edge zone is below ``tolerance`` times the largest amplitude. For arrays with
    a system axis the per-row norm is used.

    :type grid: TimeGrid
    :type values: numpy.ndarray
    :type edge_fraction: float
    :type tolerance: float
    :rtype: bool
    """
    values = np.asarray(values)
    magnitude = np.abs(values) if values.ndim == 1 else np.linalg.norm(values.reshape(grid.n_points, -1), axis=1)
    peak = magnitude.max()
    if peak == 0:
        return True
    edge = magnitude[~interior_mask(grid, edge_fraction)]
    return bool(edge.size == 0 or edge.max() < tolerance * peak)


@dataclass(frozen=True)
class ClockVector:
    """
    Wavefunction on the clock grid, time basis.

    :ivar amplitudes: Length-N complex array.
    :type amplitudes: numpy.ndarray
    :vartype amplitudes: numpy.ndarray
    :ivar grid: Grid the amplitudes live on.
    :type grid: TimeGrid
    :vartype grid: TimeGrid
    """
    amplitudes: np.ndarray
    grid: TimeGrid

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.grid.n_points,):
            raise GridError("clock vector needs shape ({},), got {}".format(self.grid.n_points, amplitudes.shape))
        amplitudes.flags.writeable = False
        object.__setattr__(self, 'amplitudes', amplitudes)

    def inner(self, other):
        """Quadrature inner product ``⟨self|other⟩``."""
        return self.grid.dt * np.vdot(self.amplitudes, other.amplitudes)

    def norm(self):
        return float(np.sqrt(self.inner(self).real))

    def normalized(self):
        return ClockVector(self.amplitudes / self.norm(), self.grid)

    def spectrum(self):
        """ω-amplitudes on ``grid.freqs``."""
        return to_frequency(self.grid, self.amplitudes)


def gaussian_vector(grid, center=0.0, width=1.0):
    """
    Normalised ``exp(-(t - center)²/(2·width²))``.

    :rtype: ClockVector
    """
    return ClockVector(np.exp(-(grid.times - center) ** 2 / (2 * width ** 2)), grid).normalized()


def plane_wave(grid, index):
    """
    Normalised on-grid plane wave ``e^{iω_j t}``; ``index`` is the centred lattice index ``s(j)``.

    :rtype: ClockVector
    """
    if not -grid.n_points // 2 <= index < grid.n_points // 2:
        raise GridError("lattice index {} outside [-N/2, N/2)".format(index))
    omega = index * grid.d_omega
    return ClockVector(np.exp(1j * omega * grid.times), grid).normalized()


def apply_time_operator(v):
    """
    ``T̂``: pointwise multiplication by ``t_k``.

    :type v: ClockVector
    :rtype: ClockVector
    """
    return ClockVector(v.grid.times * v.amplitudes, v.grid)


def apply_frequency_operator(v):
    """
    ``Ω̂``: to the ω basis, multiply by ``ω_j``, back.

    :type v: ClockVector
    :rtype: ClockVector
    """
    return ClockVector(frequency_multiply(v.grid, v.amplitudes), v.grid)


@dataclass(frozen=True)
class CommutatorSandwich:
    """``⟨v|[T̂, Ω̂]|v⟩`` and whether the boundary precondition held."""
    value: complex
    boundary_ok: bool


def commutator_sandwich(v, edge_fraction=EDGE_FRACTION, edge_tolerance=EDGE_TOLERANCE):
    """
    ``⟨v|(T̂Ω̂ - Ω̂T̂)|v⟩``. Equals ``i`` for normalised, smooth, window-interior vectors; boundary-dominated
    vectors are flagged rather than rejected.

    :param v: Normalised clock vector.
    :type v: ClockVector
    :type edge_fraction: float
    :type edge_tolerance: float
    :rtype: CommutatorSandwich
    """
    boundary_ok = boundary_negligible(v.grid, v.amplitudes, edge_fraction, edge_tolerance)
    if not boundary_ok:
        logger.warning('Commutator sandwich on a vector that is not negligible at the window edge '
                       '(N={}, L={:g}); [T, Omega] = i is not reproduced there.'.format(v.grid.n_points, v.grid.window))
    t_omega = apply_time_operator(apply_frequency_operator(v))
    omega_t = apply_frequency_operator(apply_time_operator(v))
    return CommutatorSandwich(complex(v.inner(t_omega) - v.inner(omega_t)), boundary_ok)


def dense_time_operator(grid):
    """Dense ``T̂`` in the time basis (oracle)."""
    return np.diag(grid.times).astype(complex)


def dense_frequency_operator(grid):
    """
    Dense ``Ω̂`` in the time basis from the explicit sum ``Ω_kl = (1/N)·Σ_j ω_j e^{iω_j (t_k - t_l)}``, independent
    of the FFT path. Only built for ``N <= DENSE_LIMIT``.

    :rtype: numpy.ndarray
    :raise GridError: for grids above the oracle limit.
    """
    if grid.n_points > DENSE_LIMIT:
        raise GridError("dense oracle limited to N <= {}, got {}".format(DENSE_LIMIT, grid.n_points))
    lag = grid.times[:, None] - grid.times[None, :]
    phases = np.exp(1j * lag[:, :, None] * grid.freqs[None, None, :])
    return phases @ grid.freqs / grid.n_points
