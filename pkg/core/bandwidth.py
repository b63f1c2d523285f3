# coding=utf-8
"""
Finite-bandwidth clocks.

A spectral amplitude ``φ(ω)`` weights the constraint solutions: the sharp history ``|χ⟩⟩`` is taken to the ω
basis, multiplied by ``φ(ω_j)`` and brought back. In time this is a convolution of the rows with ``φ̃``, so the
smeared rows still obey the Schrödinger equation while neighbouring clock readings overlap. The overlap
``C(τ)`` is the Fourier transform of ``|φ|²`` when ``χ`` decorrelates fast, which gives the resolution ``1/(2Δω)``.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft

from core import grid_clock
from core.exceptions import DimensionMismatch
from core.history import build_history, schrodinger_residual

HALF_OVERLAP = 0.5
FIVE_PERCENT_OVERLAP = 0.05
NYQUIST_TOLERANCE = 1e-8
RESIDUAL_FLOOR = 1e-10

logger = logging.getLogger('numerics')


@dataclass(frozen=True)
class SpectralAmplitude:
    """
    ``φ(ω_j)`` on the frequency lattice of ``grid``, normalised so ``Σ_j Δω·|φ_j|² = 1``.

    :ivar grid: Grid whose lattice carries the values.
    :ivar values: Complex amplitudes ordered like ``grid.freqs``.
    :ivar delta_omega: Stated standard deviation of ``|φ|²``.
    :ivar shape: ``'gaussian'``, ``'box'``, ``'flat'`` or ``'custom'``.
    :ivar center: Stated centre frequency.
    """
    grid: grid_clock.TimeGrid
    values: np.ndarray
    delta_omega: float
    shape: str
    center: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise DimensionMismatch("spectral amplitude needs {} values, got {}"
                                    .format(self.grid.n_points, values.shape))
        norm = np.sqrt(self.grid.d_omega * np.sum(np.abs(values) ** 2))
        if norm == 0:
            raise ValueError("spectral amplitude is identically zero")
        values = values / norm
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def probabilities(self):
        """``Δω·|φ_j|²``, summing to one."""
        return self.grid.d_omega * np.abs(self.values) ** 2

    def reaches_nyquist(self):
        """True when ``|φ|`` at the lattice ends is not negligible."""
        magnitude = np.abs(self.values)
        return bool(max(magnitude[0], magnitude[-1]) > NYQUIST_TOLERANCE * magnitude.max())


def gaussian_amplitude(grid, delta_omega, center=0.0):
    """``φ ∝ exp(-(ω-c)²/(4Δω²))``, i.e. ``|φ|²`` Gaussian with standard deviation ``Δω``."""
    if not delta_omega > 0:
        raise ValueError("delta_omega must be positive, got {!r}".format(delta_omega))
    values = np.exp(-(grid.freqs - center) ** 2 / (4 * delta_omega ** 2))
    return SpectralAmplitude(grid, values, float(delta_omega), 'gaussian', float(center))


def box_amplitude(grid, delta_omega, center=0.0):
    """
    Flat ``|φ|²`` over the ``K = round(√12·Δω / (2π/L))`` lattice points nearest ``center``; a uniform
    distribution of width ``√12·Δω`` has standard deviation ``Δω``.
    """
    if not delta_omega > 0:
        raise ValueError("delta_omega must be positive, got {!r}".format(delta_omega))
    count = max(1, int(round(np.sqrt(12) * delta_omega / grid.d_omega)))
    nearest = np.argsort(np.abs(grid.freqs - center), kind='stable')[:count]
    values = np.zeros(grid.n_points)
    values[nearest] = 1
    return SpectralAmplitude(grid, values, float(delta_omega), 'box', float(center))


def flat_amplitude(grid):
    """Uniform over the whole lattice: the infinite-bandwidth limit on this grid."""
    amplitude = SpectralAmplitude(grid, np.ones(grid.n_points), 1.0, 'flat')
    return SpectralAmplitude(grid, amplitude.values, measured_spread(amplitude), 'flat')


def custom_amplitude(grid, values, delta_omega=None, center=None):
    """User-supplied ``φ``; spread and centre are measured when not given."""
    amplitude = SpectralAmplitude(grid, values, 1.0, 'custom')
    mean = float(np.sum(grid.freqs * amplitude.probabilities()))
    return SpectralAmplitude(grid, amplitude.values,
                             measured_spread(amplitude) if delta_omega is None else float(delta_omega),
                             'custom', mean if center is None else float(center))


def measured_spread(phi):
    """
    Standard deviation of ``|φ|²`` over the lattice.

    :type phi: SpectralAmplitude
    :rtype: float
    """
    p = phi.probabilities()
    mean = np.sum(phi.grid.freqs * p)
    return float(np.sqrt(np.sum((phi.grid.freqs - mean) ** 2 * p)))


def build_bandlimited_history(grid, h, chi0, phi):
    """
    ``|Ψ⟩⟩ = ∫dω φ(ω)|ω⟩|χ̃(ω)⟩``: the sharp history of ``(h, chi0)`` multiplied by ``φ`` in the ω basis.

    :type grid: core.grid_clock.TimeGrid
    :type h: core.system.Hamiltonian
    :type chi0: core.system.SystemState
    :type phi: SpectralAmplitude
    :rtype: core.history.HistoryState
    """
    return smear(build_history(grid, h, chi0), phi)


def smear(chi, phi):
    """Applies ``φ`` to an existing sharp history ``chi``."""
    if phi.grid != chi.grid:
        raise DimensionMismatch("spectral amplitude and history live on different grids")
    if phi.reaches_nyquist():
        logger.warning('Spectral amplitude ({}, delta_omega={:g}) is not negligible at the Nyquist frequency {:g}.'
                       .format(phi.shape, phi.delta_omega, chi.grid.nyquist))
    spectrum = grid_clock.to_frequency(chi.grid, chi.amplitudes)
    return chi.with_amplitudes(grid_clock.to_time(chi.grid, phi.values[:, None] * spectrum))


def smearing_kernel(phi, lags):
    """``φ̃(s) = (2π)^{-1/2}·Σ_j Δω·φ_j·e^{iω_j s}`` at the given lags."""
    phases = np.exp(1j * np.outer(lags, phi.grid.freqs))
    return phases @ phi.values * phi.grid.d_omega / grid_clock.SQRT_2PI


def smear_by_convolution(chi, phi):
    """
    Direct-summation convolution ``ψ(t_k) = Σ_l Δt/√(2π)·φ̃(t_k - t_l)·χ(t_l)``. Quadratic in ``N``; the
    reference for :func:`smear`.
    """
    grid = chi.grid
    lags = grid.times[:, None] - grid.times[None, :]
    kernel = smearing_kernel(phi, lags.ravel()).reshape(lags.shape)
    return chi.with_amplitudes(grid.dt / grid_clock.SQRT_2PI * kernel @ chi.amplitudes)


@dataclass(frozen=True)
class Autocorrelation:
    """
    :ivar lags: Centred lags ``τ_s = s·Δt``.
    :ivar values: ``C(τ_s)`` with ``C(0) = 1``.
    :ivar window: Window length of the grid.
    """
    lags: np.ndarray
    values: np.ndarray
    window: float

    def as_rows(self):
        return [{'tau': float(tau), 're': float(c.real), 'im': float(c.imag), 'abs': float(abs(c))}
                for tau, c in zip(self.lags, self.values)]


def autocorrelation(psi, edge_fraction=grid_clock.EDGE_FRACTION):
    """
    ``C(τ) = ⟨ψ(t)|ψ(t+τ)⟩`` averaged over interior ``t`` and normalised to ``C(0) = 1``. Shifts wrap
    periodically.

    :type psi: core.history.HistoryState
    :rtype: Autocorrelation
    """
    grid = psi.grid
    mask = grid_clock.interior_mask(grid, edge_fraction)
    masked = fft.fft(mask[:, None] * psi.amplitudes, axis=0)
    shifted = fft.fft(psi.amplitudes, axis=0)
    correlation = fft.ifft(np.conj(masked) * shifted, axis=0).sum(axis=1) / mask.sum()
    correlation = fft.fftshift(correlation)
    zero = grid.n_points // 2
    if abs(correlation[zero]) == 0:
        raise ValueError("history has no weight on the interior")
    return Autocorrelation(grid.centered_index * grid.dt, correlation / correlation[zero], grid.window)


def correlation_width(c):
    """
    Second-moment width of ``|C|``: ``sqrt(Σ τ²|C| / Σ|C|)``.

    Assumes ``φ`` lies inside the band the system lines cover. A ``φ`` cut off by the end of the spectrum leaves a
    slow tail in ``|C|`` that the ``τ²`` weight amplifies.
    """
    magnitude = np.abs(c.values)
    return float(np.sqrt(np.sum(c.lags ** 2 * magnitude) / np.sum(magnitude)))


@dataclass(frozen=True)
class Resolution:
    """
    :ivar half_overlap: First ``τ > 0`` with ``|C(τ)| < 1/2``, linearly interpolated.
    :ivar five_percent: First ``τ > 0`` with ``|C(τ)| < 0.05``.
    :ivar resolution_limited: ``|C|`` never fell below 1/2; ``half_overlap`` is then the window length.
    """
    half_overlap: float
    five_percent: float
    resolution_limited: bool


def _first_crossing(lags, magnitude, level):
    below = np.nonzero(magnitude < level)[0]
    if below.size == 0:
        return None
    k = below[0]
    if k == 0:
        return float(lags[0])
    t0, t1, c0, c1 = lags[k - 1], lags[k], magnitude[k - 1], magnitude[k]
    return float(t0 + (c0 - level) * (t1 - t0) / (c0 - c1))


def resolution_estimate(c):
    """
    :type c: Autocorrelation
    :rtype: Resolution
    """
    zero = int(np.argmin(np.abs(c.lags)))
    lags, magnitude = c.lags[zero:], np.abs(c.values[zero:])
    half = _first_crossing(lags, magnitude, HALF_OVERLAP)
    five = _first_crossing(lags, magnitude, FIVE_PERCENT_OVERLAP)
    if half is None:
        logger.info('|C| stays above 1/2 across the window; resolution limited by L={:g}'.format(c.window))
    return Resolution(c.window if half is None else half, c.window if five is None else five, half is None)


def smeared_schrodinger_residual(psi, h, edge_fraction=grid_clock.EDGE_FRACTION):
    """
    Interior Schrödinger residual of a smeared history, relative to the row norm.

    :rtype: float
    """
    return schrodinger_residual(psi, h, edge_fraction, relative=True)


@dataclass(frozen=True)
class ResolutionPoint:
    """One ``Δω`` of a resolution sweep."""
    delta_omega: float
    measured_spread: float
    correlation_width: float
    half_overlap: float
    five_percent: float
    bound: float
    resolution_limited: bool
    smeared_residual: float
    autocorrelation: Optional[Autocorrelation] = None

    @property
    def width_product(self):
        return self.measured_spread * self.correlation_width

    def as_row(self):
        return {
            'delta_omega': self.delta_omega, 'measured_spread': self.measured_spread,
            'bound': self.bound, 'estimate_half': self.half_overlap, 'estimate_005': self.five_percent,
            'correlation_width': self.correlation_width, 'width_product': self.width_product,
            'resolution_limited': self.resolution_limited, 'smeared_residual': self.smeared_residual,
        }


def resolution_point(chi, h, phi, edge_fraction=grid_clock.EDGE_FRACTION):
    """
    Smears the sharp history ``chi`` with ``phi`` and measures every resolution quantity.

    :type chi: core.history.HistoryState
    :type h: core.system.Hamiltonian
    :type phi: SpectralAmplitude
    :rtype: ResolutionPoint
    """
    psi = smear(chi, phi)
    c = autocorrelation(psi, edge_fraction)
    resolution = resolution_estimate(c)
    return ResolutionPoint(
        delta_omega=phi.delta_omega,
        measured_spread=measured_spread(phi),
        correlation_width=correlation_width(c),
        half_overlap=resolution.half_overlap,
        five_percent=resolution.five_percent,
        bound=1 / (2 * phi.delta_omega),
        resolution_limited=resolution.resolution_limited,
        smeared_residual=smeared_schrodinger_residual(psi, h, edge_fraction),
        autocorrelation=c)


def residual_ratio(smeared, sharp, floor=RESIDUAL_FLOOR):
    """``smeared/sharp`` with both clipped at ``floor``; 1 when both sit at roundoff."""
    return max(smeared, floor) / max(sharp, floor)


def chi_correlation_halfwidth(chi, edge_fraction=grid_clock.EDGE_FRACTION) -> Optional[float]:
    """Half-overlap time of the sharp history; ``None`` when the rows never decorrelate to 1/2."""
    resolution = resolution_estimate(autocorrelation(chi, edge_fraction))
    return None if resolution.resolution_limited else resolution.half_overlap
