# coding=utf-8
import numpy as np
import pytest

from core import bandwidth, grid_clock
from core.exceptions import DimensionMismatch
from core.history import build_history, schrodinger_residual
from core.system import oscillator, uniform, zero


@pytest.fixture(scope='module')
def ladder():
    """Sharp history whose system lines sit on the frequency lattice."""
    grid = grid_clock.make_grid(1024, 50.0)
    h = oscillator(256, 2 * np.pi / grid.window)
    return grid, h, build_history(grid, h, uniform(h.dim))


def test_gaussian_amplitude_normalisation_and_spread():
    grid = grid_clock.make_grid(2048, 100.0)
    phi = bandwidth.gaussian_amplitude(grid, 1.0, center=-20.0)
    assert phi.probabilities().sum() == pytest.approx(1.0, rel=1e-12)
    assert bandwidth.measured_spread(phi) == pytest.approx(1.0, rel=1e-6)
    assert not phi.reaches_nyquist()


def test_box_amplitude_spread():
    grid = grid_clock.make_grid(2048, 100.0)
    phi = bandwidth.box_amplitude(grid, 1.0)
    assert np.count_nonzero(phi.values) == 55
    assert bandwidth.measured_spread(phi) == pytest.approx(1.0, rel=0.02)


def test_flat_amplitude_reaches_nyquist(small_grid):
    phi = bandwidth.flat_amplitude(small_grid)
    assert phi.reaches_nyquist()
    assert phi.shape == 'flat'


def test_custom_amplitude_measures_center(small_grid):
    values = np.exp(-(small_grid.freqs - 2.0) ** 2)
    phi = bandwidth.custom_amplitude(small_grid, values)
    assert phi.center == pytest.approx(2.0, abs=1e-6)
    assert phi.delta_omega == pytest.approx(bandwidth.measured_spread(phi))


def test_amplitude_validation(small_grid):
    with pytest.raises(DimensionMismatch):
        bandwidth.SpectralAmplitude(small_grid, np.ones(3), 1.0, 'custom')
    with pytest.raises(ValueError):
        bandwidth.SpectralAmplitude(small_grid, np.zeros(small_grid.n_points), 1.0, 'custom')
    with pytest.raises(ValueError):
        bandwidth.gaussian_amplitude(small_grid, 0.0)


def test_smear_matches_direct_convolution(small_grid, qubit_system):
    h, psi0 = qubit_system
    chi = build_history(small_grid, h, psi0)
    phi = bandwidth.gaussian_amplitude(small_grid, 1.0)
    np.testing.assert_allclose(bandwidth.smear(chi, phi).amplitudes,
                               bandwidth.smear_by_convolution(chi, phi).amplitudes, atol=1e-10)
    np.testing.assert_allclose(bandwidth.build_bandlimited_history(small_grid, h, psi0, phi).amplitudes,
                               bandwidth.smear(chi, phi).amplitudes)


def test_smear_rejects_foreign_grid(small_grid, qubit_system):
    h, psi0 = qubit_system
    chi = build_history(small_grid, h, psi0)
    phi = bandwidth.gaussian_amplitude(grid_clock.make_grid(32, 16.0), 1.0)
    with pytest.raises(DimensionMismatch):
        bandwidth.smear(chi, phi)


def test_smeared_history_still_solves_schrodinger_equation(fine_grid):
    h = oscillator(8, 2 * np.pi / fine_grid.window)
    chi = build_history(fine_grid, h, uniform(8))
    psi = bandwidth.smear(chi, bandwidth.gaussian_amplitude(fine_grid, 1.0))
    assert bandwidth.smeared_schrodinger_residual(psi, h) < 1e-8
    assert schrodinger_residual(chi, h, relative=True) < 1e-8


def test_autocorrelation_is_one_at_zero_lag(ladder):
    grid, h, chi = ladder
    c = bandwidth.autocorrelation(chi)
    assert c.values[grid.n_points // 2] == pytest.approx(1.0)
    assert c.lags[grid.n_points // 2] == 0.0
    assert len(c.as_rows()) == grid.n_points


@pytest.mark.parametrize('delta_omega', [0.5, 1.0, 2.0])
def test_resolution_of_gaussian_clock(ladder, delta_omega):
    grid, h, chi = ladder
    point = bandwidth.resolution_point(chi, h, bandwidth.gaussian_amplitude(grid, delta_omega, center=-16.0))
    assert point.measured_spread == pytest.approx(delta_omega, rel=1e-6)
    assert point.width_product == pytest.approx(1.0, rel=0.05)
    assert point.half_overlap == pytest.approx(np.sqrt(2 * np.log(2)) / delta_omega, rel=0.05)
    assert point.half_overlap >= point.bound
    assert point.five_percent > point.half_overlap
    assert not point.resolution_limited
    assert bandwidth.residual_ratio(point.smeared_residual, schrodinger_residual(chi, h, relative=True)) <= 10


def test_resolution_halves_when_bandwidth_doubles(ladder):
    grid, h, chi = ladder
    first, second = (bandwidth.resolution_point(chi, h, bandwidth.gaussian_amplitude(grid, d, center=-16.0))
                     for d in (1.0, 2.0))
    assert second.half_overlap / first.half_overlap == pytest.approx(0.5, rel=0.05)


def test_sharp_ladder_history_decorrelates_fast(ladder):
    grid, h, chi = ladder
    halfwidth = bandwidth.chi_correlation_halfwidth(chi)
    assert halfwidth is not None
    assert halfwidth < 1.0


def test_stationary_history_is_resolution_limited(small_grid):
    chi = build_history(small_grid, zero(2), uniform(2))
    resolution = bandwidth.resolution_estimate(bandwidth.autocorrelation(chi))
    assert resolution.resolution_limited
    assert resolution.half_overlap == small_grid.window
    assert bandwidth.chi_correlation_halfwidth(chi) is None


def test_correlation_width_of_known_profile():
    lags = np.linspace(-20, 20, 4001)
    c = bandwidth.Autocorrelation(lags, np.exp(-lags ** 2 / 2), 40.0)
    assert bandwidth.correlation_width(c) == pytest.approx(1.0, rel=1e-6)
    resolution = bandwidth.resolution_estimate(c)
    assert resolution.half_overlap == pytest.approx(np.sqrt(2 * np.log(2)), rel=1e-4)


def test_residual_ratio_floor():
    assert bandwidth.residual_ratio(1e-14, 1e-15) == 1.0
    assert bandwidth.residual_ratio(1e-8, 1e-9) == pytest.approx(10.0)


def test_smearing_kernel_width(small_grid):
    phi = bandwidth.gaussian_amplitude(small_grid, 1.0)
    kernel = np.abs(bandwidth.smearing_kernel(phi, np.array([0.0, 1.0, 2.0])))
    assert kernel[0] > kernel[1] > kernel[2]


def test_amplitude_cut_off_by_spectrum_inflates_width(ladder):
    grid, h, chi = ladder
    point = bandwidth.resolution_point(chi, h, bandwidth.gaussian_amplitude(grid, 4.0, center=-8.0))
    assert point.width_product > 1.5


def test_flat_amplitude_keeps_sharp_history_up_to_a_constant(small_grid, qubit_system):
    h, psi0 = qubit_system
    chi = build_history(small_grid, h, psi0)
    ratio = bandwidth.smear(chi, bandwidth.flat_amplitude(small_grid)).amplitudes / chi.amplitudes
    np.testing.assert_allclose(ratio, ratio[0, 0], atol=1e-12)


def test_stationary_history_is_fully_correlated(small_grid):
    c = bandwidth.autocorrelation(build_history(small_grid, zero(2), uniform(2)))
    np.testing.assert_allclose(c.values, 1.0, atol=1e-12)
