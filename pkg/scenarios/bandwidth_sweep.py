# coding=utf-8
import numpy as np

from core import bandwidth
from core.baseclass import ScenarioBase
from core.exceptions import PauliClockException
from core.history import build_history, schrodinger_residual
from core.multithreader import run_jobs

SHAPES = {
    'gaussian': bandwidth.gaussian_amplitude,
    'box': bandwidth.box_amplitude,
}


class BandwidthSweep(ScenarioBase):
    """
    Finite-bandwidth clocks over a sweep of ``Δω``: the overlap ``|C(τ)|`` of smeared clock readings narrows as
    ``1/Δω``, the half-overlap time stays above ``1/(2Δω)``, and the smeared rows still solve the Schrödinger
    equation.

    The fast-decorrelating system is a ladder ``oscillator(d, 2π/L)`` in uniform superposition: its lines sit on the
    frequency lattice, so ``⟨χ(t)|χ(t')⟩`` depends on ``t - t'`` only and is sharply peaked.
    """
    NAME = 'bandwidth-sweep'
    DESCRIPTION = 'time resolution of finite-bandwidth clocks'
    TOLERANCES = {
        'spread': 0.02,
        'width': 0.05,
        'half_overlap': 0.05,
        'halving': 0.05,
        'bound': 1e-3,
        'residual_ratio': 10.0,
    }

    def __init__(self, config):
        super().__init__(config)
        self.delta_omegas = config.get_floats('delta_omegas', [0.5, 1.0, 2.0, 4.0])
        self.center = config.get_float('center', 0.0)
        self.shape = config.get_str('shape', 'gaussian')
        self.export_autocorrelation = config.get_bool('export_autocorrelation', True)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('n_points', self.config.n_points), ('window', self.config.window),
            ('hamiltonian', self.config.hamiltonian), ('initial_state', self.config.initial_state),
            ('shape', self.shape), ('center', self.center), ('delta_omegas', self.delta_omegas),
        ]

    def diagnose(self):
        diagnostics = super().diagnose()
        if self.shape not in SHAPES:
            diagnostics.append(('error', 'unknown shape {!r}, expected one of {}'.format(
                self.shape, ', '.join(sorted(SHAPES)))))
            return diagnostics
        try:
            grid = self.factory_grid()
            for delta in self.delta_omegas:
                if SHAPES[self.shape](grid, delta, self.center).reaches_nyquist():
                    diagnostics.append(('warning', 'spectral amplitude with delta_omega={:g} reaches the Nyquist '
                                                   'frequency'.format(delta)))
        except (PauliClockException, ValueError) as e:
            diagnostics.append(('error', str(e)))
        return diagnostics

    def execute(self):
        if self.shape not in SHAPES:
            raise ValueError('unknown shape {!r}'.format(self.shape))
        grid = self.factory_grid()
        h = self.factory_hamiltonian()
        chi = build_history(grid, h, self.factory_state(h.dim))
        sharp = schrodinger_residual(chi, h, relative=True)
        self.record('sharp_residual', sharp)
        self.record('chi_correlation_halfwidth', bandwidth.chi_correlation_halfwidth(chi))

        amplitudes = [SHAPES[self.shape](grid, delta, self.center) for delta in self.delta_omegas]
        for phi in amplitudes:
            if phi.reaches_nyquist():
                self.warn('spectral amplitude with delta_omega={:g} reaches the Nyquist frequency'.format(
                    phi.delta_omega))
        points = run_jobs([[bandwidth.resolution_point, (chi, h, phi)] for phi in amplitudes], self.config.threads)
        self.add_table('resolution_sweep', [point.as_row() for point in points])
        if self.export_autocorrelation:
            for point in points:
                self.add_table('autocorrelation_dw{:g}'.format(point.delta_omega), point.autocorrelation.as_rows())

        for point in points:
            self._check_point(point, sharp)
        estimates = [point.half_overlap for point in points]
        self.check_true('resolution_non_increasing',
                        all(b <= a * (1 + self.tolerances['halving']) for a, b in zip(estimates, estimates[1:])),
                        value=estimates)
        for a, b in zip(points, points[1:]):
            if np.isclose(b.delta_omega, 2 * a.delta_omega):
                self.check_close('halving_dw{:g}_to_dw{:g}'.format(a.delta_omega, b.delta_omega),
                                 b.half_overlap / a.half_overlap, 0.5, 'halving', relative=True)

    def _check_point(self, point, sharp):
        tag = 'dw{:g}'.format(point.delta_omega)
        self.check_close('{}_measured_spread'.format(tag), point.measured_spread, point.delta_omega, 'spread',
                         relative=True)
        self.check_at_least('{}_above_bound'.format(tag), point.half_overlap,
                            point.bound * (1 - self.tolerances['bound']))
        if self.shape == 'gaussian':
            self.check_close('{}_width_product'.format(tag), point.width_product, 1.0, 'width', relative=True)
            self.check_close('{}_half_overlap'.format(tag), point.half_overlap,
                             np.sqrt(2 * np.log(2)) / point.delta_omega, 'half_overlap', relative=True)
        if point.resolution_limited:
            self.warn('delta_omega={:g}: |C| stays above 1/2, resolution limited by the window'.format(
                point.delta_omega))
        ratio = bandwidth.residual_ratio(point.smeared_residual, sharp)
        self.record('{}_residual_ratio'.format(tag), ratio)
        if self.shape == 'gaussian':
            self.check_at_most('{}_smeared_residual_ratio'.format(tag), ratio, 'residual_ratio')


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return BandwidthSweep(config)
