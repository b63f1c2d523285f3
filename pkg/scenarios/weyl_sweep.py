# coding=utf-8
import numpy as np

from core import grid_clock, weyl
from core.baseclass import ScenarioBase
from core.exceptions import PauliClockException
from core.history import ConstraintOperator
from core.multithreader import run_jobs


def weyl_point(grid, h, psi0, kind, edge_tolerance):
    w = weyl.make_weyl(grid, h, psi0, kind, edge_tolerance)
    return weyl.weyl_report(w, ConstraintOperator(grid, h))


class WeylSweep(ScenarioBase):
    """
    Gaussian Weyl states over ``n``: ``‖𝕁Ψₙ‖²·n → 1`` while ``‖T̂𝕁Ψₙ‖² = 3/4``, plus the two sandwich orderings.
    Optional box states show the same qualitative split.

    Without ``[Grid] window`` every ``n`` gets its own grid ``L = 10·√n`` at the fixed ``[Grid] spacing``; with it,
    all points share one grid, which must be large enough for the widest envelope.
    """
    NAME = 'weyl-sweep'
    DESCRIPTION = 'Gaussian and box Weyl sequences of the constraint operator'
    TOLERANCES = {
        'constraint_norm': 0.02,
        't_amplified': 0.01,
        'sandwich_modulus': 0.01,
        'imaginary': 1e-3,
        'commutator': 1e-2,
        'adjoint': 1e-6,
        'jt_residual': 0.02,
        'box_floor': 0.5,
    }

    def __init__(self, config):
        super().__init__(config)
        self.n_values = config.get_floats('n_values', [4.0, 16.0, 64.0])
        self.box_values = config.get_floats('box_values', [])
        self.edge_tolerance = config.get_float('edge_tolerance', weyl.EDGE_TOLERANCE)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('hamiltonian', self.config.hamiltonian),
            ('initial_state', self.config.initial_state), ('spacing', self.config.spacing),
            ('window', self.config.window if self.config.window else '10*sqrt(n)'),
            ('n_values', self.n_values), ('box_values', self.box_values), ('edge_tolerance', self.edge_tolerance),
        ]

    def _fixed_grid(self):
        if self.config.n_points is not None:
            return grid_clock.make_grid(self.config.n_points, self.config.window)
        return grid_clock.grid_for_spacing(self.factory_spacing(), self.config.window)

    def _gaussian_grid(self, n):
        if self.config.window:
            return self._fixed_grid()
        return grid_clock.grid_for_spacing(self.factory_spacing(), weyl.GAUSSIAN_WINDOW_SCALE * np.sqrt(n))

    def _box_grid(self):
        if self.config.window:
            return self._fixed_grid()
        return grid_clock.grid_for_spacing(self.factory_spacing(), max(self.box_values) / weyl.BOX_WINDOW_FRACTION)

    def diagnose(self):
        diagnostics = super().diagnose()
        kinds = [weyl.WeylKind.gaussian(n) for n in self.n_values] + [weyl.WeylKind.box(m) for m in self.box_values]
        if not kinds:
            return diagnostics + [('error', 'no n_values or box_values to sweep')]
        try:
            if self.config.window:
                grid = self._fixed_grid()
                for kind in kinds:
                    if grid.window < kind.required_window() * (1 - 1e-12):
                        diagnostics.append(('error', 'window too small for {}({:g}), need L >= {:g}'.format(
                            kind.name, kind.parameter, kind.required_window())))
            else:
                self.factory_spacing()
                if self.box_values and not weyl.box_edge_on_grid(self._box_grid(), max(self.box_values)):
                    diagnostics.append(('warning', 'box edges fall between grid points'))
        except PauliClockException as e:
            diagnostics.append(('error', str(e)))
        return diagnostics

    def execute(self):
        h = self.factory_hamiltonian()
        psi0 = self.factory_state(h.dim)
        jobs = [[weyl_point, (self._gaussian_grid(n), h, psi0, weyl.WeylKind.gaussian(n), self.edge_tolerance)]
                for n in self.n_values]
        if self.box_values:
            box_grid = self._box_grid()
            jobs += [[weyl_point, (box_grid, h, psi0, weyl.WeylKind.box(m), self.edge_tolerance)]
                     for m in self.box_values]
        reports = run_jobs(jobs, self.config.threads)
        self.add_table('weyl_sweep', [report.as_row() for report in reports])

        gaussians = [report for report in reports if report.kind == 'gaussian']
        for report in gaussians:
            self._check_gaussian(report)
        if gaussians:
            first = gaussians[0]
            self.record('sandwich_tj_sign', '+i/2' if first.sandwich_tj.imag > 0 else '-i/2')
            self.record('sandwich_jt_sign', '+i/2' if first.sandwich_jt.imag > 0 else '-i/2')
        self._check_boxes([report for report in reports if report.kind == 'box'])

    def _check_gaussian(self, report):
        tag = 'n{:g}'.format(report.n_or_m)
        if not report.boundary_ok:
            self.warn('gaussian({:g}) is not negligible at the window edge (L={:g})'.format(report.n_or_m,
                                                                                           report.window))
        self.check_true('{}_boundary'.format(tag), report.boundary_ok)
        self.check_close('{}_constraint_norm_sq_times_n'.format(tag), report.constraint_norm_sq * report.n_or_m, 1.0,
                         'constraint_norm', relative=True)
        self.check_close('{}_t_amplified_norm_sq'.format(tag), report.t_amplified_norm_sq, 0.75, 't_amplified',
                         relative=True)
        for name, value in (('sandwich_tj', report.sandwich_tj), ('sandwich_jt', report.sandwich_jt)):
            self.check_close('{}_{}_modulus'.format(tag, name), abs(value), 0.5, 'sandwich_modulus', relative=True)
            self.check_close('{}_{}_real'.format(tag, name), value.real, 0.0, 'imaginary')
        self.check_close('{}_commutator'.format(tag), report.commutator_check, 1j, 'commutator')
        self.check_close('{}_adjoint'.format(tag), report.adjoint_residual, 0.0, 'adjoint')
        self.check_close('{}_jt_residual_at_sandwich'.format(tag), report.jt_residual_sandwich, 0.5, 'jt_residual',
                         relative=True)
        self.record('{}_jt_residual_zero'.format(tag), report.jt_residual_zero)

    def _check_boxes(self, boxes):
        for report in boxes:
            if not report.edge_on_grid:
                self.warn('box({:g}) edges fall between grid points'.format(report.n_or_m))
            self.check_at_least('m{:g}_box_t_amplified_bounded'.format(report.n_or_m), report.t_amplified_norm_sq,
                                self.tolerances['box_floor'])
        if len(boxes) > 1:
            norms = [report.constraint_norm_sq for report in boxes]
            self.check_true('box_constraint_norm_decreasing', all(b < a for a, b in zip(norms, norms[1:])),
                            value=norms)


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return WeylSweep(config)
