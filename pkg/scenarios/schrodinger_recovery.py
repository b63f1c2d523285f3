# coding=utf-8
import re

import numpy as np

from core.baseclass import ScenarioBase, nyquist_diagnostics
from core.exceptions import PauliClockException
from core.history import build_history, condition, constraint_convergence, schrodinger_residual
from core.system import propagate, SystemState


def _slug(label):
    return re.sub(r'[^A-Za-z0-9.]+', '_', label).strip('_')


class SchrodingerRecovery(ScenarioBase):
    """
    Conditioning the history on each clock reading gives back the Schrödinger evolution, and the rows satisfy
    ``(-iD_t + H)ψ = 0`` on the interior. Also records how the constraint residual behaves as ``N`` doubles.
    """
    NAME = 'schrodinger-recovery'
    DESCRIPTION = 'conditioned history rows against exact propagation'
    TOLERANCES = {
        'fidelity': 1e-10,
        'norm': 1e-10,
        'residual': 1e-6,
        'convergence_floor': 1e-10,
    }

    def __init__(self, config):
        super().__init__(config)
        self.presets = config.get_lines('presets', [config.hamiltonian])
        self.convergence_points = [int(n) for n in config.get_floats('convergence_points', [64, 128, 256, 512])]
        self.export_history = config.get_bool('export_history', True)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('n_points', self.config.n_points), ('window', self.config.window),
            ('presets', self.presets), ('initial_state', self.config.initial_state),
            ('convergence_points', self.convergence_points), ('export_history', self.export_history),
        ]

    def diagnose(self):
        diagnostics = super().diagnose()
        try:
            grid = self.factory_grid()
            for preset in self.presets:
                h = self.factory_hamiltonian(preset)
                self.factory_state(h.dim)
                diagnostics.extend(nyquist_diagnostics(grid, h))
        except PauliClockException as e:
            diagnostics.append(('error', str(e)))
        if any(b <= a for a, b in zip(self.convergence_points, self.convergence_points[1:])):
            diagnostics.append(('error', 'convergence_points must increase'))
        return diagnostics

    def execute(self):
        grid = self.factory_grid()
        conditioning = []
        for index, preset in enumerate(self.presets):
            h = self.factory_hamiltonian(preset)
            psi0 = self.factory_state(h.dim)
            tag = _slug(h.label)
            history = build_history(grid, h, psi0)
            reference = propagate(h, psi0, grid.times)
            fidelities = []
            for k in range(grid.n_points):
                conditioned = condition(history, k)
                fidelity = conditioned.state.fidelity(SystemState(reference[k]))
                fidelities.append(fidelity)
                conditioning.append({'hamiltonian': h.label, 'k': k, 't': conditioned.time, 'fidelity': fidelity,
                                     'weight': conditioned.weight})
            self.check_close('{}_min_fidelity'.format(tag), float(np.min(fidelities)), 1.0, 'fidelity')
            self.check_close('{}_norm_sq'.format(tag), history.norm() ** 2, grid.window, 'norm', relative=True)
            self.check_at_most('{}_schrodinger_residual'.format(tag), schrodinger_residual(history, h), 'residual')
            if index == 0 and self.export_history:
                self.histories['history_' + tag] = history
        self.add_table('conditioning', conditioning)
        self._convergence(grid)

    def _convergence(self, grid):
        h = self.factory_hamiltonian(self.presets[0])
        points = constraint_convergence(h, self.factory_state(h.dim), grid.window, self.convergence_points)
        self.add_table('convergence', [{'N': p.n_points, 'periodic_residual': p.periodic,
                                        'interior_residual': p.interior, 'order': p.order} for p in points])
        floor = self.tolerances['convergence_floor']
        interior = [p.interior for p in points]
        decreasing = all(b < a or b < floor for a, b in zip(interior, interior[1:]))
        self.check_true('interior_residual_decreasing', decreasing, value=interior)
        self.record('periodic_residuals', [p.periodic for p in points])


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return SchrodingerRecovery(config)
