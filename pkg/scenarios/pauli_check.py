# coding=utf-8
import itertools

import numpy as np

from core import grid_clock
from core.baseclass import ScenarioBase
from core.exceptions import PauliClockException
from core.history import ConstraintOperator, commutator_residual, random_history
from core.system import qubit


class PauliCheck(ScenarioBase):
    """
    Commutation structure on the clock grid: ``⟨[T̂, Ω̂]⟩ = i`` on interior Gaussian clock states, exact commutation
    of ``T̂⊗1`` with ``1⊗H``, Hermiticity of the constraint and agreement of the matrix-free constraint with its
    dense explicit-sum matrix.
    """
    NAME = 'pauli-check'
    DESCRIPTION = 'canonical commutator, Peres bypass and constraint oracle checks'
    TOLERANCES = {
        'commutator': 1e-4,
        'peres': 1e-12,
        'hermiticity': 1e-10,
        'oracle': 1e-12,
    }

    def __init__(self, config):
        super().__init__(config)
        self.widths = config.get_floats('widths', [1.0, 2.0])
        self.centers = config.get_floats('centers', [0.0, 1.5])
        self.seed = config.get_int('seed')
        self.peres_states = config.get_int('peres_states', 100)
        self.peres_points = config.get_int('peres_points', 64)
        self.peres_window = config.get_float('peres_window', 10.0)
        self.oracle_states = config.get_int('oracle_states', 20)
        self.oracle_points = config.get_int('oracle_points', 16)
        self.oracle_window = config.get_float('oracle_window', 8.0)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('n_points', self.config.n_points), ('window', self.config.window),
            ('hamiltonian', self.config.hamiltonian), ('widths', self.widths), ('centers', self.centers),
            ('seed', self.seed), ('peres_states', self.peres_states), ('peres_points', self.peres_points),
            ('peres_window', self.peres_window), ('oracle_states', self.oracle_states),
            ('oracle_points', self.oracle_points), ('oracle_window', self.oracle_window),
        ]

    def diagnose(self):
        diagnostics = super().diagnose()
        try:
            grid = self.factory_grid()
        except PauliClockException as e:
            return diagnostics + [('error', str(e))]
        for width, center in itertools.product(self.widths, self.centers):
            v = grid_clock.gaussian_vector(grid, center, width)
            if not grid_clock.boundary_negligible(grid, v.amplitudes):
                diagnostics.append(('warning', 'Gaussian clock state (width {:g}, centre {:g}) is not negligible at '
                                               'the window edge'.format(width, center)))
        return diagnostics

    def execute(self):
        grid = self.factory_grid()
        h = self.factory_hamiltonian()
        self._commutator(grid)
        self._peres(h)
        self._hermiticity(h)
        self._oracle(h)

    def _commutator(self, grid):
        rows = []
        for width, center in itertools.product(self.widths, self.centers):
            sandwich = grid_clock.commutator_sandwich(grid_clock.gaussian_vector(grid, center, width))
            if not sandwich.boundary_ok:
                self.warn('Gaussian clock state (width {:g}, centre {:g}) is not negligible at the window edge '
                          '(N={}, L={:g})'.format(width, center, grid.n_points, grid.window))
            self.check_close('commutator_w{:g}_c{:g}'.format(width, center), sandwich.value, 1j, 'commutator')
            rows.append({'width': width, 'center': center, 're': sandwich.value.real, 'im': sandwich.value.imag,
                         'boundary_ok': sandwich.boundary_ok})
        self.add_table('commutator', rows)

    def _peres(self, h):
        grid = grid_clock.make_grid(self.peres_points, self.peres_window)
        scale = np.max(np.abs(grid.times)) * np.linalg.norm(h.matrix, 2)
        worst = 0.0
        for i in range(self.peres_states):
            psi = random_history(grid, h.dim, self.seed + i)
            worst = max(worst, commutator_residual(psi, h) / max(scale, 1.0))
        self.record('peres_states', self.peres_states)
        self.check_at_most('peres_bypass', worst, 'peres')

    def _hermiticity(self, h):
        grid = grid_clock.make_grid(self.peres_points, self.peres_window)
        j = ConstraintOperator(grid, h)
        worst = 0.0
        for i in range(self.oracle_states):
            phi = random_history(grid, h.dim, self.seed + 2 * i + 10000)
            psi = random_history(grid, h.dim, self.seed + 2 * i + 10001)
            j_phi, j_psi = j.apply(phi), j.apply(psi)
            scale = j_phi.norm() * psi.norm() + phi.norm() * j_psi.norm()
            worst = max(worst, abs(phi.inner(j_psi) - j_phi.inner(psi)) / scale)
        self.check_at_most('constraint_hermitian', worst, 'hermiticity')

    def _oracle(self, h):
        if h.dim > 4:
            self.warn('dense oracle needs d <= 4; using qubit(1) instead of {}'.format(h.label))
            h = qubit(1.0)
        grid = grid_clock.make_grid(self.oracle_points, self.oracle_window)
        j = ConstraintOperator(grid, h)
        dense = j.dense()
        worst = 0.0
        for i in range(self.oracle_states):
            psi = random_history(grid, h.dim, self.seed + i + 20000)
            free = j.apply(psi).amplitudes.ravel()
            reference = dense @ psi.amplitudes.ravel()
            worst = max(worst, np.max(np.abs(free - reference)) / np.max(np.abs(reference)))
        self.record('oracle_grid', '{}x{}'.format(grid.n_points, h.dim))
        self.check_at_most('dense_oracle', worst, 'oracle')


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return PauliCheck(config)
