# coding=utf-8
from core import weyl
from core.baseclass import ScenarioBase
from core.exceptions import PauliClockException
from core.multithreader import run_jobs


class WeakConvergence(ScenarioBase):
    """
    Box-regularised history states against fixed test states ``θ(t)|φ⟩``. For a Gaussian ``θ`` both overlaps die
    off with ``m``; for ``θ ~ |t|^{-(1+2ε)}`` the ``T̂𝕁`` overlap tracks ``i(m/2)[θ*(m/2)+θ*(-m/2)]`` and stays finite.
    """
    NAME = 'weak-convergence'
    DESCRIPTION = 'weak limits of the box sequence under J and TJ'
    TOLERANCES = {
        'decrease': 10.0,
        'roundoff': 1e-13,
        'prediction': 0.05,
        'prediction_floor': 1e-8,
        'ratio_low': 0.5,
        'ratio_high': 2.0,
    }

    def __init__(self, config):
        super().__init__(config)
        self.m_values = config.get_floats('m_values', [5.0, 10.0, 20.0])
        self.theta_center = config.get_float('theta_center', 0.5)
        self.epsilon = config.get_float('epsilon', 0.05)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('n_points', self.config.n_points), ('window', self.config.window),
            ('hamiltonian', self.config.hamiltonian), ('initial_state', self.config.initial_state),
            ('m_values', self.m_values), ('theta_center', self.theta_center), ('epsilon', self.epsilon),
        ]

    def diagnose(self):
        diagnostics = super().diagnose()
        try:
            grid = self.factory_grid()
        except PauliClockException as e:
            return diagnostics + [('error', str(e))]
        for m in self.m_values:
            if m > weyl.BOX_WINDOW_FRACTION * grid.window:
                diagnostics.append(('error', 'window too small for box({:g}), need L >= {:g}'.format(
                    m, m / weyl.BOX_WINDOW_FRACTION)))
            elif not weyl.box_edge_on_grid(grid, m):
                diagnostics.append(('warning', 'box({:g}) edges fall between grid points'.format(m)))
        return diagnostics

    def execute(self):
        grid = self.factory_grid()
        h = self.factory_hamiltonian()
        psi0 = self.factory_state(h.dim)
        thetas = {
            'gaussian': weyl.make_theta(grid, 'gaussian', center=self.theta_center),
            'power': weyl.make_theta(grid, 'power', epsilon=self.epsilon),
        }
        probes = run_jobs([[weyl.weak_convergence_probe, (grid, theta, h, psi0, self.m_values)]
                           for theta in thetas.values()], self.config.threads)
        results = dict(zip(thetas, probes))
        rows = []
        for shape, probe in results.items():
            for row in probe:
                if not row.edge_on_grid:
                    self.warn('box({:g}) edges fall between grid points'.format(row.m))
                rows.append({'theta': shape, 'm': row.m,
                             'a_re': row.a.real, 'a_im': row.a.imag, 'a_pred_re': row.a_pred.real,
                             'a_pred_im': row.a_pred.imag, 'b_re': row.b.real, 'b_im': row.b.imag,
                             'b_pred_re': row.b_pred.real, 'b_pred_im': row.b_pred.imag,
                             'a_ratio': row.a_ratio, 'b_ratio': row.b_ratio})
        self.add_table('weak_convergence', rows)
        self._check_gaussian(results['gaussian'])
        self._check_power(results['power'])

    def _check_gaussian(self, probe):
        floor = self.tolerances['roundoff']
        for previous, row in zip(probe, probe[1:]):
            decreased = abs(row.a) < floor or abs(row.a) * self.tolerances['decrease'] <= abs(previous.a)
            self.check_true('gaussian_a_decrease_m{:g}'.format(row.m), decreased, value=abs(row.a))
        for row in probe:
            for name, value, predicted in (('a', row.a, row.a_pred), ('b', row.b, row.b_pred)):
                if abs(predicted) >= self.tolerances['prediction_floor']:
                    self.check_close('gaussian_{}_prediction_m{:g}'.format(name, row.m), value, predicted,
                                     'prediction', relative=True)

    def _check_power(self, probe):
        low, high = self.tolerances['ratio_low'], self.tolerances['ratio_high']
        for row in probe:
            ratio = row.b_ratio
            self.check_true('power_b_ratio_m{:g}'.format(row.m), ratio is not None and low <= ratio <= high,
                            value=ratio)
        self.record('power_b_moduli', [abs(row.b) for row in probe])


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return WeakConvergence(config)
