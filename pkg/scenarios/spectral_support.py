# coding=utf-8
from core.baseclass import ScenarioBase
from core.history import build_history, frequency_mass, spectral_support
from core.system import SystemState, zero


class SpectralSupport(ScenarioBase):
    """
    The history's ω-mass sits on the lines ``ω = -ω_k``; a stationary system puts all of it at ``ω = 0``.

    The captured fraction is checked with the configured radius and taper. The plain one-spacing capture without
    taper is recorded next to it, for the configured state and for the top eigenstate alone.
    """
    NAME = 'spectral-support'
    DESCRIPTION = 'frequency-domain support of the history state'
    TOLERANCES = {
        'captured': 0.99,
        'stationary': 1e-12,
    }

    def __init__(self, config):
        super().__init__(config)
        self.capture_spacings = config.get_float('capture_spacings', 1.0)
        self.hann = config.get_bool('hann', False)
        self.export_spectrum = config.get_bool('export_spectrum', True)

    def parameter_table(self):
        return [
            ('scenario', self.NAME), ('n_points', self.config.n_points), ('window', self.config.window),
            ('hamiltonian', self.config.hamiltonian), ('initial_state', self.config.initial_state),
            ('capture_spacings', self.capture_spacings), ('hann', self.hann),
        ]

    def diagnose(self):
        diagnostics = super().diagnose()
        if not self.capture_spacings > 0:
            diagnostics.append(('error', 'capture_spacings must be positive'))
        return diagnostics

    def execute(self):
        grid = self.factory_grid()
        h = self.factory_hamiltonian()
        psi0 = self.factory_state(h.dim)
        history = build_history(grid, h, psi0)
        report = spectral_support(history, h, self.capture_spacings, self.hann)
        if not report.nyquist_ok:
            self.warn('system frequencies exceed the Nyquist frequency {:g}'.format(grid.nyquist))
        self.check_true('below_nyquist', report.nyquist_ok)
        self.add_table('spectral_lines', [{'eigenvalue': line.eigenvalue, 'line_frequency': line.frequency,
                                           'fraction': line.fraction} for line in report.lines])
        self.record('capture_radius', report.radius)
        self.check_at_least('captured_fraction', report.captured, self.tolerances['captured'])
        self.record('captured_fraction_one_spacing', spectral_support(history, h).captured)

        # single line at -ω_top
        eigenstate = SystemState(h.eigenvectors[:, -1])
        line = build_history(grid, h, eigenstate)
        self.record('eigenstate_frequency', -float(h.eigenvalues[-1]))
        self.record('eigenstate_captured_fraction',
                    spectral_support(line, h, self.capture_spacings, self.hann).captured)
        self.record('eigenstate_captured_fraction_one_spacing', spectral_support(line, h).captured)

        stationary = zero(h.dim)
        baseline = spectral_support(build_history(grid, stationary, psi0), stationary, self.capture_spacings,
                                    self.hann)
        self.check_close('stationary_captured_fraction', baseline.captured, 1.0, 'stationary')

        if self.export_spectrum:
            mass = frequency_mass(history, self.hann)
            self.add_table('spectrum', [{'omega': omega, 'mass': m} for omega, m in zip(grid.freqs, mass)])


def init(config):
    """Init Call from module importer to return only the object itself, rather than the module."""
    return SpectralSupport(config)
