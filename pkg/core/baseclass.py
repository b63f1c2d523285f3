# coding=utf-8
import logging
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from core import grid_clock
from core.exceptions import ConfigError, PauliClockException
from core.system import make_hamiltonian, make_state


@dataclass
class CheckRecord:
    """
    One asserted quantity.

    :ivar name: Check name, unique within a run.
    :ivar value: Measured value.
    :ivar target: Expected value or bound, ``None`` for plain predicates.
    :ivar tolerance: Tolerance applied, ``None`` when not numeric.
    :ivar passed: Outcome.
    """
    name: str
    value: Any
    target: Any
    tolerance: Optional[float]
    passed: bool


@dataclass
class ScenarioResult:
    """Everything a finished scenario hands to the report writer."""
    name: str
    parameters: List[tuple]
    quantities: Dict[str, Any]
    checks: List[CheckRecord]
    tables: Dict[str, List[dict]]
    histories: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self):
        return [check for check in self.checks if not check.passed]


class ScenarioBase(metaclass=ABCMeta):
    """
    ScenarioBase is the basis of every scenario: it holds the config, the tolerances and everything a scenario
    records while it runs. The abstract methods have to be overwritten, otherwise the scenario won't load.

    .. centered:: Methods with an hashtag (#) have to be implemented and overwritten by your scenario.

    :ivar NAME: Scenario name as written in configs, e.g. ``weyl-sweep``.
    :type NAME: str
    :vartype NAME: str
    :ivar DESCRIPTION: One line on what the scenario demonstrates.
    :type DESCRIPTION: str
    :vartype DESCRIPTION: str
    :ivar TOLERANCES: Default tolerance per check key; ``[Tolerances]`` in the config overrides them.
    :type TOLERANCES: dict
    :vartype TOLERANCES: dict
    :ivar logger: Logger for scenarios.
    :type logger: logging.Logger
    :vartype logger: logging.Logger
    :ivar config: The scenario configuration.
    :type config: core.scenario_config.ScenarioConfig
    :vartype config: core.scenario_config.ScenarioConfig
    """
    NAME = None
    DESCRIPTION = None
    TOLERANCES = {}

    def __init__(self, config):
        self.logger = self.factory_logger()
        self.config = config
        self.tolerances = dict(self.TOLERANCES)
        for key, value in config.tolerances.items():
            if key not in self.tolerances:
                raise ConfigError("unknown tolerance {!r} for {}, expected one of {}"
                                  .format(key, self.NAME, ', '.join(sorted(self.tolerances))))
            self.tolerances[key] = value
        self.checks = []
        self.quantities = {}
        self.tables = {}
        self.histories = {}
        self.warnings = []

    def integrity_check(self):
        """Checks if the most important variables are initialized properly.

        :return: True if possible
        :rtype: bool
        :raise: AssertionError
        """
        assert self.NAME and self.DESCRIPTION, \
            "Failed constant variable integrity check. Check your object and its initialization."
        assert self.config.scenario == self.NAME, \
            "Scenario {} got a config for {}".format(self.NAME, self.config.scenario)
        return True

    @staticmethod
    def factory_logger():
        """
        Returns a Logger named 'scenario'.

        :return: Unchilded Logger 'scenario'
        :rtype: logging.Logger
        """
        return logging.getLogger("scenario")

    # Factories for what most scenarios share.

    def factory_grid(self):
        if self.config.n_points is None or self.config.window is None:
            raise ConfigError("{} needs [Grid] n_points and window".format(self.NAME))
        return grid_clock.make_grid(self.config.n_points, self.config.window)

    def factory_hamiltonian(self, expression=None):
        return make_hamiltonian(self.config.hamiltonian if expression is None else expression)

    def factory_state(self, dim, expression=None):
        return make_state(self.config.initial_state if expression is None else expression, dim)

    def factory_spacing(self):
        if self.config.spacing is None:
            raise ConfigError("{} needs [Grid] spacing".format(self.NAME))
        if not self.config.spacing > 0:
            raise ConfigError("[Grid] spacing must be positive")
        return self.config.spacing

    # Recording.

    def record(self, name, value):
        self.quantities[name] = value

    def add_table(self, name, rows):
        self.tables[name] = list(rows)

    def warn(self, message):
        self.warnings.append(message)
        self.logger.warning(message)

    def _add_check(self, name, value, target, tolerance, passed):
        record = CheckRecord(name, value, target, tolerance, bool(passed))
        self.checks.append(record)
        self.logger.log(logging.INFO if record.passed else logging.WARNING,
                        '{} {}: value {!r}, target {!r}, tolerance {!r}'.format(
                            'PASS' if record.passed else 'FAIL', name, value, target, tolerance))
        return record

    def check_close(self, name, value, target, tolerance_key, relative=False):
        """``|value - target| <= tol``, or ``<= tol·|target|`` when ``relative``."""
        tolerance = self.tolerances[tolerance_key]
        error = abs(value - target)
        bound = tolerance * abs(target) if relative else tolerance
        return self._add_check(name, value, target, tolerance, np.isfinite(error) and error <= bound)

    def check_at_most(self, name, value, limit_key):
        limit = self.tolerances[limit_key]
        return self._add_check(name, value, limit, None, np.isfinite(value) and value <= limit)

    def check_at_least(self, name, value, limit):
        return self._add_check(name, value, limit, None, np.isfinite(value) and value >= limit)

    def check_true(self, name, condition, value=None):
        return self._add_check(name, condition if value is None else value, None, None, condition)

    # Lifecycle.

    @abstractmethod
    def parameter_table(self):
        """
        # Effective parameters after defaults, as ``(key, value)`` pairs in a fixed order.

        :rtype: list[tuple]
        """
        pass

    @abstractmethod
    def execute(self):
        """
        # Runs the numerics and records quantities, tables and checks.
        """
        pass

    def diagnose(self):
        """
        Static validation without running. Subclasses extend it; the default checks that the Hamiltonian, the
        initial state and the grid build, and that the system frequencies are below Nyquist.

        :return: ``(level, message)`` pairs, level ``'error'`` or ``'warning'``.
        :rtype: list[tuple]
        """
        diagnostics = []
        try:
            h = self.factory_hamiltonian()
            self.factory_state(h.dim)
        except (PauliClockException, ValueError) as e:
            return [('error', str(e))]
        if self.config.n_points is not None and self.config.window is not None:
            try:
                grid = grid_clock.make_grid(self.config.n_points, self.config.window)
            except PauliClockException as e:
                return [('error', str(e))]
            diagnostics.extend(nyquist_diagnostics(grid, h))
        return diagnostics

    def run(self):
        """
        Executes the scenario.

        :rtype: ScenarioResult
        """
        self.logger.info('Running {}: {}'.format(self.NAME, self.DESCRIPTION))
        self.execute()
        return ScenarioResult(self.NAME, self.parameter_table(), self.quantities, self.checks, self.tables,
                              self.histories, self.warnings)


def nyquist_diagnostics(grid, h):
    top = float(np.max(np.abs(h.eigenvalues)))
    if top > grid.nyquist:
        return [('warning', "system frequency {:g} exceeds the Nyquist frequency piN/L = {:.1f} "
                            "(N={}, L={:g})".format(top, grid.nyquist, grid.n_points, grid.window))]
    return []
