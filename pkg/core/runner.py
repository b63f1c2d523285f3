# coding=utf-8
import pkgutil
import traceback

import scenarios
from core import logprovider
from core.baseclass import ScenarioBase
from core.exceptions import ConfigError, OutputError, PauliClockException
from core.report import ReportWriter
from misc.formatting import format_table

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECKS_FAILED = 2


def available_scenarios():
    """
    Maps scenario names to their modules under ``scenarios/``. Module ``weyl_sweep`` provides ``weyl-sweep``.

    :rtype: dict
    """
    package = scenarios
    prefix = package.__name__ + "."
    found = {}
    for importer, modname, ispkg in pkgutil.iter_modules(package.__path__, prefix):
        module = __import__(modname, fromlist="dummy")
        if hasattr(module, 'init'):
            found[modname[len(prefix):].replace('_', '-')] = module
    return found


class ScenarioRunner:
    """
    Loads the scenario a config names, runs or validates it, and maps the outcome to an exit code: 0 when every
    check passes, 2 when a check fails, 1 on configuration, runtime or output errors.

    :ivar config: The scenario configuration.
    :vartype config: core.scenario_config.ScenarioConfig
    :type config: core.scenario_config.ScenarioConfig
    :ivar timestamp: Stamp report files with the generation time.
    :vartype timestamp: bool
    :type timestamp: bool
    :ivar logger: Central runner logger.
    :vartype logger: logging.Logger
    :type logger: logging.Logger
    """

    def __init__(self, config, timestamp=True, log_level=None, log_to_file=True):
        self.config = config
        self.timestamp = timestamp
        level = log_level or ("INFO", "DEBUG")[config.verbose]
        self.logger = logprovider.setup_logging(log_level=level,
                                                log_dir=config.output_dir if log_to_file else None)

    def load_scenario(self):
        """
        Imports the scenario module named in the config and verifies that the object it provides is properly set up.

        :rtype: core.baseclass.ScenarioBase
        :raise ConfigError: for unknown scenario names or scenarios that fail their integrity check.
        """
        found = available_scenarios()
        if self.config.scenario not in found:
            raise ConfigError("unknown scenario {!r}, expected one of {}".format(
                self.config.scenario, ', '.join(sorted(found))))
        # every scenario module has to have an object provider.
        scenario = found[self.config.scenario].init(self.config)
        if not isinstance(scenario, ScenarioBase):
            raise ConfigError('Module {} does not inherit from ScenarioBase class'.format(
                scenario.__class__.__name__))
        try:
            scenario.integrity_check()
        except AssertionError as e:
            raise ConfigError("{}: {}".format(scenario.__class__.__name__, e))
        self.logger.debug('Scenario "{}" is initialized and ready.'.format(scenario.__class__.__name__))
        return scenario

    def run(self):
        """
        Runs the scenario and writes its reports.

        :return: Exit code.
        :rtype: int
        """
        try:
            scenario = self.load_scenario()
            result = scenario.run()
            written = ReportWriter(self.config.output_dir, self.timestamp).write(result)
        except OutputError as e:
            self.logger.error("Output error: {}".format(e))
            return EXIT_ERROR
        except (ConfigError, PauliClockException, ValueError) as e:
            self.logger.error("{}: {}".format(e.__class__.__name__, e))
            return EXIT_ERROR
        except Exception as e:
            self.logger.error(traceback.format_exc())
            self.logger.error("{} error: {} < {}".format(self.config.scenario, e.__class__.__name__, e))
            return EXIT_ERROR
        self.logger.info("Wrote {} to {}".format(', '.join(written), self.config.output_dir))
        failed = result.failed_checks
        if failed:
            self.logger.warning("{} of {} checks failed: {}".format(
                len(failed), len(result.checks), ', '.join(check.name for check in failed)))
            return EXIT_CHECKS_FAILED
        self.logger.info("All {} checks passed.".format(len(result.checks)))
        return EXIT_OK

    def validate(self):
        """
        Static validation: builds the scenario, prints its effective parameter table and any diagnostics.

        :return: ``(exit code, report text)``; 0 for "ok", 2 when a diagnostic is an error, 1 when the scenario
                 cannot be loaded.
        :rtype: tuple[int, str]
        """
        try:
            scenario = self.load_scenario()
            diagnostics = scenario.diagnose()
            parameters = scenario.parameter_table()
        except (PauliClockException, ValueError) as e:
            self.logger.error("{}: {}".format(e.__class__.__name__, e))
            return EXIT_ERROR, "error: {}".format(e)
        lines = [format_table(parameters), '']
        for level, message in diagnostics:
            lines.append('{}: {}'.format(level, message))
            (self.logger.error if level == 'error' else self.logger.warning)(message)
        errors = [message for level, message in diagnostics if level == 'error']
        lines.append('ok' if not errors else 'invalid')
        return (EXIT_CHECKS_FAILED if errors else EXIT_OK), '\n'.join(lines)
