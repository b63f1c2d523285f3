# coding=utf-8
import os
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass, field
from typing import Dict, Optional

from core.exceptions import ConfigError

OUTPUT_DIR_VARIABLE = 'PAULICLOCK_OUTPUT_DIR'
DEFAULT_OUTPUT_DIR = 'results'


@dataclass
class ScenarioConfig:
    """
    Everything a scenario run needs, read from one INI file.

    :ivar scenario: Scenario name, e.g. ``weyl-sweep``.
    :vartype scenario: str
    :ivar n_points: ``[Grid] n_points``.
    :vartype n_points: int | None
    :ivar window: ``[Grid] window``.
    :vartype window: float | None
    :ivar spacing: ``[Grid] spacing``, the fixed Δt of sweeps that scale the window.
    :vartype spacing: float | None
    :ivar hamiltonian: Preset expression or matrix literal.
    :vartype hamiltonian: str
    :ivar initial_state: Preset expression or amplitude list.
    :vartype initial_state: str
    :ivar parameters: Raw ``[Parameters]`` values; use the typed getters.
    :vartype parameters: dict
    :ivar tolerances: ``[Tolerances]`` overrides.
    :vartype tolerances: dict
    :ivar output_dir: Where reports go.
    :vartype output_dir: str
    :ivar verbose: DEBUG instead of INFO logging.
    :vartype verbose: bool
    :ivar threads: Run sweep points on a :class:`core.multithreader.MultiThreader`.
    :vartype threads: bool
    """
    scenario: str
    n_points: Optional[int] = None
    window: Optional[float] = None
    spacing: Optional[float] = None
    hamiltonian: str = 'qubit(1)'
    initial_state: str = 'uniform'
    parameters: Dict[str, str] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    output_dir: str = DEFAULT_OUTPUT_DIR
    verbose: bool = False
    threads: bool = True
    source: Optional[str] = None

    def _raw(self, key, default):
        if key not in self.parameters:
            if default is ConfigError:
                raise ConfigError("[Parameters] {} is required for {}".format(key, self.scenario))
            return None, default
        return self.parameters[key], None

    def get_str(self, key, default=ConfigError):
        raw, fallback = self._raw(key, default)
        return fallback if raw is None else raw.strip()

    def get_float(self, key, default=ConfigError):
        raw, fallback = self._raw(key, default)
        if raw is None:
            return fallback
        try:
            return float(raw)
        except ValueError:
            raise ConfigError("[Parameters] {} must be a number, got {!r}".format(key, raw))

    def get_int(self, key, default=ConfigError):
        value = self.get_float(key, default)
        if value is None or value == int(value):
            return value if value is None else int(value)
        raise ConfigError("[Parameters] {} must be an integer, got {!r}".format(key, value))

    def get_bool(self, key, default=ConfigError):
        raw, fallback = self._raw(key, default)
        if raw is None:
            return fallback
        lowered = raw.strip().lower()
        if lowered not in ConfigParser.BOOLEAN_STATES:
            raise ConfigError("[Parameters] {} must be a boolean, got {!r}".format(key, raw))
        return ConfigParser.BOOLEAN_STATES[lowered]

    def get_floats(self, key, default=ConfigError):
        """Comma-separated list of numbers."""
        raw, fallback = self._raw(key, default)
        if raw is None:
            return fallback
        try:
            return [float(item) for item in raw.split(',') if item.strip()]
        except ValueError:
            raise ConfigError("[Parameters] {} must be a comma-separated list of numbers, got {!r}".format(key, raw))

    def get_lines(self, key, default=ConfigError):
        """Multi-line value, one entry per non-empty line."""
        raw, fallback = self._raw(key, default)
        if raw is None:
            return fallback
        return [line.strip() for line in raw.splitlines() if line.strip()]


def _read(parser, section, option, kind, default):
    if not parser.has_option(section, option):
        return default
    try:
        if kind is bool:
            return parser.getboolean(section, option)
        if kind is int:
            return parser.getint(section, option)
        if kind is float:
            return parser.getfloat(section, option)
        return parser.get(section, option).strip()
    except ValueError as e:
        raise ConfigError("[{}] {}: {}".format(section, option, e))


def parse_config(parser, source=None, output_dir=None):
    """
    Builds a :class:`ScenarioConfig` from a loaded parser.

    The output directory comes from ``output_dir`` if given, else from ``$PAULICLOCK_OUTPUT_DIR``, else from
    ``[Scenario] output_dir``.

    :type parser: ConfigParser
    :rtype: ScenarioConfig
    :raise ConfigError: on missing sections or badly typed values.
    """
    if not parser.has_section('Scenario') or not parser.has_option('Scenario', 'name'):
        raise ConfigError("config needs a [Scenario] section with a name")
    tolerances = {}
    if parser.has_section('Tolerances'):
        for key in parser.options('Tolerances'):
            tolerances[key] = _read(parser, 'Tolerances', key, float, None)
    config = ScenarioConfig(
        scenario=parser.get('Scenario', 'name').strip(),
        n_points=_read(parser, 'Grid', 'n_points', int, None),
        window=_read(parser, 'Grid', 'window', float, None),
        spacing=_read(parser, 'Grid', 'spacing', float, None),
        hamiltonian=_read(parser, 'Hamiltonian', 'preset', str, None) or _read(parser, 'Hamiltonian', 'matrix', str,
                                                                               'qubit(1)'),
        initial_state=_read(parser, 'InitialState', 'preset', str, None) or _read(parser, 'InitialState',
                                                                                 'amplitudes', str, 'uniform'),
        parameters=dict(parser.items('Parameters')) if parser.has_section('Parameters') else {},
        tolerances=tolerances,
        output_dir=_read(parser, 'Scenario', 'output_dir', str, DEFAULT_OUTPUT_DIR),
        verbose=_read(parser, 'Scenario', 'verbose', bool, False),
        threads=_read(parser, 'Scenario', 'threads', bool, True),
        source=source)
    if os.environ.get(OUTPUT_DIR_VARIABLE):
        config.output_dir = os.environ[OUTPUT_DIR_VARIABLE]
    if output_dir:
        config.output_dir = output_dir
    return config


def load_config(path, output_dir=None):
    """
    Reads an INI scenario file.

    :param path: Path to the ``.ini`` file.
    :type path: str
    :param output_dir: Overrides every other output directory setting.
    :type output_dir: str | None
    :rtype: ScenarioConfig
    :raise ConfigError: if the file is missing or malformed.
    """
    parser = ConfigParser(interpolation=None)
    try:
        with open(path, encoding='utf-8') as f:
            parser.read_file(f)
    except OSError as e:
        raise ConfigError("cannot read config {}: {}".format(path, e.strerror or e))
    except ConfigParserError as e:
        raise ConfigError("malformed config {}: {}".format(path, e))
    return parse_config(parser, source=path, output_dir=output_dir)


def config_from_string(text, output_dir=None):
    """:func:`load_config` for an in-memory INI document."""
    parser = ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except ConfigParserError as e:
        raise ConfigError("malformed config: {}".format(e))
    return parse_config(parser, output_dir=output_dir)
