# coding=utf-8
import logging
import os
import sys

FORMAT = '%(asctime)s [%(levelname)s] -- [%(name)s:%(module)s/%(funcName)s] -- %(message)s'
LOGGING_LEVELS = {"NOTSET": logging.NOTSET, "DEBUG": logging.DEBUG,
                  "INFO": logging.INFO, "WARNING": logging.WARNING,
                  "ERROR": logging.ERROR, "CRITICAL": logging.CRITICAL}
TIME_FORMAT = '%H:%M:%S'
LOGGER_NAMES = ('runner', 'scenario', 'numerics')
LOG_FILE = 'run.log'


# noinspection PyMissingConstructor
class _SingleLevelFilter(logging.Filter):
    """
    Filters a certain logging-level out - used to split warnings and errors to stderr while INFO goes to stdout.

    :ivar passlevel: The logging level from where the split should occur.
    :type passlevel: int
    :vartype passlevel: int
    :ivar reject: Sets if these messages should be displayed in that handler.
    :type reject: bool
    :vartype reject: bool
    """
    def __init__(self, passlevel, reject):
        self.passlevel = passlevel
        self.reject = reject

    def filter(self, record):
        if self.reject:
            return record.levelno != self.passlevel
        else:
            return record.levelno == self.passlevel


def _level(name):
    if isinstance(name, int):
        return name
    try:
        return LOGGING_LEVELS[name.upper()]
    except KeyError:
        raise ValueError("unknown log level {!r}, expected one of {}".format(name, ', '.join(LOGGING_LEVELS)))


def setup_logging(log_level="INFO", console_log_level=None, log_dir=None):
    """
    Sets up the ``runner``, ``scenario`` and ``numerics`` loggers: INFO to stdout, everything else to stderr, and
    optionally a full DEBUG log in ``<log_dir>/run.log``. Calling it again replaces the handlers, so repeated runs
    in one process do not duplicate output.

    :param log_level: Level on which the loggers operate
    :type log_level: str
    :param console_log_level: Determines the console log level, which is usually the same as `log_level`
    :type console_log_level: str
    :param log_dir: Directory for the run log, ``None`` for console only
    :type log_dir: str | None
    :return: The ``runner`` logger.
    :rtype: logging.Logger
    """
    if console_log_level is None:
        console_log_level = log_level
    log_level = _level(log_level)
    console_log_level = _level(console_log_level)

    logging_format = logging.Formatter(FORMAT, datefmt=TIME_FORMAT)

    # Separating error and regular output
    filter_info = _SingleLevelFilter(logging.INFO, True)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_log_level)
    console_handler.setFormatter(logging_format)
    console_handler.addFilter(filter_info)

    not_filter_info = _SingleLevelFilter(logging.INFO, False)
    standard_handler = logging.StreamHandler(sys.stdout)
    standard_handler.setLevel(console_log_level)
    standard_handler.setFormatter(logging_format)
    standard_handler.addFilter(not_filter_info)

    handlers = [console_handler, standard_handler]
    file_error = None
    if log_dir:
        try:
            os.makedirs(log_dir, exist_ok=True)
            file_handler = logging.FileHandler(os.path.join(log_dir, LOG_FILE), mode='w', encoding='utf-8')
        except OSError as e:
            file_error = e
        else:
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging_format)
            handlers.append(file_handler)

    for name in LOGGER_NAMES:
        logger = logging.getLogger(name)
        logger.propagate = False
        logger.setLevel(log_level)
        for old in list(logger.handlers):
            logger.removeHandler(old)
            old.close()
        for handler in handlers:
            logger.addHandler(handler)

    runner_logger = logging.getLogger('runner')
    runner_logger.debug("PauliClock logger initialized.")
    if file_error:
        runner_logger.warning("No run log in {}: {}".format(log_dir, file_error))
    return runner_logger
