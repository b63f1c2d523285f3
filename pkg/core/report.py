# coding=utf-8
import csv
import datetime
import json
import numbers
import os

import numpy as np

from core.exceptions import OutputError
from misc.formatting import format_table, format_value, multiple_of

SCHEMA_VERSION = 1
RESULTS_FILE = 'results.json'
SUMMARY_FILE = 'summary.txt'


def to_jsonable(value):
    """Complex numbers become ``{"re": .., "im": ..}``, numpy scalars and arrays become plain Python."""
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        return float(value)
    if isinstance(value, numbers.Complex):
        return {'re': float(value.real), 'im': float(value.imag)}
    return value


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return repr(float(value))
    return str(value)


class ReportWriter:
    """
    Writes everything a scenario produced into one output directory: ``results.json``, one CSV per table,
    ``summary.txt`` and columnar history exports. Given the same result and ``timestamp=False`` the files are
    byte-identical between runs.

    :ivar path: Output directory.
    :type path: str
    :vartype path: str
    :ivar timestamp: Stamp the results and summary with the generation time.
    :type timestamp: bool
    :vartype timestamp: bool
    """
    def __init__(self, path, timestamp=True):
        self.path = path
        self.timestamp = timestamp
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as e:
            raise OutputError("cannot create output directory {}: {}".format(path, e.strerror or e))

    def _open(self, name):
        try:
            return open(os.path.join(self.path, name), 'w', encoding='utf-8', newline='')
        except OSError as e:
            raise OutputError("cannot write {} in {}: {}".format(name, self.path, e.strerror or e))

    def write(self, result):
        """
        All files for one :class:`core.baseclass.ScenarioResult`.

        :return: Names of the files written.
        :rtype: list[str]
        """
        written = [self.write_results(result)]
        for name, rows in result.tables.items():
            written.append(self.write_table(name, rows))
        for name, history in result.histories.items():
            written.append(self.write_history(name, history))
        written.append(self.write_summary(result))
        return written

    def write_results(self, result):
        document = {'schema_version': SCHEMA_VERSION, 'scenario': result.name}
        if self.timestamp:
            document['generated'] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')
        document.update({
            'passed': result.passed,
            'parameters': {key: value for key, value in result.parameters},
            'quantities': result.quantities,
            'checks': [{'name': c.name, 'value': c.value, 'target': c.target, 'tolerance': c.tolerance,
                        'passed': c.passed} for c in result.checks],
            'tables': sorted(name + '.csv' for name in result.tables),
            'warnings': result.warnings,
        })
        with self._open(RESULTS_FILE) as f:
            json.dump(to_jsonable(document), f, indent=2, allow_nan=True)
            f.write('\n')
        return RESULTS_FILE

    def write_table(self, name, rows):
        """CSV with a header row, comma delimiter and ``.`` decimal separator."""
        filename = name + '.csv'
        with self._open(filename) as f:
            if rows:
                writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()), lineterminator='\n')
                writer.writeheader()
                for row in rows:
                    writer.writerow({key: _cell(value) for key, value in row.items()})
        return filename

    def write_history(self, name, history):
        """
        Columnar export of a history state: ``k, t, re_0, im_0, re_1, im_1, …`` preceded by ``#`` comment lines.

        :type history: core.history.HistoryState
        """
        filename = name + '.csv'
        grid = history.grid
        columns = ['k', 't'] + [part + '_' + str(i) for i in range(history.sys_dim) for part in ('re', 'im')]
        with self._open(filename) as f:
            f.write('# history state, N={}, L={!r}, d={}, normalization={}\n'.format(
                grid.n_points, grid.window, history.sys_dim, history.normalization))
            f.write('# row k holds the system amplitudes at clock reading t_k = (k - N/2)*L/N\n')
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(columns)
            for k, (t, row) in enumerate(zip(grid.times, history.amplitudes)):
                cells = [str(k), _cell(t)]
                for amplitude in row:
                    cells.extend((_cell(amplitude.real), _cell(amplitude.imag)))
                writer.writerow(cells)
        return filename

    def write_summary(self, result):
        failed = result.failed_checks
        lines = ['PauliClock scenario: {}'.format(result.name)]
        if self.timestamp:
            lines.append('generated: {}'.format(
                datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')))
        lines += ['', 'Parameters', format_table(result.parameters), '', 'Checks']
        for check in result.checks:
            lines.append('  [{}] {} = {} (target {}, tolerance {})'.format(
                'PASS' if check.passed else 'FAIL', check.name, format_value(check.value),
                format_value(check.target), format_value(check.tolerance)))
        if result.warnings:
            lines += ['', 'Warnings'] + ['  ' + warning for warning in result.warnings]
        lines += ['', '{} of {} passed; {}.'.format(
            len(result.checks) - len(failed), multiple_of(len(result.checks), 'check', 'checks', True),
            'all checks passed' if not failed else multiple_of(len(failed), 'failure', 'failures', True))]
        with self._open(SUMMARY_FILE) as f:
            f.write('\n'.join(lines) + '\n')
        return SUMMARY_FILE
