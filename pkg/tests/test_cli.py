# coding=utf-8
import glob
import json
import os

import pytest

from core.cli import build_parser, main
from core.runner import EXIT_CHECKS_FAILED, EXIT_ERROR, EXIT_OK, ScenarioRunner, available_scenarios
from core.scenario_config import config_from_string, load_config

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')

SCENARIOS = ['bandwidth-sweep', 'pauli-check', 'schrodinger-recovery', 'spectral-support', 'weak-convergence',
             'weyl-sweep']

PAULI = """
[Scenario]
name = pauli-check
threads = False

[Grid]
n_points = 256
window = 24

[Hamiltonian]
preset = qubit(1)

[Parameters]
widths = 1
centers = 0
seed = 3
peres_states = 5
oracle_states = 5
"""


def _results(directory):
    with open(os.path.join(directory, 'results.json'), encoding='utf-8') as f:
        return json.load(f)


def test_scenarios_are_discovered():
    assert sorted(available_scenarios()) == SCENARIOS


def test_parser_requires_config():
    with pytest.raises(SystemExit):
        build_parser().parse_args(['run'])


def test_run_passing_scenario(write_config, tmp_path):
    out = str(tmp_path / 'out')
    assert main(['run', '-c', write_config(PAULI), '-o', out, '--no-timestamp']) == EXIT_OK
    document = _results(out)
    assert document['scenario'] == 'pauli-check'
    assert document['passed'] is True
    assert {check['name'] for check in document['checks']} >= {'commutator_w1_c0', 'peres_bypass',
                                                               'constraint_hermitian', 'dense_oracle'}
    assert os.path.exists(os.path.join(out, 'commutator.csv'))
    assert os.path.exists(os.path.join(out, 'summary.txt'))
    assert os.path.exists(os.path.join(out, 'run.log'))


def test_runs_are_deterministic(write_config, tmp_path):
    path = write_config(PAULI)
    first, second = str(tmp_path / 'a'), str(tmp_path / 'b')
    assert main(['run', '-c', path, '-o', first, '--no-timestamp']) == EXIT_OK
    assert main(['run', '-c', path, '-o', second, '--no-timestamp']) == EXIT_OK
    for name in ('results.json', 'commutator.csv', 'summary.txt'):
        with open(os.path.join(first, name), 'rb') as a, open(os.path.join(second, name), 'rb') as b:
            assert a.read() == b.read()


def test_tiny_grid_fails_checks(tmp_path):
    out = str(tmp_path / 'tiny')
    assert main(['run', '-c', os.path.join(CONFIG_DIR, 'pauli_check_tiny.ini'), '-o', out]) == EXIT_CHECKS_FAILED
    document = _results(out)
    assert document['passed'] is False
    assert 'generated' in document
    assert any('window edge' in warning for warning in document['warnings'])
    failed = [check['name'] for check in document['checks'] if not check['passed']]
    assert any(name.startswith('commutator') for name in failed)


def test_unknown_scenario(write_config, tmp_path):
    path = write_config('[Scenario]\nname = time-machine\n')
    assert main(['run', '-c', path, '-o', str(tmp_path / 'out')]) == EXIT_ERROR
    assert main(['validate', '-c', path]) == EXIT_ERROR


def test_missing_config_file(tmp_path, capsys):
    assert main(['run', '-c', str(tmp_path / 'absent.ini')]) == EXIT_ERROR
    assert 'cannot read config' in capsys.readouterr().err


def test_invalid_hamiltonian_is_a_runtime_error(write_config, tmp_path):
    path = write_config(PAULI.replace('preset = qubit(1)', 'matrix = 0, 1; 0, 0'))
    assert main(['run', '-c', path, '-o', str(tmp_path / 'out')]) == EXIT_ERROR


def test_unwritable_output_dir(write_config, tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('x')
    assert main(['run', '-c', write_config(PAULI), '-o', str(blocker / 'out')]) == EXIT_ERROR


def test_unknown_tolerance_is_rejected(write_config, tmp_path):
    path = write_config(PAULI + '\n[Tolerances]\nwobble = 1\n')
    assert main(['validate', '-c', path]) == EXIT_ERROR


def test_missing_seed_is_rejected(write_config, capsys):
    path = write_config(PAULI.replace('seed = 3\n', ''))
    assert main(['validate', '-c', path]) == EXIT_ERROR
    assert 'seed is required' in capsys.readouterr().out


def test_validate_reports_window_too_small(write_config, capsys):
    path = write_config('[Scenario]\nname = weyl-sweep\n[Grid]\nn_points = 200\nwindow = 10\n'
                        '[Parameters]\nn_values = 4, 16\n')
    assert main(['validate', '-c', path]) == EXIT_CHECKS_FAILED
    out = capsys.readouterr().out
    assert 'window too small for gaussian(4), need L >= 20' in out
    assert out.rstrip().endswith('invalid')


def test_validate_prints_parameter_table(write_config, capsys):
    assert main(['validate', '-c', write_config(PAULI)]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'seed' in out
    assert out.rstrip().endswith('ok')


@pytest.mark.parametrize('path', sorted(glob.glob(os.path.join(CONFIG_DIR, '*.ini'))))
def test_shipped_configs_validate(path):
    config = load_config(path)
    assert config.scenario in SCENARIOS
    code, text = ScenarioRunner(config, log_level='ERROR', log_to_file=False).validate()
    assert code == EXIT_OK, text


@pytest.mark.parametrize('path', sorted(glob.glob(os.path.join(CONFIG_DIR, '*.ini'))))
def test_shipped_configs_rerun_byte_identical(path, tmp_path):
    first, second = str(tmp_path / 'a'), str(tmp_path / 'b')
    arguments = ['run', '-c', path, '--no-timestamp', '--log-level', 'ERROR', '-o']
    assert main(arguments + [first]) == main(arguments + [second])
    names = sorted(name for name in os.listdir(first) if name != 'run.log')
    assert 'results.json' in names
    assert names == sorted(name for name in os.listdir(second) if name != 'run.log')
    for name in names:
        with open(os.path.join(first, name), 'rb') as a, open(os.path.join(second, name), 'rb') as b:
            assert a.read() == b.read(), name


def test_spectral_support_reports_one_spacing_capture(write_config, tmp_path):
    path = write_config('[Scenario]\nname = spectral-support\nthreads = False\n[Grid]\nn_points = 512\nwindow = 200\n'
                        '[Parameters]\ncapture_spacings = 2\nhann = True\nexport_spectrum = False\n')
    out = str(tmp_path / 'support')
    main(['run', '-c', path, '-o', out, '--no-timestamp'])
    quantities = _results(out)['quantities']
    assert 0.95 < quantities['captured_fraction_one_spacing'] < 0.99
    assert quantities['eigenstate_frequency'] == -1.0
    assert 0.9 < quantities['eigenstate_captured_fraction_one_spacing'] < 0.99
    assert quantities['eigenstate_captured_fraction'] > quantities['eigenstate_captured_fraction_one_spacing']
    assert 'captured_fraction_one_spacing' not in {check['name'] for check in _results(out)['checks']}


def test_runner_validate_without_cli():
    config = config_from_string(PAULI)
    code, text = ScenarioRunner(config, log_level='ERROR', log_to_file=False).validate()
    assert code == EXIT_OK
    assert 'pauli-check' in text


@pytest.mark.slow
@pytest.mark.parametrize('name', ['spectral_support', 'weak_convergence', 'weyl_sweep', 'schrodinger_recovery',
                                  'bandwidth_sweep', 'pauli_check'])
def test_shipped_scenarios_pass(name, tmp_path):
    out = str(tmp_path / name)
    code = main(['run', '-c', os.path.join(CONFIG_DIR, name + '.ini'), '-o', out, '--no-timestamp',
                 '--log-level', 'WARNING'])
    document = _results(out)
    assert code == EXIT_OK, [check for check in document['checks'] if not check['passed']]
    assert document['passed'] is True
