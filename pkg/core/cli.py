# coding=utf-8
"""Command line: ``pauliclock run --config FILE`` and ``pauliclock validate --config FILE``."""
import argparse
import sys

from core.exceptions import ConfigError
from core.runner import EXIT_ERROR, ScenarioRunner
from core.scenario_config import load_config


def build_parser():
    parser = argparse.ArgumentParser(prog='pauliclock',
                                     description='Relational-time clock simulations with a self-adjoint time operator.')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='Run a scenario and write its reports')
    validate = sub.add_parser('validate', help='Check a scenario config without running it')
    for p in (run, validate):
        p.add_argument('--config', '-c', required=True, help='Scenario INI file')
        p.add_argument('--output-dir', '-o', default=None,
                       help='Output directory; overrides $PAULICLOCK_OUTPUT_DIR and the config')
        p.add_argument('--log-level', default=None, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                       help='Overrides the verbose flag of the config')
    run.add_argument('--no-timestamp', action='store_true',
                     help='Leave the generation time out of the reports so reruns are byte-identical')
    return parser


def main(argv=None):
    """
    Entry point.

    :param argv: Arguments without the program name, ``sys.argv[1:]`` when omitted.
    :return: Exit code: 0 all checks pass, 2 a check fails, 1 configuration or runtime error.
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, output_dir=args.output_dir)
    except ConfigError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_ERROR

    if args.command == 'run':
        runner = ScenarioRunner(config, timestamp=not args.no_timestamp, log_level=args.log_level)
        return runner.run()
    runner = ScenarioRunner(config, log_level=args.log_level or 'WARNING', log_to_file=False)
    code, text = runner.validate()
    print(text)
    return code
