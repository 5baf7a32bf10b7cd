import argparse
import sys

from . import commands
from .. import config
from ..txctl import policies
from ..txctl.enum import PolicyKind, Scheduling, WaitMode, values


def policy(text):
    """``KIND=NAME`` pair of the ``--policy`` flag"""
    kind, sep, name = text.partition('=')
    if not sep or kind not in values(PolicyKind):
        raise argparse.ArgumentTypeError('expected KIND=NAME with KIND one of %s' % ', '.join(values(PolicyKind)))
    if name not in policies.names(kind):
        options = ', '.join(policies.names(kind))
        raise argparse.ArgumentTypeError('unknown %s policy %r, options: %s' % (kind, name, options))
    return kind, name


def build_parser():
    parser = argparse.ArgumentParser(prog='taserial', description='Transactional runs of concurrent state machines')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    run = subparsers.add_parser('run', help='run a configuration')
    run.add_argument('config', help='manifest or program file')
    run.add_argument('--seed', type=int, help='master seed, defaults to TASERIAL_SEED')
    run.add_argument('--max-steps', type=int, help='step budget')
    run.add_argument('--trace', help='trace output file')
    run.add_argument('--wait-mode', choices=values(WaitMode))
    run.add_argument('--scheduling', choices=values(Scheduling))
    run.add_argument('--policy', type=policy, action='append', metavar='KIND=NAME', help='selection policy')
    run.set_defaults(handler=commands.cmd_run)

    check = subparsers.add_parser('check', help='check a trace for serializability')
    check.add_argument('trace', help='trace file')
    check.add_argument('--brute-force', action='store_true', help='search every serial order')
    check.set_defaults(handler=commands.cmd_check)

    fuzz = subparsers.add_parser('fuzz', help='run and check random configurations')
    fuzz.add_argument('--runs', type=int, default=config.fuzz['runs'])
    fuzz.add_argument('--machines', type=int, default=config.fuzz['machines'])
    fuzz.add_argument('--seed', type=int, default=config.run['seed'])
    fuzz.add_argument('--locations', type=int, default=config.fuzz['locations'])
    fuzz.add_argument('--phases', type=int, default=config.fuzz['phases'])
    fuzz.add_argument('--max-steps', type=int, default=config.run['max_steps'])
    fuzz.add_argument('--wait-mode', choices=values(WaitMode) + ['mixed'], default=config.fuzz['wait_mode'])
    fuzz.add_argument('--jobs', type=int, default=config.fuzz['jobs'])
    fuzz.add_argument('--dump-dir', help='directory for the traces of failing runs')
    fuzz.add_argument('--brute-force', action='store_true', help='also search every serial order')
    fuzz.add_argument('--self-test', action='store_true', help='first check that a forged anomaly is rejected')
    fuzz.set_defaults(handler=commands.cmd_fuzz)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    sys.exit(args.handler(args))
