"""
Run manifests.

A manifest is an INI file::

    [run]
    seed = 7
    max_steps = 300
    wait_mode = suspend

    [policies]
    victim = all

    [programs]
    files = counter.asm, reader.asm

    [registration]
    B = 5

A plain program file holding one or more ``machine`` blocks is accepted
instead of a manifest. Command line flags override manifest values, which
override the defaults of :mod:`taserial.config`.
"""
import configparser
import logging
import os

from pyrsistent import pmap

from .. import config
from ..common import layer
from ..exception import ConfigError, InputError
from ..lang import parse_programs
from ..runtime.types import RunConfig
from ..txctl import policies
from ..txctl.enum import PolicyKind, Scheduling, WaitMode, values

INTEGER_OPTIONS = ('seed', 'max_steps', 'domain_size')


def _read(path):
    try:
        with open(path, 'r', encoding='utf-8') as fd:
            return fd.read()
    except OSError as error:
        raise ConfigError('Could not read file', path=path, error=str(error))
    except UnicodeDecodeError as error:
        raise ConfigError('File is not UTF-8 text', path=path, error=str(error))


def is_manifest(text):
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith(('#', ';')):
            return line.startswith('[')
    return False


def _parse_manifest(path, text):
    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        parser.read_string(text, source=path)
    except configparser.Error as error:
        raise ConfigError('Invalid manifest', path=path, error=str(error))
    if not parser.has_option('programs', 'files'):
        raise ConfigError('Manifest lists no program files', path=path)
    base = os.path.dirname(os.path.abspath(path))
    machines = []
    for name in (f.strip() for f in parser.get('programs', 'files').split(',')):
        if name:
            machines.extend(parse_programs(_read(os.path.join(base, name))))
    run = dict(parser.items('run')) if parser.has_section('run') else {}
    chosen = dict(parser.items('policies')) if parser.has_section('policies') else {}
    registration = dict(parser.items('registration')) if parser.has_section('registration') else {}
    try:
        run = {k: int(v) if k in INTEGER_OPTIONS else v for k, v in run.items()}
        registration = {k: int(v) for k, v in registration.items()}
    except ValueError as error:
        raise ConfigError('Manifest option must be an integer', path=path, error=str(error))
    return tuple(machines), run, chosen, registration


def load_config(path, run=None, chosen=None):
    """
    Build a run configuration from a manifest or a program file

    :param str path: Manifest or program file
    :param dict run: Command line overrides of the ``[run]`` section, ``None`` values are ignored
    :param dict chosen: Command line overrides of the ``[policies]`` section
    :rtype: taserial.runtime.types.RunConfig
    :raises taserial.exception.ConfigError: if the configuration is not valid
    :raises taserial.exception.ParseError: if a program does not parse
    """
    text = _read(path)
    if is_manifest(text):
        machines, manifest_run, manifest_policies, registration = _parse_manifest(path, text)
    else:
        machines, manifest_run, manifest_policies, registration = parse_programs(text), {}, {}, {}
    settings = layer(config.run, manifest_run, run)
    selected = layer(config.policies, manifest_policies, chosen)
    run_config = build_config(machines, settings, selected, registration)
    logging.getLogger().debug('Loaded run configuration. %s', {'path': path, 'machines': list(run_config.names())})
    return run_config


def build_config(machines, settings, selected, registration=None):
    """
    :raises taserial.exception.ConfigError: on unknown options, names or values
    :raises taserial.exception.InputError: on unknown policies or modes
    """
    unknown = sorted(set(settings) - set(config.run))
    if unknown:
        raise ConfigError('Unknown run options', options=unknown)
    for kind, name in selected.items():
        if kind not in values(PolicyKind):
            raise InputError('Unknown policy kind', kind, values(PolicyKind))
        policies.get(kind, name)
    if settings['wait_mode'] not in values(WaitMode):
        raise InputError('Invalid wait mode', settings['wait_mode'], values(WaitMode))
    if settings['scheduling'] not in values(Scheduling):
        raise InputError('Invalid scheduling', settings['scheduling'], values(Scheduling))
    if settings['max_steps'] < 1 or settings['domain_size'] < 1:
        raise ConfigError('Step budget and domain size must be positive', max_steps=settings['max_steps'],
                          domain_size=settings['domain_size'])
    names = {program.name for program in machines}
    if len(names) != len(machines):
        raise ConfigError('Machine names must be unique')
    for name in registration or {}:
        if name not in names:
            raise ConfigError('Registration of an unknown machine', machine=name)
    for machine, func, reason in closed_system_violations(machines):
        logging.getLogger().warning('Closed system assumption violated. %s', {'machine': machine, 'function': func,
                                                                              'reason': reason})
    return RunConfig(
        machines=tuple(machines),
        domain_size=settings['domain_size'],
        registration=pmap(registration or {}),
        seed=settings['seed'],
        max_steps=settings['max_steps'],
        policies=pmap(selected),
        wait_mode=settings['wait_mode'],
        scheduling=settings['scheduling']
    )


def _writers(program):
    return set(program.shared) | set(program.output) | set(program.controlled())


def _readers(program):
    return set(program.shared) | set(program.monitored)


def closed_system_violations(machines):
    """
    External functions that no other machine provides or consumes

    :return list: ``(machine, function, reason)`` triples
    """
    violations = []
    for program in machines:
        others = [other for other in machines if other.name != program.name]
        for func in sorted(program.monitored):
            if not any(func in _writers(other) for other in others):
                violations.append((program.name, func, 'monitored function written by no other machine'))
        for func in sorted(program.shared):
            if not any(func in _readers(other) or func in other.output for other in others):
                violations.append((program.name, func, 'shared function not shared with another machine'))
        for func in sorted(program.output):
            if not any(func in _readers(other) for other in others):
                violations.append((program.name, func, 'output function read by no other machine'))
    return violations
