"""
Line-delimited trace files.

A trace file holds a header record, one record per global step and a footer
record. Records are rendered with sorted keys and compact separators so that
equal traces produce byte-identical files.
"""
import logging

from pyrsistent import pmap

from .engine import config_digest
from .types import MachineStep, RunConfig, StepRecord, Trace
from .. import config
from ..asm.state import Location, State, UpdateSet, update_key
from ..asm.values import FALSE, TRUE, UNDEF, Boolean, Symbol, Undefined
from ..common import Object
from ..convert import ConversionError, fromjsonstr, tojsonstr
from ..exception import MalformedTrace
from ..lang import format_program, parse_program
from ..txctl.types import Event, LockPair


def encode_value(value):
    if isinstance(value, Boolean):
        return bool(value)
    if isinstance(value, Symbol):
        return value.name
    if isinstance(value, Undefined):
        return None
    return value


def decode_value(value):
    if isinstance(value, bool):
        return TRUE if value else FALSE
    if isinstance(value, str):
        return Symbol(value)
    if value is None:
        return UNDEF
    return value


def encode_location(location):
    return [location.func, [encode_value(arg) for arg in location.args]]


def decode_location(value):
    func, args = value
    return Location(func, tuple(decode_value(arg) for arg in args))


def encode_updates(updates):
    return [[encode_location(location), encode_value(value)] for location, value in sorted(updates, key=update_key)]


def decode_updates(value):
    return UpdateSet((decode_location(location), decode_value(v)) for location, v in value)


def encode_locks(locks):
    if locks is None:
        return None
    return dict(r=[encode_location(l) for l in sorted(locks.r_loc, key=lambda l: l.key())],
                w=[encode_location(l) for l in sorted(locks.w_loc, key=lambda l: l.key())])


def decode_locks(value):
    if value is None:
        return None
    return LockPair(frozenset(decode_location(l) for l in value.r), frozenset(decode_location(l) for l in value.w))


def _encode_state(state):
    return encode_updates(state.items())


def _decode_state(value, domain):
    return State(dict(decode_updates(value)), domain)


def _record(kind, **fields):
    obj = Object()
    obj.record = kind
    for key, value in fields.items():
        setattr(obj, key, value)
    return obj


def _encode_event(event):
    obj = Object()
    obj.kind = event.kind
    obj.machine = event.machine
    obj.locks = encode_locks(event.locks)
    obj.origin = event.origin
    obj.grant_step = event.grant_step
    obj.restored = encode_updates(event.restored)
    return obj


def _decode_event(obj):
    return Event(obj.kind, obj.machine, decode_locks(obj.locks), obj.origin, obj.grant_step, decode_updates(obj.restored))


def _encode_machine_step(step):
    obj = Object()
    obj.updates = encode_updates(step.updates)
    obj.reads = encode_updates(step.reads)
    obj.transition = list(step.transition) if step.transition else None
    obj.proper = step.proper
    obj.recorded = step.recorded
    obj.lock_request = encode_locks(step.lock_request)
    obj.commit_call = step.commit_call
    return obj


def _decode_machine_step(obj):
    return MachineStep(
        updates=decode_updates(obj.updates),
        reads=frozenset(decode_updates(obj.reads)),
        transition=tuple(obj.transition) if obj.transition else None,
        proper=obj.proper,
        recorded=obj.recorded,
        lock_request=decode_locks(obj.lock_request),
        commit_call=obj.commit_call
    )


def _encode_config(run_config):
    obj = Object()
    obj.machines = [format_program(program) for program in sorted(run_config.machines, key=lambda p: p.name)]
    obj.domain_size = run_config.domain_size
    obj.registration = dict(run_config.registration)
    obj.max_steps = run_config.max_steps
    obj.policies = dict(run_config.policies)
    obj.wait_mode = run_config.wait_mode
    obj.scheduling = run_config.scheduling
    obj.initial_state = _encode_state(run_config.initial_state) if run_config.initial_state is not None else None
    return obj


def _decode_config(obj, seed):
    domain = tuple(range(obj.domain_size))
    return RunConfig(
        machines=tuple(parse_program(text) for text in obj.machines),
        domain_size=obj.domain_size,
        registration=pmap(obj.registration.__dict__),
        seed=seed,
        max_steps=obj.max_steps,
        policies=pmap(obj.policies.__dict__),
        wait_mode=obj.wait_mode,
        scheduling=obj.scheduling,
        initial_state=_decode_state(obj.initial_state, domain) if obj.initial_state is not None else None
    )


def encode(trace):
    """
    Render a trace as lines of JSON

    :rtype: list[str]
    """
    lines = [tojsonstr(_record('header', version=config.trace['version'], config_digest=trace.config_digest,
                                seed=trace.seed, config=_encode_config(trace.config),
                                initial_state=_encode_state(trace.initial_state)), pretty_print=False)]
    for step in trace.steps:
        machines = Object()
        for m in sorted(step.machines):
            setattr(machines, m, _encode_machine_step(step.machines[m]))
        lines.append(tojsonstr(_record('step', index=step.index, machines=machines,
                                       events=[_encode_event(event) for event in step.events],
                                       controller_updates=encode_updates(step.controller_updates),
                                       state_hash=step.state_hash), pretty_print=False))
    lines.append(tojsonstr(_record('footer', final_state=_encode_state(trace.final_state), outcome=trace.outcome,
                                   steps=len(trace.steps)), pretty_print=False))
    return lines


def decode(lines):
    """
    Parse the lines of a trace file

    :raises taserial.exception.MalformedTrace: if the lines do not form a complete trace
    """
    lines = [line for line in lines if line.strip()]
    if len(lines) < 2:
        raise MalformedTrace('Trace is truncated', lines=len(lines))
    try:
        records = [fromjsonstr(line) for line in lines]
        header, body, footer = records[0], records[1:-1], records[-1]
        if header.record != 'header' or footer.record != 'footer':
            raise MalformedTrace('Missing header or footer record')
        if header.version != config.trace['version']:
            raise MalformedTrace('Unsupported trace version', version=header.version)
        run_config = _decode_config(header.config, header.seed)
        domain = run_config.domain()
        steps = []
        for record in body:
            if record.record != 'step' or record.index != len(steps):
                raise MalformedTrace('Unexpected record', position=len(steps) + 1)
            steps.append(StepRecord(
                record.index,
                pmap({m: _decode_machine_step(step) for m, step in record.machines.__dict__.items()}),
                tuple(_decode_event(event) for event in record.events),
                decode_updates(record.controller_updates),
                record.state_hash
            ))
        if footer.steps != len(steps):
            raise MalformedTrace('Step count does not match the footer', expected=footer.steps, actual=len(steps))
        trace = Trace(run_config, header.config_digest, _decode_state(header.initial_state, domain), tuple(steps),
                      _decode_state(footer.final_state, domain), footer.outcome)
    except MalformedTrace:
        raise
    except (ConversionError, AttributeError, TypeError, ValueError) as error:
        logging.getLogger().error('Could not decode trace. %s', {'reason': str(error)})
        raise MalformedTrace('Could not decode trace', error=str(error))
    if config_digest(run_config) != trace.config_digest:
        raise MalformedTrace('Configuration digest does not match', expected=trace.config_digest)
    return trace


def dumps(trace):
    return '\n'.join(encode(trace)) + '\n'


def loads(text):
    return decode(text.splitlines())


def dump(trace, path):
    with open(path, 'w', encoding='utf-8') as fd:
        fd.write(dumps(trace))
    logging.getLogger().info('Saved trace. %s', {'path': path, 'steps': len(trace.steps)})


def load(path):
    """
    Load a trace file

    :raises taserial.exception.MalformedTrace: if the file is not a complete trace
    """
    try:
        with open(path, 'r', encoding='utf-8') as fd:
            text = fd.read()
    except UnicodeDecodeError as error:
        logging.getLogger().error('Could not decode trace. %s', {'path': path, 'reason': str(error)})
        raise MalformedTrace('Trace is not UTF-8 text', path=path, error=str(error))
    return loads(text)
