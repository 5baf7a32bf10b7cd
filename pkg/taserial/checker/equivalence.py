import logging

from .cleansing import cleanse
from .types import Witness
from ..exception import ConfigMismatch


def _render(items):
    return repr(sorted(items, key=lambda item: (item[0].key(), repr(item[1]))))


def compare(left, right):
    """
    First position where two cleansed schedules of the same machine differ

    :return: a :class:`taserial.checker.types.Witness`, or ``None``
    """
    for position, (a, b) in enumerate(zip(left.entries, right.entries)):
        if a.updates != b.updates:
            return Witness(left.machine, position, 'updates', a.step, repr(a.updates), repr(b.updates))
        if a.reads != b.reads:
            return Witness(left.machine, position, 'reads', a.step, _render(a.reads), _render(b.reads))
    if len(left) != len(right):
        position = min(len(left), len(right))
        step = left.entries[position].step if position < len(left) else None
        return Witness(left.machine, position, 'length', step, str(len(left)), str(len(right)))
    return None


def divergence(trace_a, trace_b, machines=None):
    """
    First divergence between the cleansed schedules of two runs of one configuration

    :param list machines: Machines to compare, defaults to every machine of the configuration
    :return: a :class:`taserial.checker.types.Witness`, or ``None`` if the runs are equivalent
    :raises taserial.exception.ConfigMismatch: if the runs belong to different configurations
    """
    if trace_a.config_digest != trace_b.config_digest:
        raise ConfigMismatch(trace_a.config_digest, trace_b.config_digest)
    for m in machines if machines is not None else trace_a.machines():
        witness = compare(cleanse(trace_a, m), cleanse(trace_b, m))
        if witness is not None:
            logging.getLogger().debug('Runs diverge. %s', {'machine': m, 'position': witness.position,
                                                           'reason': witness.reason})
            return witness
    return None


def equivalent(trace_a, trace_b, machines=None):
    """
    Two runs are equivalent iff every machine has position-wise equal cleansed
    update sets and reads the same values at the same positions
    """
    return divergence(trace_a, trace_b, machines) is None
