"""
Serial runs and the serializability oracles.

The serial run of an order executes each machine alone, to its commit,
starting from the final state of its predecessor. A run is serializable iff
it is equivalent to the serial run of its commit order.
"""
import itertools
import logging
from dataclasses import replace

from pyrsistent import pmap

from .equivalence import divergence
from .types import Verdict, Witness
from .. import config
from ..exception import TooManyMachines, UncommittedMachine
from ..runtime.engine import Engine
from ..runtime.types import Outcome, Trace


def _shift(event, offset):
    return replace(event,
                   origin=event.origin + offset if event.origin is not None else None,
                   grant_step=event.grant_step + offset if event.grant_step is not None else None)


def solo_run(trace, m, state):
    """
    Run ``m`` alone from ``state`` with the configuration of ``trace``

    :raises taserial.exception.UncommittedMachine: if the machine does not commit within the step budget
    """
    solo_config = trace.config.evolve(machines=(trace.config.program(m),), registration=pmap(), initial_state=state,
                                      max_steps=max(trace.config.max_steps, len(trace.steps)))
    solo = Engine(solo_config).run()
    if solo.outcome != Outcome.Terminated:
        logging.getLogger().warning('Solo run did not commit. %s', {'machine': m, 'steps': len(solo.steps)})
        raise UncommittedMachine(m, 'Solo run did not commit')
    return solo


def build_serial_run(trace, order=None):
    """
    Serial run of ``order``, by default the commit order of ``trace``

    :rtype: taserial.runtime.types.Trace
    :raises taserial.exception.UncommittedMachine: if a machine of the order did not commit in ``trace``
    """
    committed = trace.committed()
    if order is None:
        order = trace.commit_order()
        uncommitted = [m for m in trace.machines() if m not in committed]
        if uncommitted:
            raise UncommittedMachine(uncommitted[0])
    for m in order:
        if m not in committed:
            raise UncommittedMachine(m)
    steps, state = [], trace.initial_state
    for m in order:
        solo = solo_run(trace, m, state)
        offset = len(steps)
        for record in solo.steps:
            steps.append(replace(record, index=record.index + offset,
                                 events=tuple(_shift(event, offset) for event in record.events)))
        state = solo.final_state
    return Trace(trace.config, trace.config_digest, trace.initial_state, tuple(steps), state, Outcome.Terminated)


def check_serializable(trace):
    """
    Compare a run with the serial run of its commit order. Uncommitted machines are left out and reported.

    :rtype: taserial.checker.types.Verdict
    """
    order = trace.commit_order()
    truncated = tuple(m for m in trace.machines() if m not in trace.committed())
    if truncated:
        logging.getLogger().info('Leaving out uncommitted machines. %s', {'machines': list(truncated)})
    try:
        serial = build_serial_run(trace, order)
    except UncommittedMachine as error:
        witness = Witness(error.machine, 0, 'uncommitted')
        return Verdict(False, order, witness, truncated)
    witness = divergence(trace, serial, order)
    verdict = Verdict(witness is None, order, witness, truncated)
    logging.getLogger().info('Serializability verdict. %s', {'serializable': verdict.serializable, 'order': list(order)})
    return verdict


def brute_force_serializable(trace, limit=None):
    """
    Search every order of the committed machines for an equivalent serial run

    :param int limit: Maximum number of machines, defaults to ``taserial.config.checker['brute_force_limit']``
    :rtype: taserial.checker.types.Verdict
    :raises taserial.exception.TooManyMachines: if more machines committed than ``limit``
    """
    limit = limit if limit is not None else config.checker['brute_force_limit']
    machines = sorted(trace.committed())
    if len(machines) > limit:
        raise TooManyMachines(len(machines), limit)
    truncated = tuple(m for m in trace.machines() if m not in trace.committed())
    first = None
    for order in itertools.permutations(machines):
        try:
            witness = divergence(trace, build_serial_run(trace, order), order)
        except UncommittedMachine as error:
            witness = Witness(error.machine, 0, 'uncommitted')
        if witness is None:
            return Verdict(True, order, None, truncated)
        first = first or witness
    return Verdict(False, (), first, truncated)
