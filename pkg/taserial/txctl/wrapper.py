"""
The transactional wrapper of a machine.

In control state ``TA-ctl`` a machine either observes its victimization,
calls for commit, requests the locks its next step needs, or performs that
step. A step is recorded in the machine's history together with the values
it overwrites, so that recovery can undo it.
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional

from .controller import ControllerDelta, NO_DELTA
from .enum import CtlState
from .types import NO_LOCKS, HistoryEntry, LockPair, LockRequest
from ..asm.state import EMPTY, UpdateSet
from ..exception import IllegalControlState, InconsistentUpdateSet


def rule_stream(seeds, tcb):
    """Choose stream of the machine's next proper step"""
    return seeds.fork('machine', tcb.machine, tcb.proper_count())


def new_locks(program, state, lock_table, rng):
    """
    Locks the next step of ``program`` needs and does not hold yet

    :rtype: taserial.txctl.types.LockPair
    """
    rw = program.analyzer().rule(program.rule, state, {}, rng)
    held = lock_table.locked_by(program.name)
    r_loc = frozenset(l for l in rw.reads if program.is_readable_external(l)) - held.locations()
    w_loc = frozenset(l for l in rw.writes if program.is_writable_external(l)) - held.w_loc
    return LockPair(r_loc, w_loc)


def new_locks_needed(program, state, lock_table, rng):
    return bool(new_locks(program, state, lock_table, rng))


def overwritten_values(program, state, updates):
    """Current values of the shared and output locations ``updates`` writes"""
    return UpdateSet((l, state.get(l)) for l in updates.locations() if program.is_writable_external(l))


def private_values(program, state, updates):
    """Current values of the controlled locations ``updates`` writes"""
    return UpdateSet((l, state.get(l)) for l in updates.locations() if program.is_controlled(l))


@dataclass(frozen=True)
class WrapperStep:  # pylint: disable=too-many-instance-attributes
    """
    Output of a wrapper in one global step

    :ivar str ctl_state: Control state after the step
    :ivar ControllerDelta delta: Controller calls, as controller state edits
    :ivar UpdateSet updates: Updates of a proper step
    :ivar frozenset reads: ``(Location, value)`` pairs read by a proper step
    :ivar HistoryEntry record: Entry appended to the history
    :ivar LockPair lock_request: Locks requested from the lock handler
    :ivar bool commit_call: Machine called for commit
    :ivar bool consumed: Grant and refusal flags were consumed
    :ivar bool proper: A proper step was performed
    """
    ctl_state: str
    delta: ControllerDelta = NO_DELTA
    updates: UpdateSet = EMPTY
    reads: frozenset = frozenset()
    record: Optional[HistoryEntry] = None
    lock_request: Optional[LockPair] = None
    commit_call: bool = False
    consumed: bool = False
    proper: bool = False

    def apply(self, tcb):
        """Control block after the step"""
        history = tcb.history + (self.record,) if self.record is not None else tcb.history
        if self.consumed:
            return replace(tcb, ctl_state=self.ctl_state, history=history, granted=None, refused=None, grant_step=None)
        return replace(tcb, ctl_state=self.ctl_state, history=history)


def _proper_step(tcb, program, state, rng, step, **kwargs):
    read = set()
    updates = program.interpreter(read.add).yields(program.rule, state, {}, rng)
    if not updates.consistent():
        logging.getLogger().error('Machine produced an inconsistent update set. %s', {'machine': tcb.machine, 'step': step})
        raise InconsistentUpdateSet(updates.clashes())
    record = HistoryEntry(
        val_set=overwritten_values(program, state, updates),
        lock_set=kwargs.get('lock_set', NO_LOCKS),
        private_set=private_values(program, state, updates),
        origin=step,
        grant_step=kwargs.get('grant_step')
    )
    logging.getLogger().debug('Proper step. %s', {'machine': tcb.machine, 'step': step, 'updates': repr(updates)})
    return WrapperStep(
        CtlState.TACtl,
        delta=ControllerDelta(waiting_cleared=frozenset([tcb.machine])),
        updates=updates,
        reads=frozenset((l, state.get(l)) for l in read),
        record=record,
        consumed=kwargs.get('consumed', False),
        proper=True
    )


def wrapper_step(tcb, program, state, cs, seeds, step):
    """
    One transition of the wrapper of ``tcb.machine``

    :param taserial.txctl.types.TxControlBlock tcb: Control block
    :param taserial.asm.program.MachineProgram program: Program of the machine
    :param taserial.asm.state.State state: Pre-step state
    :param taserial.txctl.controller.ControllerState cs: Pre-step controller state
    :param taserial.lib.SeedStream seeds: Run stream
    :param int step: Global step index
    :rtype: WrapperStep
    :raises taserial.exception.IllegalControlState: if the machine is not active
    """
    m = tcb.machine
    if tcb.ctl_state == CtlState.TACtl:
        if cs.is_victim(m):
            logging.getLogger().debug('Machine waits for recovery. %s', {'machine': m, 'step': step})
            return WrapperStep(CtlState.WaitForRecovery)
        if program.is_terminated(state):
            logging.getLogger().debug('Machine calls for commit. %s', {'machine': m, 'step': step})
            return WrapperStep(
                CtlState.Done,
                delta=ControllerDelta(commits_added=frozenset([(m, step)]), waiting_cleared=frozenset([m])),
                commit_call=True
            )
        rng = rule_stream(seeds, tcb)
        locks = new_locks(program, state, cs.lock_table, rng)
        if locks:
            return WrapperStep(
                CtlState.WaitForLocks,
                delta=ControllerDelta(requests_added=frozenset([(m, LockRequest(locks, step))]),
                                      waiting_set=frozenset([(m, locks)])),
                lock_request=locks
            )
        return _proper_step(tcb, program, state, rng, step)

    if tcb.ctl_state == CtlState.WaitForLocks:
        if tcb.granted is not None:
            rng = rule_stream(seeds, tcb)
            if new_locks_needed(program, state, cs.lock_table, rng):
                logging.getLogger().debug('Granted locks do not cover the step. %s', {'machine': m, 'step': step})
                return WrapperStep(
                    CtlState.TACtl,
                    record=HistoryEntry(lock_set=tcb.granted, origin=step, grant_step=tcb.grant_step, proper=False),
                    consumed=True
                )
            return _proper_step(tcb, program, state, rng, step, lock_set=tcb.granted, grant_step=tcb.grant_step,
                                consumed=True)
        if tcb.refused is not None:
            return WrapperStep(CtlState.TACtl, consumed=True)
        return WrapperStep(CtlState.WaitForLocks)

    if tcb.ctl_state == CtlState.WaitForRecovery:
        if cs.is_victim(m):
            return WrapperStep(CtlState.WaitForRecovery)
        logging.getLogger().debug('Machine recovered. %s', {'machine': m, 'step': step})
        return WrapperStep(CtlState.TACtl)

    raise IllegalControlState(m, tcb.ctl_state)
