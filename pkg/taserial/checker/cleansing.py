"""
Cleansing of schedules.

Operation (1) deletes the steps in which a machine contributes no update:
lock requests, refused requests, waiting and commit calls. Operation (2)
deletes everything a recovery of the machine took back: the recovery
brackets, the victimization and undo events, and the proper steps whose
history entries were undone.
"""
import logging
from dataclasses import dataclass

from .types import CleansedEntry, CleansedSchedule
from ..exception import MalformedTrace
from ..lib import SeedStream
from ..runtime.schedule import project_schedule
from ..txctl.enum import CtlState, EventKind

RECOVERY_EVENTS = (EventKind.Victimize, EventKind.Unvictimize, EventKind.UndoApplied)


@dataclass(frozen=True)
class RecoveryUnit:
    """
    Deletion unit of operation (2)

    :ivar int entry: Step entering ``waitForRecovery``, ``None`` for undo steps outside any bracket
    :ivar int exit: Step leaving ``waitForRecovery``, ``None`` while the bracket is open
    :ivar frozenset undone: Origins of the history entries undone in the unit
    :ivar frozenset steps: Step indexes the unit deletes
    """
    entry: object
    exit: object
    undone: frozenset
    steps: frozenset


def _brackets(trace, m):
    brackets, opened = [], None
    for record in trace.steps:
        transition = record.machine(m).transition
        if transition == (CtlState.TACtl, CtlState.WaitForRecovery):
            opened = record.index
        elif transition == (CtlState.WaitForRecovery, CtlState.TACtl):
            if opened is None:
                raise MalformedTrace('Recovery exit without entry', machine=m, step=record.index)
            brackets.append((opened, record.index))
            opened = None
    if opened is not None:
        if m in trace.committed():
            raise MalformedTrace('Recovery bracket open on a committed machine', machine=m, step=opened)
        brackets.append((opened, None))
    return brackets


def recovery_units(trace, m):
    """
    Operation (2) deletion units of ``m``. Each undo step belongs to the
    bracket that encloses or follows it.

    :raises taserial.exception.MalformedTrace: on unmatched brackets or an undo of an unrecorded step
    """
    recorded = {record.index for record in trace.steps if record.machine(m).recorded}
    undos = []
    for index, event in trace.events(EventKind.UndoApplied):
        if event.machine != m:
            continue
        if event.origin not in recorded:
            raise MalformedTrace('Undo of a step that was never recorded', machine=m, step=index, origin=event.origin)
        undos.append((index, event.origin))
    units = []
    for entry, exit_ in _brackets(trace, m):
        mine = [(i, o) for i, o in undos if exit_ is None or i <= exit_]
        undos = [(i, o) for i, o in undos if not (exit_ is None or i <= exit_)]
        steps = {entry} | ({exit_} if exit_ is not None else set())
        steps.update(i for i, _ in mine)
        units.append(RecoveryUnit(entry, exit_, frozenset(o for _, o in mine), frozenset(steps)))
    for index, origin in undos:
        units.append(RecoveryUnit(None, None, frozenset([origin]), frozenset([index])))
    return units


def _removed_events(trace, m, undone):
    grants = set()
    for _, event in trace.events(EventKind.UndoApplied):
        if event.machine == m and event.origin in undone and event.grant_step is not None:
            grants.add(event.grant_step)
    removed = []
    for index, event in trace.events():
        if event.machine != m:
            continue
        if event.kind in RECOVERY_EVENTS or event.kind == EventKind.LockRefuse:
            removed.append((index, event))
        elif event.kind == EventKind.LockGrant and index in grants:
            removed.append((index, event))
    return tuple(removed)


def cleanse_schedule(schedule, undone=frozenset()):
    """Apply both operations to a projected schedule, given the origins of the undone steps"""
    entries = tuple(CleansedEntry(entry.step, entry.updates, entry.reads) for entry in schedule
                    if entry.proper and entry.updates and entry.step not in undone)
    return CleansedSchedule(schedule.machine, entries)


def cleanse(trace, m):
    """
    Cleansed schedule of ``m``

    :rtype: taserial.checker.types.CleansedSchedule
    :raises taserial.exception.MalformedTrace: on unmatched brackets or an undo of an unrecorded step
    """
    units = recovery_units(trace, m)
    undone = frozenset().union(*(unit.undone for unit in units))
    cleansed = cleanse_schedule(project_schedule(trace, m), undone)
    logging.getLogger().debug('Cleansed schedule. %s', {'machine': m, 'entries': len(cleansed), 'undone': len(undone)})
    return CleansedSchedule(m, cleansed.entries, _removed_events(trace, m, undone))


def cleanse_confluent(trace, m, order_seed):
    """
    Cleansed schedule of ``m``, deleting one unit at a time in a seeded random order.
    Every order yields :func:`cleanse`.
    """
    schedule = project_schedule(trace, m)
    productive = frozenset(entry.step for entry in schedule if entry.proper and entry.updates)
    units = [frozenset([entry.step]) for entry in schedule if entry.step not in productive]
    units.extend(unit.undone | (unit.steps - productive) for unit in recovery_units(trace, m))
    SeedStream(order_seed).random('cleanse', m).shuffle(units)
    surviving = {entry.step: entry for entry in schedule}
    for unit in units:
        for step in unit:
            surviving.pop(step, None)
    entries = tuple(CleansedEntry(e.step, e.updates, e.reads) for _, e in sorted(surviving.items()))
    return CleansedSchedule(m, entries)
