from .types import Schedule, ScheduleEntry
from ..exception import UnknownMachine


def project_schedule(trace, m):
    """
    Projection of a trace onto one machine: one entry per global step, empty where the machine did not step

    :raises taserial.exception.UnknownMachine: if ``m`` is not part of the run
    """
    if m not in trace.machines():
        raise UnknownMachine(m)
    entries = []
    for record in trace.steps:
        step = record.machine(m)
        entries.append(ScheduleEntry(record.index, step.updates, step.reads, step.proper))
    return Schedule(m, tuple(entries))
