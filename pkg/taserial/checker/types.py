from dataclasses import dataclass, field
from typing import Optional

from ..asm.state import EMPTY, UpdateSet
from ..common import Object
from ..runtime.types import Schedule, ScheduleEntry


@dataclass(frozen=True)
class CleansedEntry:
    """
    :ivar int step: Step index in the original run
    :ivar UpdateSet updates: Updates of the surviving proper step
    :ivar frozenset reads: ``(Location, value)`` pairs read by the step
    """
    step: int
    updates: UpdateSet = EMPTY
    reads: frozenset = frozenset()


@dataclass(frozen=True)
class CleansedSchedule:
    """
    Residue of a schedule after cleansing

    :ivar str machine: Machine identifier
    :ivar tuple entries: Surviving :class:`CleansedEntry` objects, in step order
    :ivar tuple removed_events: ``(step, Event)`` pairs deleted together with recovery and refusal segments
    """
    machine: str
    entries: tuple = ()
    removed_events: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.entries)

    def as_schedule(self):
        return Schedule(self.machine, tuple(ScheduleEntry(e.step, e.updates, e.reads, True) for e in self.entries))


@dataclass(frozen=True)
class Witness:
    """
    First divergence between two runs

    :ivar str machine: Machine whose cleansed schedules diverge
    :ivar int position: Position in the cleansed schedules
    :ivar str reason: ``updates``, ``reads`` or ``length``
    :ivar int step: Step index in the checked run, if any
    """
    machine: str
    position: int
    reason: str
    step: Optional[int] = None
    left: Optional[str] = None
    right: Optional[str] = None


@dataclass(frozen=True)
class Verdict:
    """
    :ivar bool serializable: The run is equivalent to the serial run of ``order``
    :ivar tuple order: Serial order of the committed machines
    :ivar Witness witness: First divergence, if not serializable
    :ivar tuple truncated: Uncommitted machines left out of the check
    """
    serializable: bool
    order: tuple = ()
    witness: Optional[Witness] = None
    truncated: tuple = ()

    def summary(self):
        """One-record rendering, as printed by the ``check`` command"""
        obj = Object()
        obj.verdict = 'Serializable' if self.serializable else 'NotSerializable'
        obj.order = list(self.order)
        obj.truncated = list(self.truncated)
        obj.witness = None
        if self.witness is not None:
            obj.witness = Object()
            for key, value in self.witness.__dict__.items():
                setattr(obj.witness, key, value)
        return obj
