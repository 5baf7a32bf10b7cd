from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

from pyrsistent import pmap

from .. import config
from ..asm.state import EMPTY, State, UpdateSet
from ..exception import UnknownMachine
from ..txctl.enum import EventKind, Scheduling, WaitMode


class Outcome:
    """
    :ivar str Terminated: Every machine committed
    :ivar str BudgetExhausted: The step budget ran out first
    :ivar str Aborted: The run raised before either, see :meth:`taserial.runtime.engine.Engine.partial_trace`
    """
    Terminated = 'terminated'
    BudgetExhausted = 'budget-exhausted'
    Aborted = 'aborted'


def default_policies():
    return pmap(config.policies)


@dataclass(frozen=True)
class RunConfig:  # pylint: disable=too-many-instance-attributes
    """
    Run configuration

    :ivar tuple machines: :class:`taserial.asm.program.MachineProgram` objects
    :ivar int domain_size: Quantifiers range over ``0 .. domain_size - 1``
    :ivar pyrsistent.PMap registration: Machine to registration step, ``0`` if absent
    :ivar int seed: Master seed
    :ivar int max_steps: Step budget
    :ivar pyrsistent.PMap policies: :class:`taserial.txctl.enum.PolicyKind` to policy name
    :ivar str wait_mode: One of :class:`taserial.txctl.enum.WaitMode`
    :ivar str scheduling: One of :class:`taserial.txctl.enum.Scheduling`
    :ivar taserial.asm.state.State initial_state: Overrides the union of the machines' init sections
    """
    machines: tuple
    domain_size: int = config.run['domain_size']
    registration: object = field(default_factory=pmap)
    seed: int = config.run['seed']
    max_steps: int = config.run['max_steps']
    policies: object = field(default_factory=default_policies)
    wait_mode: str = WaitMode.Retry
    scheduling: str = Scheduling.Synchronous
    initial_state: Optional[State] = None

    def names(self):
        return tuple(sorted(program.name for program in self.machines))

    def program(self, machine):
        for program in self.machines:
            if program.name == machine:
                return program
        raise UnknownMachine(machine)

    def registered_at(self, machine):
        return self.registration.get(machine, 0)

    def domain(self):
        return tuple(range(self.domain_size))

    def evolve(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class MachineStep:  # pylint: disable=too-many-instance-attributes
    """
    What one machine did in one global step

    :ivar UpdateSet updates: Updates of a proper step
    :ivar frozenset reads: ``(Location, value)`` pairs read by a proper step, valued in the pre-step state
    :ivar tuple transition: ``(from, to)`` control states, if the control state changed
    :ivar bool proper: A proper step was performed
    :ivar bool recorded: A history entry was appended
    :ivar LockPair lock_request: Locks requested from the lock handler
    :ivar bool commit_call: Machine called for commit
    """
    updates: UpdateSet = EMPTY
    reads: frozenset = frozenset()
    transition: Optional[tuple] = None
    proper: bool = False
    recorded: bool = False
    lock_request: Optional[object] = None
    commit_call: bool = False


IDLE = MachineStep()


@dataclass(frozen=True)
class StepRecord:
    """
    :ivar int index: Global step index
    :ivar pyrsistent.PMap machines: Machine to :class:`MachineStep`, for the machines that stepped
    :ivar tuple events: :class:`taserial.txctl.types.Event` objects of the controller
    :ivar UpdateSet controller_updates: Restore updates of recovery
    :ivar str state_hash: Digest of the post-step state
    """
    index: int
    machines: object = field(default_factory=pmap)
    events: tuple = ()
    controller_updates: UpdateSet = EMPTY
    state_hash: str = ''

    def machine(self, m):
        return self.machines.get(m, IDLE)

    def updates(self):
        """The global update set of the step"""
        result = self.controller_updates
        for step in self.machines.values():
            result = result | step.updates
        return result


@dataclass(frozen=True)
class Trace:
    """
    A recorded run

    :ivar RunConfig config: Run configuration
    :ivar str config_digest: Digest of the configuration without seed and budget
    :ivar State initial_state: State before the first step
    :ivar tuple steps: :class:`StepRecord` objects
    :ivar State final_state: State after the last step
    :ivar str outcome: One of :class:`Outcome`
    """
    config: RunConfig
    config_digest: str
    initial_state: State
    steps: tuple
    final_state: State
    outcome: str

    @property
    def seed(self):
        return self.config.seed

    def machines(self):
        return self.config.names()

    def events(self, *kinds):
        for record in self.steps:
            for event in record.events:
                if not kinds or event.kind in kinds:
                    yield record.index, event

    def commit_order(self):
        """Committed machines by commit step"""
        return tuple(event.machine for _, event in self.events(EventKind.Commit))

    def committed(self):
        return frozenset(self.commit_order())

    def stats(self):
        """
        Run statistics

        :return dict: event counts by kind, plus ``steps`` and ``outcome``
        """
        counts = Counter(event.kind for _, event in self.events())
        stats = {kind: counts.get(kind, 0) for kind in (EventKind.Commit, EventKind.LockGrant, EventKind.LockRefuse,
                                                        EventKind.Victimize, EventKind.UndoApplied)}
        stats['steps'] = len(self.steps)
        stats['outcome'] = self.outcome
        return stats


@dataclass(frozen=True)
class ScheduleEntry:
    """
    :ivar int step: Global step index
    :ivar UpdateSet updates: Updates of the machine in the step
    :ivar frozenset reads: ``(Location, value)`` pairs read
    :ivar bool proper: A proper step was performed
    """
    step: int
    updates: UpdateSet = EMPTY
    reads: frozenset = frozenset()
    proper: bool = False


@dataclass(frozen=True)
class Schedule:
    machine: str
    entries: tuple = ()

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)
