from dataclasses import dataclass, replace
from typing import Optional

from .enum import CtlState
from ..asm.state import EMPTY, UpdateSet


@dataclass(frozen=True)
class LockPair:
    """
    Read and write locations of a lock request or of a set of held locks

    :ivar frozenset r_loc: Locations to R-lock
    :ivar frozenset w_loc: Locations to W-lock
    """
    r_loc: frozenset = frozenset()
    w_loc: frozenset = frozenset()

    def __bool__(self):
        return bool(self.r_loc or self.w_loc)

    def __or__(self, other):
        return LockPair(self.r_loc | other.r_loc, self.w_loc | other.w_loc)

    def locations(self):
        return self.r_loc | self.w_loc

    def __repr__(self):
        return 'R%r W%r' % (sorted(self.r_loc, key=lambda l: l.key()), sorted(self.w_loc, key=lambda l: l.key()))


NO_LOCKS = LockPair()


@dataclass(frozen=True)
class HistoryEntry:
    """
    One record of a machine's undo history

    :ivar UpdateSet val_set: Shared and output locations written by the step, with their overwritten values
    :ivar LockPair lock_set: Locks obtained for the step
    :ivar UpdateSet private_set: Controlled locations written by the step, with their overwritten values
    :ivar int origin: Global step that recorded the entry
    :ivar int grant_step: Global step in which ``lock_set`` was granted, if any
    :ivar bool proper: ``False`` for an entry recording granted locks without a proper step
    """
    val_set: UpdateSet = EMPTY
    lock_set: LockPair = NO_LOCKS
    private_set: UpdateSet = EMPTY
    origin: int = 0
    grant_step: Optional[int] = None
    proper: bool = True

    def restore_set(self):
        return self.val_set | self.private_set


@dataclass(frozen=True)
class TxControlBlock:
    """
    Transactional bookkeeping of one machine

    :ivar str machine: Machine identifier
    :ivar str ctl_state: One of :class:`taserial.txctl.enum.CtlState`
    :ivar tuple history: History entries, oldest first
    :ivar LockPair refused: Refusal flag set by the lock handler
    :ivar LockPair granted: Grant flag set by the lock handler
    :ivar int grant_step: Step of the grant behind ``granted``
    """
    machine: str
    ctl_state: str = CtlState.NotRegistered
    history: tuple = ()
    refused: Optional[LockPair] = None
    granted: Optional[LockPair] = None
    grant_step: Optional[int] = None

    def youngest(self):
        return self.history[-1] if self.history else None

    def proper_count(self):
        return sum(1 for entry in self.history if entry.proper)

    def evolve(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class LockRequest:
    """
    :ivar LockPair locks: Requested locks
    :ivar int since: Step of the request
    """
    locks: LockPair
    since: int


@dataclass(frozen=True)
class Event:
    """
    Controller event of a global step

    :ivar str kind: One of :class:`taserial.txctl.enum.EventKind`
    :ivar str machine: Subject of the event
    :ivar LockPair locks: Granted, refused or released locks
    :ivar int origin: Step of the undone history entry
    :ivar int grant_step: Grant step of the undone history entry
    :ivar UpdateSet restored: Restore updates of an undo
    """
    kind: str
    machine: str
    locks: Optional[LockPair] = None
    origin: Optional[int] = None
    grant_step: Optional[int] = None
    restored: UpdateSet = EMPTY


@dataclass(frozen=True)
class VictimCandidate:
    """
    Standing of a deadlocked machine, as seen by the victim policies

    :ivar int history: Length of the machine's history
    :ivar int restarts: Times the machine was victimized before
    :ivar int registered: Registration step
    """
    history: int
    restarts: int = 0
    registered: int = 0
