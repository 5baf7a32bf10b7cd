from .enum import CtlState, LockMode, WaitMode, Scheduling, EventKind, PolicyKind  # noqa: E402, F401
from .types import LockPair, NO_LOCKS, HistoryEntry, TxControlBlock, LockRequest, Event  # noqa: E402, F401
from .locktable import LockTable  # noqa: E402, F401
from . import policies  # noqa: E402, F401
from .controller import (  # noqa: E402, F401
    ControllerState, ControllerDelta, ComponentStep, Signal, SignalKind, TransactionController,
    cannot_be_granted, wait_relation, deadlock_cycles, deadlocked, lock_handler_step, commit_step,
    deadlock_handler_step, undo, recovery_step
)
from .wrapper import WrapperStep, new_locks, new_locks_needed, overwritten_values, wrapper_step  # noqa: E402, F401
