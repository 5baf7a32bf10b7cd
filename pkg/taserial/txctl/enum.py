class CtlState:
    """
    Control states of a transactional machine

    :ivar str NotRegistered: Machine has not registered with the controller yet
    :ivar str TACtl: Machine computes its next step
    :ivar str WaitForLocks: Machine waits for the lock handler
    :ivar str WaitForRecovery: Machine waits until recovery releases it
    :ivar str Done: Machine has called for commit
    """
    NotRegistered = 'NotRegistered'
    TACtl = 'TA-ctl'
    WaitForLocks = 'waitForLocks'
    WaitForRecovery = 'waitForRecovery'
    Done = 'Done'


ACTIVE = (CtlState.TACtl, CtlState.WaitForLocks, CtlState.WaitForRecovery)


class LockMode:
    """
    :ivar str Read: Shared read lock
    :ivar str Write: Exclusive write lock
    """
    Read = 'R'
    Write = 'W'


class WaitMode:
    """
    Behaviour of a machine whose lock request cannot be granted

    :ivar str Retry: The request is refused and the machine computes its request again
    :ivar str Suspend: The request stays pending until it can be granted
    """
    Retry = 'retry'
    Suspend = 'suspend'


class Scheduling:
    """
    :ivar str Synchronous: Every agent acts in every global step
    :ivar str Interleaving: One seeded agent acts per global step
    """
    Synchronous = 'synchronous'
    Interleaving = 'interleaving'


class EventKind:
    """
    Controller events recorded in a trace

    :ivar str Register: Machine entered the transactional system
    :ivar str LockGrant: Lock handler granted a request
    :ivar str LockRefuse: Lock handler refused a request
    :ivar str Victimize: Deadlock handler selected a victim
    :ivar str Unvictimize: Recovery released a victim that is no longer deadlocked
    :ivar str UndoApplied: Recovery undid the youngest history entry of a victim
    :ivar str Commit: Commit released every lock of a machine
    """
    Register = 'Register'
    LockGrant = 'LockGrant'
    LockRefuse = 'LockRefuse'
    Victimize = 'Victimize'
    Unvictimize = 'Unvictimize'
    UndoApplied = 'UndoApplied'
    Commit = 'Commit'


class PolicyKind:
    """
    :ivar str LockRequest: Which pending lock request the lock handler serves
    :ivar str Commit: Which commit request is executed
    :ivar str Victim: Which deadlocked machines become victims
    :ivar str Recovery: Which victim recovery serves
    """
    LockRequest = 'lock_request'
    Commit = 'commit'
    Victim = 'victim'
    Recovery = 'recovery'


def values(enum):
    return sorted(v for k, v in enum.__dict__.items() if not k.startswith('_'))
