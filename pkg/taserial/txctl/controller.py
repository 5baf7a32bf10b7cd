import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import networkx as nx
from pyrsistent import pmap, pset

from . import policies
from .enum import EventKind, PolicyKind, WaitMode
from .locktable import LockTable, triples
from .types import Event, LockPair, VictimCandidate
from ..asm.state import EMPTY, UpdateSet
from ..exception import EmptyHistory, InconsistentGlobalUpdate


@dataclass(frozen=True)
class ControllerState:
    """
    State of the transaction controller

    :ivar pyrsistent.PSet transact: Registered, not yet committed machines
    :ivar pyrsistent.PMap lock_requests: Machine to pending :class:`taserial.txctl.types.LockRequest`
    :ivar pyrsistent.PMap commit_requests: Machine to the step of its commit call
    :ivar pyrsistent.PMap victims: Machine to the step of its victimization
    :ivar LockTable lock_table: Held locks
    :ivar pyrsistent.PMap waiting: Machine to its last lock request not granted yet
    :ivar pyrsistent.PMap restarts: Machine to the number of its victimizations
    :ivar pyrsistent.PMap registered: Machine to its registration step
    """
    transact: object = field(default_factory=pset)
    lock_requests: object = field(default_factory=pmap)
    commit_requests: object = field(default_factory=pmap)
    victims: object = field(default_factory=pmap)
    lock_table: LockTable = field(default_factory=LockTable)
    waiting: object = field(default_factory=pmap)
    restarts: object = field(default_factory=pmap)
    registered: object = field(default_factory=pmap)

    def register(self, machine, step=0):
        return replace(self, transact=self.transact.add(machine), registered=self.registered.set(machine, step))

    def is_victim(self, machine):
        return machine in self.victims


@dataclass(frozen=True)
class ControllerDelta:  # pylint: disable=too-many-instance-attributes
    """
    Edits of the controller state made by one agent in one global step.
    Deltas of all agents of a step are merged before they are applied.
    """
    requests_added: frozenset = frozenset()
    requests_removed: frozenset = frozenset()
    commits_added: frozenset = frozenset()
    commits_removed: frozenset = frozenset()
    victims_added: frozenset = frozenset()
    victims_removed: frozenset = frozenset()
    transact_removed: frozenset = frozenset()
    locks_added: frozenset = frozenset()
    locks_removed: frozenset = frozenset()
    waiting_set: frozenset = frozenset()
    waiting_cleared: frozenset = frozenset()

    def merge(self, other, step):
        merged = ControllerDelta(**{name: getattr(self, name) | getattr(other, name) for name in self.__dataclass_fields__})
        clashes = merged.clashes()
        if clashes:
            logging.getLogger().error('Controller edits clash. %s', {'step': step, 'clashes': sorted(clashes)})
            raise InconsistentGlobalUpdate(step, clashes)
        return merged

    def clashes(self):
        clashes = set()
        pairs = (
            (_keys(self.requests_added), self.requests_removed, 'lock_requests'),
            (_keys(self.commits_added), self.commits_removed, 'commit_requests'),
            (_keys(self.victims_added), self.victims_removed, 'victims'),
            (_keys(self.waiting_set), self.waiting_cleared, 'waiting'),
        )
        for added, removed, name in pairs:
            clashes.update('%s[%s]' % (name, m) for m in added & removed)
        for name in ('requests_added', 'commits_added', 'victims_added', 'waiting_set'):
            items = getattr(self, name)
            if len(_keys(items)) != len(items):
                clashes.add(name)
        clashes.update('lock %r %s %s' % triple for triple in self.locks_added & self.locks_removed)
        return clashes

    def apply(self, cs):
        lock_requests = cs.lock_requests
        for m in self.requests_removed:
            lock_requests = lock_requests.discard(m)
        commit_requests = cs.commit_requests
        for m in self.commits_removed:
            commit_requests = commit_requests.discard(m)
        victims = cs.victims
        for m in self.victims_removed:
            victims = victims.discard(m)
        waiting = cs.waiting
        for m in self.waiting_cleared:
            waiting = waiting.discard(m)
        transact = cs.transact
        for m in self.transact_removed:
            transact = transact.discard(m)
        restarts = cs.restarts
        for m, _ in self.victims_added:
            restarts = restarts.set(m, restarts.get(m, 0) + 1)
        return ControllerState(
            transact=transact,
            lock_requests=lock_requests.update(dict(self.requests_added)),
            commit_requests=commit_requests.update(dict(self.commits_added)),
            victims=victims.update(dict(self.victims_added)),
            lock_table=cs.lock_table.edit(self.locks_added, self.locks_removed),
            waiting=waiting.update(dict(self.waiting_set)),
            restarts=restarts,
            registered=cs.registered,
        )


NO_DELTA = ControllerDelta()


def _keys(pairs):
    return frozenset(key for key, _ in pairs)


class SignalKind:
    """
    :ivar str Granted: Sets the grant flag of a machine
    :ivar str Refused: Sets the refusal flag of a machine
    :ivar str Undone: Pops the youngest history entry of a machine
    """
    Granted = 'granted'
    Refused = 'refused'
    Undone = 'undone'


@dataclass(frozen=True)
class Signal:
    kind: str
    machine: str
    locks: Optional[LockPair] = None
    step: Optional[int] = None


@dataclass(frozen=True)
class ComponentStep:
    """
    Output of one controller component in one global step

    :ivar ControllerDelta delta: Controller state edits
    :ivar tuple signals: Edits of machine control blocks
    :ivar UpdateSet updates: Location updates
    :ivar tuple events: Recorded events
    """
    delta: ControllerDelta = NO_DELTA
    signals: tuple = ()
    updates: UpdateSet = EMPTY
    events: tuple = ()


IDLE = ComponentStep()


def cannot_be_granted(m, locks, cs):
    """``True`` iff another registered machine holds a lock incompatible with ``locks``"""
    return any(n in cs.transact for _, n in cs.lock_table.conflicts(m, locks))


def wait_relation(cs):
    """
    Wait graph: edge ``(M, N)`` iff ``N`` holds a lock incompatible with the
    last lock request of ``M`` that has not been granted yet

    :rtype: networkx.DiGraph
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(cs.transact))
    for m in sorted(cs.waiting):
        if m not in cs.transact:
            continue
        for _, n in sorted(cs.lock_table.conflicts(m, cs.waiting[m]), key=lambda item: (item[0].key(), item[1])):
            if n in cs.transact:
                graph.add_edge(m, n)
    return graph


def deadlock_cycles(cs):
    """Strongly connected components of the wait graph that contain a cycle, sorted"""
    graph = wait_relation(cs)
    return sorted((frozenset(c) for c in nx.strongly_connected_components(graph) if len(c) > 1), key=sorted)


def deadlocked(cs):
    """Machines on a cycle of the wait graph"""
    return frozenset().union(*deadlock_cycles(cs))


def lock_handler_step(cs, rng, step=0, policy='random', wait_mode=WaitMode.Retry):
    """
    Serve one pending lock request: grant it, or refuse it if it cannot be granted.
    In suspend mode only grantable requests are served.
    """
    pending = sorted((m, request.since) for m, request in cs.lock_requests.items())
    if wait_mode == WaitMode.Suspend:
        pending = [(m, since) for m, since in pending if not cannot_be_granted(m, cs.lock_requests[m].locks, cs)]
    if not pending:
        return IDLE
    m = policies.get(PolicyKind.LockRequest, policy)(pending, rng)
    locks = cs.lock_requests[m].locks
    if cannot_be_granted(m, locks, cs):
        logging.getLogger().debug('Lock request refused. %s', {'machine': m, 'step': step, 'locks': repr(locks)})
        return ComponentStep(
            delta=ControllerDelta(requests_removed=frozenset([m])),
            signals=(Signal(SignalKind.Refused, m, locks),),
            events=(Event(EventKind.LockRefuse, m, locks=locks),)
        )
    logging.getLogger().debug('Lock request granted. %s', {'machine': m, 'step': step, 'locks': repr(locks)})
    return ComponentStep(
        delta=ControllerDelta(requests_removed=frozenset([m]), locks_added=triples(m, locks),
                              waiting_cleared=frozenset([m])),
        signals=(Signal(SignalKind.Granted, m, locks, step),),
        events=(Event(EventKind.LockGrant, m, locks=locks),)
    )


def commit_step(cs, rng, step=0, policy='random'):
    """Execute one commit request: release every lock of the machine and remove it from the system"""
    pending = sorted(cs.commit_requests.items())
    if not pending:
        return IDLE
    m = policies.get(PolicyKind.Commit, policy)(pending, rng)
    held = cs.lock_table.locked_by(m)
    logging.getLogger().info('Machine committed. %s', {'machine': m, 'step': step})
    return ComponentStep(
        delta=ControllerDelta(commits_removed=frozenset([m]), transact_removed=frozenset([m]),
                              locks_removed=triples(m, held)),
        events=(Event(EventKind.Commit, m, locks=held),)
    )


def deadlock_handler_step(cs, tcbs, rng, step=0, policy='shortest-history'):
    """
    Victimize machines of the deadlock cycles that have no victim yet.

    :param dict tcbs: Machine to :class:`taserial.txctl.types.TxControlBlock`
    """
    cycles = [cycle for cycle in deadlock_cycles(cs) if not any(m in cs.victims for m in cycle)]
    if not cycles:
        return IDLE
    standing = {
        m: VictimCandidate(len(tcbs[m].history), cs.restarts.get(m, 0), cs.registered.get(m, 0))
        for cycle in cycles for m in cycle
    }
    chosen = sorted(policies.get(PolicyKind.Victim, policy)(cycles, standing, rng))
    logging.getLogger().info('Deadlock victims selected. %s', {'victims': chosen, 'step': step})
    return ComponentStep(
        delta=ControllerDelta(victims_added=frozenset((m, step) for m in chosen)),
        events=tuple(Event(EventKind.Victimize, m) for m in chosen)
    )


def undo(m, cs, tcb):  # pylint: disable=unused-argument
    """
    Undo the youngest history entry of ``m``: restore the overwritten values
    and release the locks recorded with the entry

    :raises taserial.exception.EmptyHistory: if ``m`` has no history
    """
    entry = tcb.youngest()
    if entry is None:
        logging.getLogger().error('Undo requested on an empty history. %s', {'machine': m})
        raise EmptyHistory(m)
    restored = entry.restore_set()
    logging.getLogger().info('Undoing history entry. %s', {'machine': m, 'origin': entry.origin})
    return ComponentStep(
        delta=ControllerDelta(locks_removed=triples(m, entry.lock_set)),
        signals=(Signal(SignalKind.Undone, m, entry.lock_set, entry.origin),),
        updates=restored,
        events=(Event(EventKind.UndoApplied, m, locks=entry.lock_set, origin=entry.origin,
                      grant_step=entry.grant_step, restored=restored),)
    )


def recovery_step(cs, tcbs, rng, step=0, policy='random'):
    """Serve one victim: release it if it is no longer deadlocked, otherwise undo one step of it"""
    pending = sorted(cs.victims.items())
    if not pending:
        return IDLE
    m = policies.get(PolicyKind.Recovery, policy)(pending, rng)
    if m not in deadlocked(cs):
        logging.getLogger().info('Victim recovered. %s', {'machine': m, 'step': step})
        return ComponentStep(
            delta=ControllerDelta(victims_removed=frozenset([m])),
            events=(Event(EventKind.Unvictimize, m),)
        )
    return undo(m, cs, tcbs[m])


class TransactionController:
    """
    The four controller components, configured with their policies

    :ivar dict policies: :class:`taserial.txctl.enum.PolicyKind` to policy name
    :ivar str wait_mode: One of :class:`taserial.txctl.enum.WaitMode`
    """

    COMPONENTS = ('lock-handler', 'deadlock-handler', 'recovery', 'commit')

    def __init__(self, policy_names, wait_mode=WaitMode.Retry):
        self.policies = dict(policy_names)
        self.wait_mode = wait_mode
        for kind, name in self.policies.items():
            policies.get(kind, name)

    def step(self, component, cs, tcbs, rng, step):
        if component == 'lock-handler':
            return lock_handler_step(cs, rng, step, self.policies[PolicyKind.LockRequest], self.wait_mode)
        if component == 'deadlock-handler':
            return deadlock_handler_step(cs, tcbs, rng, step, self.policies[PolicyKind.Victim])
        if component == 'recovery':
            return recovery_step(cs, tcbs, rng, step, self.policies[PolicyKind.Recovery])
        return commit_step(cs, rng, step, self.policies[PolicyKind.Commit])

    def busy(self, cs):
        """Components with pending work in ``cs``"""
        result = []
        if cs.lock_requests:
            result.append('lock-handler')
        if any(not any(m in cs.victims for m in cycle) for cycle in deadlock_cycles(cs)):
            result.append('deadlock-handler')
        if cs.victims:
            result.append('recovery')
        if cs.commit_requests:
            result.append('commit')
        return result
