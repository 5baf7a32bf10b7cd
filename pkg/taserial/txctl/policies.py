"""
Pluggable selection strategies of the controller components.

Request policies receive the pending ``(machine, since)`` pairs sorted by
machine and return one machine. Victim policies receive the deadlock cycles
eligible for resolution and a machine to
:class:`taserial.txctl.types.VictimCandidate` map, and return the machines to
victimize.
"""
from .enum import PolicyKind
from .. import config
from ..lib import Registry, register


@register(PolicyKind.LockRequest, 'random')
@register(PolicyKind.Commit, 'random')
@register(PolicyKind.Recovery, 'random')
def random_request(pending, rng):
    return rng.choice([machine for machine, _ in pending], 'select')


@register(PolicyKind.LockRequest, 'fifo')
@register(PolicyKind.Commit, 'fifo')
@register(PolicyKind.Recovery, 'fifo')
def oldest_request(pending, rng):  # pylint: disable=unused-argument
    return min(pending, key=lambda item: (item[1], item[0]))[0]


@register(PolicyKind.LockRequest, 'lowest-id')
@register(PolicyKind.Commit, 'lowest-id')
@register(PolicyKind.Recovery, 'lowest-id')
def lowest_id(pending, rng):  # pylint: disable=unused-argument
    return min(machine for machine, _ in pending)


@register(PolicyKind.Victim, 'shortest-history')
def shortest_history(cycles, standing, rng):  # pylint: disable=unused-argument
    """
    One victim: the machine with the shortest history, lowest identifier on ties.
    Machines victimized ``restart_limit`` times are passed over while another candidate is
    below the limit; among starved machines only, the latest registered one is chosen.
    """
    candidates = frozenset().union(*cycles)
    limit = config.controller['restart_limit']
    fresh = [m for m in candidates if standing[m].restarts < limit]
    if fresh:
        return frozenset([min(fresh, key=lambda m: (standing[m].history, m))])
    return frozenset([max(candidates, key=lambda m: (standing[m].registered, m))])


@register(PolicyKind.Victim, 'random')
def random_victim(cycles, standing, rng):  # pylint: disable=unused-argument
    candidates = sorted(frozenset().union(*cycles))
    return frozenset([rng.choice(candidates, 'victim')])


@register(PolicyKind.Victim, 'all')
def all_deadlocked(cycles, standing, rng):  # pylint: disable=unused-argument
    return frozenset().union(*cycles)


def get(kind, name):
    """
    Look up a registered policy

    :raises taserial.exception.InputError: for an unknown policy name
    """
    return Registry.instance().get(kind, name)


def names(kind):
    return Registry.instance().names(kind)
