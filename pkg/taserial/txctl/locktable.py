import logging

from pyrsistent import pmap, pset

from .enum import LockMode
from .types import LockPair
from ..exception import LockSafetyViolation


class LockTable:
    """
    Immutable table of R- and W-locks at location granularity.

    Several machines may R-lock a location. A W-lock is exclusive: no other
    machine holds any lock on a W-locked location.
    """

    def __init__(self, r_locked=None, w_locked=None):
        self._r = r_locked if r_locked is not None else pmap()
        self._w = w_locked if w_locked is not None else pmap()

    @property
    def r_locked(self):
        """Set of ``(Location, machine)`` R-locks"""
        return frozenset((location, m) for location, holders in self._r.items() for m in holders)

    @property
    def w_locked(self):
        """Set of ``(Location, machine)`` W-locks"""
        return frozenset((location, m) for location, holders in self._w.items() for m in holders)

    def r_holders(self, location):
        return self._r.get(location, pset())

    def w_holders(self, location):
        return self._w.get(location, pset())

    def is_r_locked(self, location, machine):
        return machine in self.r_holders(location)

    def is_w_locked(self, location, machine):
        return machine in self.w_holders(location)

    def locked_by(self, machine):
        """Locks held by ``machine``, as a :class:`taserial.txctl.types.LockPair`"""
        return LockPair(frozenset(l for l, m in self.r_locked if m == machine),
                        frozenset(l for l, m in self.w_locked if m == machine))

    def conflicts(self, machine, locks):
        """
        Machines other than ``machine`` holding a lock incompatible with ``locks``

        :return frozenset: ``(location, holder)`` pairs blocking the request
        """
        blocking = set()
        for location in locks.locations():
            blocking.update((location, n) for n in self.w_holders(location) if n != machine)
        for location in locks.w_loc:
            blocking.update((location, n) for n in self.r_holders(location) if n != machine)
        return frozenset(blocking)

    def grant(self, machine, locks):
        return LockTable(_add(self._r, locks.r_loc, machine), _add(self._w, locks.w_loc, machine))

    def release(self, machine, locks):
        """Unlock exactly the given modes"""
        return LockTable(_discard(self._r, locks.r_loc, machine), _discard(self._w, locks.w_loc, machine))

    def edit(self, added, removed):
        """Apply ``(location, machine, mode)`` additions and removals"""
        table = self
        for location, machine, mode in removed:
            table = table.release(machine, _pair(location, mode))
        for location, machine, mode in added:
            table = table.grant(machine, _pair(location, mode))
        return table

    def check(self):
        """
        Scan for two-phase locking violations

        :raises taserial.exception.LockSafetyViolation: if a W-lock is shared with another machine
        """
        for location, writers in self._w.items():
            readers = {m for m in self.r_holders(location) if m not in writers}
            if len(writers) > 1 or (writers and readers):
                logging.getLogger().error('Lock table invariant violated. %s', {'location': repr(location)})
                raise LockSafetyViolation(location, writers, readers)

    def __eq__(self, other):
        return isinstance(other, LockTable) and self._r == other._r and self._w == other._w

    def __hash__(self):
        return hash((self._r, self._w))

    def __repr__(self):
        return 'LockTable(R=%r, W=%r)' % (sorted(map(repr, self.r_locked)), sorted(map(repr, self.w_locked)))


def triples(machine, locks):
    """``(location, machine, mode)`` triples of a lock pair"""
    return frozenset([(l, machine, LockMode.Read) for l in locks.r_loc] + [(l, machine, LockMode.Write) for l in locks.w_loc])


def _pair(location, mode):
    if mode == LockMode.Read:
        return LockPair(r_loc=frozenset([location]))
    return LockPair(w_loc=frozenset([location]))


def _add(table, locations, machine):
    for location in locations:
        table = table.set(location, table.get(location, pset()).add(machine))
    return table


def _discard(table, locations, machine):
    for location in locations:
        holders = table.get(location, pset()).discard(machine)
        table = table.set(location, holders) if holders else table.discard(location)
    return table
