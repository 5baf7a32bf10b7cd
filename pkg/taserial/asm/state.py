from dataclasses import dataclass

from pyrsistent import pmap

from .values import UNDEF, is_value, sort_key
from ..exception import InconsistentUpdateSet, InputError
from ..lib import digest


@dataclass(frozen=True)
class Location:
    """
    Addressable unit of state

    :ivar str func: Dynamic function name
    :ivar tuple args: Argument values
    """
    func: str
    args: tuple = ()

    def key(self):
        return (self.func, tuple(sort_key(arg) for arg in self.args))

    def __repr__(self):
        if not self.args:
            return self.func
        return '%s(%s)' % (self.func, ', '.join(repr(arg) for arg in self.args))


def update_key(update):
    location, value = update
    return (location.key(), sort_key(value))


class UpdateSet(frozenset):
    """Set of ``(Location, value)`` pairs produced by one step"""

    def __or__(self, other):
        return UpdateSet(frozenset.__or__(self, other))

    def locations(self):
        return frozenset(location for location, _ in self)

    def clashes(self):
        seen = {}
        clashing = set()
        for location, value in self:
            if location in seen and seen[location] != value:
                clashing.add(location)
            seen[location] = value
        return frozenset(clashing)

    def consistent(self):
        return not self.clashes()

    def override(self, other):
        """``self`` overridden by ``other`` on common locations, as in sequential composition"""
        written = other.locations()
        return UpdateSet(frozenset(u for u in self if u[0] not in written) | other)

    def sorted(self):
        return sorted(self, key=update_key)

    def __repr__(self):
        return '{%s}' % ', '.join('%r := %r' % update for update in self.sorted())


EMPTY = UpdateSet()


class State:
    """
    Immutable map from locations to values plus the quantifier domain.

    Locations mapped to ``undef`` are not stored, so two states that agree
    on every location compare (and digest) equal.
    """

    def __init__(self, values=None, domain=tuple(range(8))):
        domain = tuple(domain)
        if not domain:
            raise InputError('State domain must not be empty', domain, None)
        if len(set(domain)) != len(domain):
            raise InputError('State domain must not contain duplicates', list(domain), None)
        self._values = pmap({location: value for location, value in (values or {}).items() if value is not UNDEF})
        self.domain = domain

    def _evolve(self, values):
        state = State.__new__(State)
        state._values = values  # pylint: disable=protected-access
        state.domain = self.domain
        return state

    def get(self, location):
        return self._values.get(location, UNDEF)

    def apply(self, updates):
        """
        State transition ``S + U``

        :param UpdateSet updates: A consistent update set
        :raises taserial.exception.InconsistentUpdateSet: if two updates clash
        """
        updates = UpdateSet(updates)
        clashes = updates.clashes()
        if clashes:
            raise InconsistentUpdateSet(clashes)
        values = self._values.evolver()
        for location, value in updates:
            if not is_value(value):
                raise TypeError('Not an ASM value: %r' % (value,))
            if value is UNDEF:
                if location in self._values:
                    values.remove(location)
            else:
                values[location] = value
        return self._evolve(values.persistent())

    def with_domain(self, domain):
        state = State({}, domain)
        return state._evolve(self._values)  # pylint: disable=protected-access

    def items(self):
        return sorted(self._values.items(), key=update_key)

    def locations(self):
        return frozenset(self._values.keys())

    def digest(self):
        """Stable 64-bit hash of the canonical location map, as hex"""
        return digest([(location.key(), sort_key(value)) for location, value in self.items()]).hex()

    def __eq__(self, other):
        return isinstance(other, State) and self._values == other._values and self.domain == other.domain

    def __hash__(self):
        return hash((self._values, self.domain))

    def __repr__(self):
        return 'State({%s})' % ', '.join('%r: %r' % item for item in self.items())


def apply(state, updates):
    return state.apply(updates)
