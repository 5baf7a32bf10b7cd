from dataclasses import dataclass


class Boolean:
    """
    Boolean value of the ASM superuniverse.

    Distinct from Python's ``bool`` so that ``true`` never equals ``1``.
    Only the two instances :data:`TRUE` and :data:`FALSE` exist.
    """

    __slots__ = ('flag',)
    __instances = {}

    def __new__(cls, flag):
        flag = bool(flag)
        instance = cls.__instances.get(flag)
        if instance is None:
            instance = super().__new__(cls)
            object.__setattr__(instance, 'flag', flag)
            cls.__instances[flag] = instance
        return instance

    def __setattr__(self, name, value):
        raise AttributeError('Boolean values are immutable')

    def __reduce__(self):
        return 'TRUE' if self.flag else 'FALSE'

    def __bool__(self):
        return self.flag

    def __hash__(self):
        return hash(('Boolean', self.flag))

    def __repr__(self):
        return 'true' if self.flag else 'false'


class Undefined:
    """The distinguished value ``undef``, equal only to itself"""

    __instance = None

    def __new__(cls):
        if cls.__instance is None:
            cls.__instance = super().__new__(cls)
        return cls.__instance

    def __reduce__(self):
        return 'UNDEF'

    def __bool__(self):
        return False

    def __hash__(self):
        return hash('Undefined')

    def __repr__(self):
        return 'undef'


@dataclass(frozen=True)
class Symbol:
    name: str

    def __repr__(self):
        return ':%s' % self.name


TRUE = Boolean(True)
FALSE = Boolean(False)
UNDEF = Undefined()


def boolean(flag):
    return TRUE if flag else FALSE


def is_integer(value):
    return isinstance(value, int) and not isinstance(value, bool)


def is_value(value):
    return is_integer(value) or isinstance(value, (Boolean, Symbol, Undefined))


def sort_key(value):
    """
    Total order over values: undef, booleans, integers, symbols.

    Every enumeration whose order can be observed (choose, serialization)
    goes through this key.
    """
    if value is UNDEF:
        return (0, 0, '')
    if isinstance(value, Boolean):
        return (1, int(value.flag), '')
    if is_integer(value):
        return (2, value, '')
    if isinstance(value, Symbol):
        return (3, 0, value.name)
    raise TypeError('Not an ASM value: %r' % (value,))
