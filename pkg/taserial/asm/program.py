from dataclasses import dataclass, field

from pyrsistent import pmap

from . import syntax
from .interpreter import Interpreter
from .rwloc import RwAnalyzer


class LocationClass:
    """
    Classes of a machine's function names

    :ivar str Shared: Read and written by the machine and others
    :ivar str Monitored: Read by the machine, written by others
    :ivar str Output: Written by the machine, read by others
    :ivar str Controlled: Private to the machine
    """
    Shared = 'shared'
    Monitored = 'monitored'
    Output = 'output'
    Controlled = 'controlled'


@dataclass(frozen=True)
class MachineProgram:  # pylint: disable=too-many-instance-attributes
    """
    A machine program: declarations, initial values, termination formula and rules

    :ivar str name: Machine identifier
    :ivar pyrsistent.PMap shared: Shared function names to arities
    :ivar pyrsistent.PMap monitored: Monitored function names to arities
    :ivar pyrsistent.PMap output: Output function names to arities
    :ivar tuple init: ``(Location, value)`` pairs of the initial state
    :ivar terminated: Termination formula
    :ivar rule: Main rule
    :ivar pyrsistent.PMap rules: Named rule declarations by name
    """
    name: str
    rule: object
    terminated: object = syntax.Atom('false')
    shared: object = field(default_factory=pmap)
    monitored: object = field(default_factory=pmap)
    output: object = field(default_factory=pmap)
    init: tuple = ()
    rules: object = field(default_factory=pmap)

    def classify(self, func):
        if func in self.shared:
            return LocationClass.Shared
        if func in self.monitored:
            return LocationClass.Monitored
        if func in self.output:
            return LocationClass.Output
        return LocationClass.Controlled

    def is_readable_external(self, location):
        """Reads of shared and monitored locations need an R-lock"""
        return location.func in self.shared or location.func in self.monitored

    def is_writable_external(self, location):
        """Writes of shared and output locations need a W-lock and are recorded for undo"""
        return location.func in self.shared or location.func in self.output

    def is_controlled(self, location):
        return self.classify(location.func) == LocationClass.Controlled

    def interpreter(self, recorder=None):
        return Interpreter(dict(self.rules), recorder)

    def analyzer(self):
        return RwAnalyzer(dict(self.rules))

    def is_terminated(self, state):
        return self.interpreter().eval_formula(self.terminated, state, {})

    def functions(self):
        """Every dynamic ``(name, arity)`` the program mentions"""
        result = set(syntax.functions(self.rule)) | set(syntax.functions(self.terminated))
        for decl in self.rules.values():
            result |= syntax.functions(decl.body)
        for location, _ in self.init:
            result.add((location.func, len(location.args)))
        return frozenset(result)

    def controlled(self):
        return frozenset(name for name, _ in self.functions() if self.classify(name) == LocationClass.Controlled)
