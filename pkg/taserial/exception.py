from .convert import tojsonstr


class TASerialException(Exception):

    def __init__(self, message=None, instance=None, **kwargs):
        super().__init__()
        self.classname = self.__class__.__name__
        self.join(instance)
        if message is not None:
            self.message = message
        self.put(**kwargs)

    def put(self, **kwargs):
        for key, value in kwargs.items():
            setattr(self, key, value)

    def join(self, instance=None):
        if instance is not None:
            self.__dict__ = instance.__dict__.copy()

    def __str__(self):
        return tojsonstr(self, pretty_print=True)


class EvaluationError(TASerialException):
    pass


class UnboundVariable(EvaluationError):

    def __init__(self, name):
        super().__init__('Unbound variable', None, name=name)


class ArityMismatch(EvaluationError):

    def __init__(self, name, expected, actual):
        super().__init__('Arity mismatch', None, name=name, expected=expected, actual=actual)


class UndefinedArgument(EvaluationError):

    def __init__(self, func, position):
        super().__init__('Location argument evaluated to undef', None, func=func, position=position)


class UnknownRule(EvaluationError):

    def __init__(self, name):
        super().__init__('Call to an undeclared rule', None, name=name)


class InconsistentUpdateSet(TASerialException):

    def __init__(self, clashes):
        super().__init__('Update set is inconsistent', None, locations=sorted(str(location) for location in clashes))


class InconsistentGlobalUpdate(TASerialException):

    def __init__(self, step, clashes):
        super().__init__('Global step produced an inconsistent update', None, step=step,
                         locations=sorted(str(location) for location in clashes))


class IllegalControlState(TASerialException):

    def __init__(self, machine, ctl_state):
        super().__init__('Illegal control state', None, machine=machine, ctl_state=ctl_state)


class EmptyHistory(TASerialException):

    def __init__(self, machine):
        super().__init__('Cannot undo a machine with an empty history', None, machine=machine)


class LockSafetyViolation(TASerialException):

    def __init__(self, location, writers, readers):
        super().__init__('Two-phase locking invariant violated', None, location=str(location),
                         writers=sorted(writers), readers=sorted(readers))


class UnknownMachine(TASerialException):

    def __init__(self, machine):
        super().__init__('Unknown machine', None, machine=machine)


class MalformedTrace(TASerialException):

    def __init__(self, reason, **kwargs):
        super().__init__('Malformed trace', None, reason=reason, **kwargs)


class ConfigMismatch(TASerialException):

    def __init__(self, expected, actual):
        super().__init__('Traces were produced by different configurations', None, expected=expected, actual=actual)


class UncommittedMachine(TASerialException):

    def __init__(self, machine, reason='Machine did not commit'):
        super().__init__(reason, None, machine=machine)


class TooManyMachines(TASerialException):

    def __init__(self, count, limit):
        super().__init__('Too many machines for exhaustive search', None, count=count, limit=limit)


class ParseError(TASerialException):

    def __init__(self, message, line, column, token=None):
        super().__init__(message, None, line=line, column=column, token=token)


class ArityError(ParseError):

    def __init__(self, name, expected, actual, line, column):
        TASerialException.__init__(self, 'Inconsistent arity', None, name=name, expected=expected, actual=actual,
                                   line=line, column=column)


class UnknownIdentifier(ParseError):

    def __init__(self, name, line, column):
        TASerialException.__init__(self, 'Unknown identifier', None, name=name, line=line, column=column)


class RecursiveRule(TASerialException):

    def __init__(self, machine, cycle):
        super().__init__('Named rules must not be recursive', None, machine=machine, cycle=cycle)


class InputError(TASerialException):

    def __init__(self, message, expression, options):
        TASerialException.__init__(self, message, None, expression=expression, options=options)


class ConfigError(TASerialException):

    def __init__(self, message, **kwargs):
        super().__init__(message, None, **kwargs)
