from ..exception import InputError


class Registry:
    """Singleton holding the named strategies of every pluggable kind"""

    __instance = None

    @staticmethod
    def instance():
        if Registry.__instance is None:
            Registry()
        return Registry.__instance

    def __init__(self):
        if Registry.__instance is not None:
            raise Exception("Registry is a singleton class.")
        self.registry = {}
        Registry.__instance = self

    def register(self, kind, name, value):
        self.registry.setdefault(kind, {})[name] = value

    def get(self, kind, name):
        strategies = self.registry.get(kind, {})
        strategy = strategies.get(name)
        if strategy is None:
            raise InputError('Unknown %s policy' % kind, name, sorted(strategies))
        return strategy

    def names(self, kind):
        return sorted(self.registry.get(kind, {}))

    def remove(self, kind, name):
        return self.registry.get(kind, {}).pop(name, None)


def register(kind, name):
    """Decorator registering a strategy function under ``(kind, name)``"""
    def decorator(function):
        Registry.instance().register(kind, name, function)
        return function
    return decorator
