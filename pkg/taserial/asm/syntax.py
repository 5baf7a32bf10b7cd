"""
Abstract syntax of machine programs: terms, formulae and rules.

All nodes are frozen dataclasses, so programs hash, compare structurally
and can be shared between runs without copying.
"""
import re
from dataclasses import dataclass, replace


# Terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    func: str
    args: tuple = ()


# Formulae

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Lt:
    left: object
    right: object


# Rules

@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Assign:
    lhs: Apply
    rhs: object


@dataclass(frozen=True)
class If:
    guard: object
    then: object
    otherwise: object = Skip()


@dataclass(frozen=True)
class Let:
    var: str
    term: object
    body: object


@dataclass(frozen=True)
class ForallDo:
    var: str
    guard: object
    body: object


@dataclass(frozen=True)
class ChooseDo:
    var: str
    guard: object
    body: object


@dataclass(frozen=True)
class Par:
    left: object
    right: object


@dataclass(frozen=True)
class Seq:
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class RuleDecl:
    name: str
    params: tuple
    body: object


TERMS = (Var, Apply)
FORMULAE = (Atom, Not, And, Or, Forall, Exists, Eq, Lt)
RULES = (Skip, Assign, If, Let, ForallDo, ChooseDo, Par, Seq, Call)

LITERALS = ('true', 'false', 'undef')
_numeral = re.compile(r'^-?[0-9]+$')


def is_numeral(name):
    return bool(_numeral.match(name))


def is_symbol(name):
    return name.startswith(':') and len(name) > 1


def is_static(func, arity):
    """Static functions are interpreted by the evaluator, never stored in the state"""
    if arity == 0:
        return is_numeral(func) or is_symbol(func) or func in LITERALS
    if arity == 1:
        return func == '-'
    if arity == 2:
        return func in ('+', '-')
    return False


def is_static_name(func):
    return is_numeral(func) or is_symbol(func) or func in LITERALS or func in ('+', '-')


def par(*rules):
    """Right-nested parallel block; the empty block is ``skip``"""
    return _block(Par, rules)


def seq(*rules):
    """Right-nested sequential block; the empty block is ``skip``"""
    return _block(Seq, rules)


def _block(kind, rules):
    if not rules:
        return Skip()
    result = rules[-1]
    for rule in reversed(rules[:-1]):
        result = kind(rule, result)
    return result


def free_vars(node):
    """Free variables of a term, formula or rule"""
    if isinstance(node, Var):
        return frozenset([node.name])
    if isinstance(node, (Apply, Atom, Call)):
        return frozenset().union(*(free_vars(arg) for arg in node.args))
    if isinstance(node, (Forall, Exists)):
        return free_vars(node.body) - {node.var}
    if isinstance(node, (ForallDo, ChooseDo)):
        return (free_vars(node.guard) | free_vars(node.body)) - {node.var}
    if isinstance(node, Let):
        return free_vars(node.term) | (free_vars(node.body) - {node.var})
    if isinstance(node, Not):
        return free_vars(node.body)
    if isinstance(node, (And, Or, Eq, Lt, Par, Seq)):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, Assign):
        return free_vars(node.lhs) | free_vars(node.rhs)
    if isinstance(node, If):
        return free_vars(node.guard) | free_vars(node.then) | free_vars(node.otherwise)
    return frozenset()


def bound_names(node):
    """Every variable name bound anywhere inside ``node``"""
    names = set()
    stack = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, (Forall, Exists, ForallDo, ChooseDo, Let)):
            names.add(item.var)
        stack.extend(children(item))
    return frozenset(names)


def children(node):
    if isinstance(node, (Apply, Atom, Call)):
        return list(node.args)
    if isinstance(node, (Forall, Exists, Not)):
        return [node.body]
    if isinstance(node, (ForallDo, ChooseDo)):
        return [node.guard, node.body]
    if isinstance(node, Let):
        return [node.term, node.body]
    if isinstance(node, (And, Or, Eq, Lt, Par, Seq)):
        return [node.left, node.right]
    if isinstance(node, Assign):
        return [node.lhs, node.rhs]
    if isinstance(node, If):
        return [node.guard, node.then, node.otherwise]
    return []


def _fresh(name, avoid):
    index = 1
    while '%s_%d' % (name, index) in avoid:
        index += 1
    return '%s_%d' % (name, index)


def substitute(node, mapping):
    """
    Capture-avoiding substitution of terms for free variables

    :param node: Term, formula or rule
    :param dict mapping: Variable name to replacement term
    """
    if not mapping:
        return node
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, (Apply, Atom, Call)):
        return replace(node, args=tuple(substitute(arg, mapping) for arg in node.args))
    if isinstance(node, (Forall, Exists, ForallDo, ChooseDo, Let)):
        return _substitute_binder(node, mapping)
    if isinstance(node, Not):
        return Not(substitute(node.body, mapping))
    if isinstance(node, (And, Or, Eq, Lt, Par, Seq)):
        return type(node)(substitute(node.left, mapping), substitute(node.right, mapping))
    if isinstance(node, Assign):
        return Assign(substitute(node.lhs, mapping), substitute(node.rhs, mapping))
    if isinstance(node, If):
        return If(substitute(node.guard, mapping), substitute(node.then, mapping), substitute(node.otherwise, mapping))
    return node


def _substitute_binder(node, mapping):
    outer = dict(mapping)
    if isinstance(node, Let):
        term = substitute(node.term, outer)
    inner = {k: v for k, v in outer.items() if k != node.var}
    var = node.var
    captured = frozenset().union(*(free_vars(t) for t in inner.values())) if inner else frozenset()
    if var in captured:
        avoid = captured | free_vars(node) | bound_names(node) | set(inner)
        renamed = _fresh(var, avoid)
        inner[var] = Var(renamed)
        var = renamed
    if isinstance(node, Let):
        return Let(var, term, substitute(node.body, inner))
    if isinstance(node, (Forall, Exists)):
        return type(node)(var, substitute(node.body, inner))
    return type(node)(var, substitute(node.guard, inner), substitute(node.body, inner))


def calls(node):
    """Names of the rules called inside ``node``"""
    names = set()
    stack = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, Call):
            names.add(item.name)
        stack.extend(children(item))
    return frozenset(names)


def functions(node):
    """Dynamic ``(name, arity)`` pairs applied inside ``node``"""
    result = set()
    stack = [node]
    while stack:
        item = stack.pop()
        if isinstance(item, Apply) and not is_static(item.func, len(item.args)):
            result.add((item.func, len(item.args)))
        elif isinstance(item, Atom) and not is_static(item.pred, len(item.args)):
            result.add((item.pred, len(item.args)))
        stack.extend(children(item))
    return frozenset(result)
