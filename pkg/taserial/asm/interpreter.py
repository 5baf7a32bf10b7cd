import logging

from . import syntax
from .state import EMPTY, Location, UpdateSet
from .values import FALSE, TRUE, UNDEF, Symbol, is_integer, sort_key
from ..exception import ArityMismatch, UnboundVariable, UndefinedArgument, UnknownRule
from ..lib import SeedStream


def env_key(env):
    return tuple(sorted((name, repr(value)) for name, value in env.items()))


def _static(func, args):
    arity = len(args)
    if not syntax.is_static(func, arity):
        expected = 2 if func == '+' else (1 if func == '-' else 0)
        raise ArityMismatch(func, expected, arity)
    if arity == 0:
        if syntax.is_numeral(func):
            return int(func)
        if syntax.is_symbol(func):
            return Symbol(func[1:])
        return {'true': TRUE, 'false': FALSE, 'undef': UNDEF}[func]
    if not all(is_integer(arg) for arg in args):
        return UNDEF
    if arity == 1:
        return -args[0]
    if func == '+':
        return args[0] + args[1]
    return args[0] - args[1]


class Interpreter:
    """
    Evaluator of terms, formulae and rules over a :class:`taserial.asm.state.State`

    :ivar dict rules: Named rule declarations, by name
    :ivar callable recorder: Optional callback invoked with every location read
    """

    def __init__(self, rules=None, recorder=None):
        self.rules = rules or {}
        self.recorder = recorder

    def location(self, term, state, env):
        """Location denoted by an application term whose head is dynamic"""
        args = tuple(self.eval_term(arg, state, env) for arg in term.args)
        for position, arg in enumerate(args):
            if arg is UNDEF:
                raise UndefinedArgument(term.func, position)
        return Location(term.func, args)

    def _read(self, location, state):
        if self.recorder is not None:
            self.recorder(location)
        return state.get(location)

    def eval_term(self, term, state, env):
        if isinstance(term, syntax.Var):
            if term.name not in env:
                raise UnboundVariable(term.name)
            return env[term.name]
        if syntax.is_static_name(term.func):
            return _static(term.func, tuple(self.eval_term(arg, state, env) for arg in term.args))
        return self._read(self.location(term, state, env), state)

    def eval_formula(self, formula, state, env):  # pylint: disable=too-many-return-statements
        if isinstance(formula, syntax.Atom):
            return self.eval_term(syntax.Apply(formula.pred, formula.args), state, env) is TRUE
        if isinstance(formula, syntax.Eq):
            return self.eval_term(formula.left, state, env) == self.eval_term(formula.right, state, env)
        if isinstance(formula, syntax.Lt):
            left = self.eval_term(formula.left, state, env)
            right = self.eval_term(formula.right, state, env)
            return is_integer(left) and is_integer(right) and left < right
        if isinstance(formula, syntax.Not):
            return not self.eval_formula(formula.body, state, env)
        if isinstance(formula, syntax.And):
            return self.eval_formula(formula.left, state, env) and self.eval_formula(formula.right, state, env)
        if isinstance(formula, syntax.Or):
            return self.eval_formula(formula.left, state, env) or self.eval_formula(formula.right, state, env)
        if isinstance(formula, syntax.Forall):
            return all(self.eval_formula(formula.body, state, {**env, formula.var: d}) for d in state.domain)
        if isinstance(formula, syntax.Exists):
            return any(self.eval_formula(formula.body, state, {**env, formula.var: d}) for d in state.domain)
        raise TypeError('Not a formula: %r' % (formula,))

    def range(self, var, guard, state, env):
        """``range(x, guard, S, I)``: domain elements satisfying the guard, in canonical order"""
        return [d for d in sorted(state.domain, key=sort_key) if self.eval_formula(guard, state, {**env, var: d})]

    @staticmethod
    def witness(rng, path, candidates, env):
        """
        The element a choose rule selects. Keyed by the rule's syntactic path and
        the bindings in scope, so analysis and execution select the same witness.
        """
        return rng.choice(candidates, 'choose', path, env_key(env))

    def expand(self, call):
        """Body of a named rule with the argument terms substituted for its parameters"""
        decl = self.rules.get(call.name)
        if decl is None:
            raise UnknownRule(call.name)
        if len(decl.params) != len(call.args):
            raise ArityMismatch(call.name, len(decl.params), len(call.args))
        return syntax.substitute(decl.body, dict(zip(decl.params, call.args)))

    def yields(self, rule, state, env, rng, path=()):  # pylint: disable=too-many-return-statements
        """
        Update set produced by ``rule`` in ``state`` under ``env``

        :param rule: Rule AST
        :param taserial.asm.state.State state: Current state
        :param dict env: Variable interpretation
        :param taserial.lib.SeedStream rng: Source of choose witnesses
        :param tuple path: Syntactic path of ``rule`` from the machine's main rule
        :rtype: taserial.asm.state.UpdateSet
        """
        if isinstance(rule, syntax.Skip):
            return EMPTY
        if isinstance(rule, syntax.Assign):
            location = self.location(rule.lhs, state, env)
            return UpdateSet([(location, self.eval_term(rule.rhs, state, env))])
        if isinstance(rule, syntax.If):
            if self.eval_formula(rule.guard, state, env):
                return self.yields(rule.then, state, env, rng, path + (1,))
            return self.yields(rule.otherwise, state, env, rng, path + (2,))
        if isinstance(rule, syntax.Let):
            value = self.eval_term(rule.term, state, env)
            return self.yields(rule.body, state, {**env, rule.var: value}, rng, path + (1,))
        if isinstance(rule, syntax.ForallDo):
            updates = EMPTY
            for d in self.range(rule.var, rule.guard, state, env):
                updates = updates | self.yields(rule.body, state, {**env, rule.var: d}, rng, path + (1,))
            return updates
        if isinstance(rule, syntax.ChooseDo):
            candidates = self.range(rule.var, rule.guard, state, env)
            if not candidates:
                return EMPTY
            d = self.witness(rng, path, candidates, env)
            return self.yields(rule.body, state, {**env, rule.var: d}, rng, path + (1,))
        if isinstance(rule, syntax.Par):
            # both branches share the path, keeping par commutative under choose
            return self.yields(rule.left, state, env, rng, path) | self.yields(rule.right, state, env, rng, path)
        if isinstance(rule, syntax.Seq):
            first = self.yields(rule.left, state, env, rng, path + (0,))
            if not first.consistent():
                logging.getLogger().debug('Sequence stopped on inconsistent update set. %s', {'updates': repr(first)})
                return first
            second = self.yields(rule.right, state.apply(first), env, rng, path + (1,))
            return first.override(second)
        if isinstance(rule, syntax.Call):
            return self.yields(self.expand(rule), state, env, rng, path + ('call', rule.name))
        raise TypeError('Not a rule: %r' % (rule,))


def eval_term(t, s, env, rules=None):
    return Interpreter(rules).eval_term(t, s, env)


def eval_formula(phi, s, env, rules=None):
    return Interpreter(rules).eval_formula(phi, s, env)


def yields(r, s, env, rng=None, rules=None):
    return Interpreter(rules).yields(r, s, env, rng or SeedStream(0))
