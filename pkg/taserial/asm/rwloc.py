"""
Read and write locations of terms, formulae and rules, computed in a given
state by structural induction. Choose witnesses are drawn exactly as
:meth:`taserial.asm.interpreter.Interpreter.yields` draws them.
"""
from dataclasses import dataclass

from . import syntax
from .interpreter import Interpreter
from ..lib import SeedStream


@dataclass(frozen=True)
class RwSet:
    """
    :ivar frozenset reads: Read locations
    :ivar frozenset writes: Write locations
    """
    reads: frozenset = frozenset()
    writes: frozenset = frozenset()

    def __or__(self, other):
        return RwSet(self.reads | other.reads, self.writes | other.writes)


NONE = RwSet()


class RwAnalyzer:

    def __init__(self, rules=None):
        self.interpreter = Interpreter(rules)

    def term(self, t, s, env):
        """The ``writes`` component holds the location a term denotes, used for assignment targets"""
        if isinstance(t, syntax.Var):
            return NONE
        reads = frozenset().union(*(self.term(arg, s, env).reads for arg in t.args))
        if syntax.is_static_name(t.func):
            return RwSet(reads)
        location = self.interpreter.location(t, s, env)
        return RwSet(reads | {location}, frozenset([location]))

    def formula(self, phi, s, env):
        if isinstance(phi, syntax.Atom):
            return RwSet(self.term(syntax.Apply(phi.pred, phi.args), s, env).reads)
        if isinstance(phi, (syntax.Eq, syntax.Lt)):
            return RwSet(self.term(phi.left, s, env).reads | self.term(phi.right, s, env).reads)
        if isinstance(phi, syntax.Not):
            return self.formula(phi.body, s, env)
        if isinstance(phi, (syntax.And, syntax.Or)):
            return self.formula(phi.left, s, env) | self.formula(phi.right, s, env)
        if isinstance(phi, (syntax.Forall, syntax.Exists)):
            result = NONE
            for d in s.domain:
                result = result | self.formula(phi.body, s, {**env, phi.var: d})
            return result
        raise TypeError('Not a formula: %r' % (phi,))

    def rule(self, r, s, env, rng, path=()):  # pylint: disable=too-many-return-statements
        if isinstance(r, syntax.Skip):
            return NONE
        if isinstance(r, syntax.Assign):
            lhs = self.term(r.lhs, s, env)
            return RwSet(lhs.reads | self.term(r.rhs, s, env).reads, lhs.writes)
        if isinstance(r, syntax.If):
            guard = self.formula(r.guard, s, env)
            if self.interpreter.eval_formula(r.guard, s, env):
                return guard | self.rule(r.then, s, env, rng, path + (1,))
            return guard | self.rule(r.otherwise, s, env, rng, path + (2,))
        if isinstance(r, syntax.Let):
            binder = self.term(r.term, s, env)
            value = self.interpreter.eval_term(r.term, s, env)
            return RwSet(binder.reads) | self.rule(r.body, s, {**env, r.var: value}, rng, path + (1,))
        if isinstance(r, syntax.ForallDo):
            result = self.formula(syntax.Forall(r.var, r.guard), s, env)
            for d in self.interpreter.range(r.var, r.guard, s, env):
                result = result | self.rule(r.body, s, {**env, r.var: d}, rng, path + (1,))
            return result
        if isinstance(r, syntax.ChooseDo):
            guard = self.formula(syntax.Exists(r.var, r.guard), s, env)
            candidates = self.interpreter.range(r.var, r.guard, s, env)
            if not candidates:
                return guard
            d = self.interpreter.witness(rng, path, candidates, env)
            return guard | self.rule(r.body, s, {**env, r.var: d}, rng, path + (1,))
        if isinstance(r, syntax.Par):
            return self.rule(r.left, s, env, rng, path) | self.rule(r.right, s, env, rng, path)
        if isinstance(r, syntax.Seq):
            first = self.rule(r.left, s, env, rng, path + (0,))
            updates = self.interpreter.yields(r.left, s, env, rng, path + (0,))
            if not updates.consistent():
                return first
            return first | self.rule(r.right, s.apply(updates), env, rng, path + (1,))
        if isinstance(r, syntax.Call):
            return self.rule(self.interpreter.expand(r), s, env, rng, path + ('call', r.name))
        raise TypeError('Not a rule: %r' % (r,))


def rw_term(t, s, env):
    return RwAnalyzer().term(t, s, env)


def rw_formula(phi, s, env):
    return RwAnalyzer().formula(phi, s, env)


def rw_rule(r, s, env, rng=None, rules=None):
    return RwAnalyzer(rules).rule(r, s, env, rng or SeedStream(0))
