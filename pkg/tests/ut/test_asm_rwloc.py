from hypothesis import given, settings, strategies as st

from taserial.asm import syntax
from taserial.asm.interpreter import Interpreter
from taserial.asm.rwloc import RwAnalyzer, rw_formula, rw_rule, rw_term
from taserial.asm.state import State
from taserial.exception import EvaluationError
from taserial.lang import parse_program
from taserial.lib import SeedStream
from tests.ut import base
from tests.ut.base import loc


def rule_of(text):
    return parse_program('machine T\n    rule: %s\n' % text).rule


def _plus(left, right):
    return syntax.Apply('+', (left, right))


def _f(arg):
    return syntax.Apply('f', (arg,))


_leaves = st.one_of(st.sampled_from([syntax.Apply('x'), syntax.Apply('y'), syntax.Apply('z')]),
                    st.integers(0, 3).map(lambda n: syntax.Apply(str(n))))
terms = st.recursive(_leaves, lambda t: st.one_of(st.builds(_plus, t, t), st.builds(_f, t)), max_leaves=4)
targets = st.one_of(st.sampled_from([syntax.Apply('x'), syntax.Apply('y')]), st.builds(_f, terms))
guards = st.builds(syntax.Lt, terms, terms)


def _bounded(kind, var):
    body = st.builds(lambda t: syntax.Assign(_f(syntax.Var(var)), _plus(syntax.Var(var), t)), terms)
    return st.builds(lambda bound, b: kind(var, syntax.Lt(syntax.Var(var), bound), b), terms, body)


rules = st.recursive(
    st.one_of(st.just(syntax.Skip()), st.builds(syntax.Assign, targets, terms)),
    lambda r: st.one_of(
        st.builds(syntax.If, guards, r, r),
        st.builds(syntax.Par, r, r),
        st.builds(syntax.Seq, r, r),
        _bounded(syntax.ForallDo, 'i'),
        _bounded(syntax.ChooseDo, 'j'),
        st.builds(lambda t, b: syntax.Let('v', t, b), terms, r),
    ),
    max_leaves=6
)

STATE = State({loc('x'): 1, loc('y'): 2, loc('z'): 0, loc('f', 0): 3, loc('f', 1): 0, loc('f', 2): 1, loc('f', 3): 2},
              domain=range(4))


class TestAsmRwloc(base.BaseTest):

    def test_term(self):
        rw = rw_term(_f(syntax.Apply('x')), STATE, {})
        self.assertEqual(rw.reads, frozenset([loc('x'), loc('f', 1)]))
        self.assertEqual(rw.writes, frozenset([loc('f', 1)]))

    def test_static_term_reads_nothing(self):
        self.assertEqual(rw_term(_plus(syntax.Apply('1'), syntax.Apply('2')), STATE, {}).reads, frozenset())

    def test_formula(self):
        rw = rw_formula(syntax.Lt(syntax.Apply('x'), _f(syntax.Apply('z'))), STATE, {})
        self.assertEqual(rw.reads, frozenset([loc('x'), loc('z'), loc('f', 0)]))
        self.assertEqual(rw.writes, frozenset())

    def test_quantifier_reads_every_instance(self):
        rw = rw_formula(syntax.Exists('i', syntax.Eq(_f(syntax.Var('i')), syntax.Apply('0'))), STATE, {})
        self.assertEqual(rw.reads, frozenset(loc('f', d) for d in range(4)))

    def test_assign(self):
        rw = rw_rule(rule_of('f(x) := y + 1'), STATE, {})
        self.assertEqual(rw.reads, frozenset([loc('x'), loc('y'), loc('f', 1)]))
        self.assertEqual(rw.writes, frozenset([loc('f', 1)]))

    def test_if_follows_taken_branch(self):
        rw = rw_rule(rule_of('if x < 2 then y := 0 else z := 0'), STATE, {})
        self.assertEqual(rw.writes, frozenset([loc('y')]))
        self.assertNotIn(loc('z'), rw.reads)

    def test_let(self):
        rw = rw_rule(rule_of('let v = y in f(v) := 0'), STATE, {})
        self.assertEqual(rw.writes, frozenset([loc('f', 2)]))
        self.assertIn(loc('y'), rw.reads)

    def test_seq_sees_first_updates(self):
        rw = rw_rule(rule_of('seq { x := 3  f(x) := 1 }'), STATE, {})
        self.assertEqual(rw.writes, frozenset([loc('x'), loc('f', 3)]))

    def test_choose_matches_execution(self):
        rule = rule_of('choose k with k < 4 do f(k) := 1')
        for seed in range(20):
            rng = SeedStream(seed)
            updates = Interpreter().yields(rule, STATE, {}, rng)
            self.assertEqual(rw_rule(rule, STATE, {}, rng).writes, updates.locations())

    @settings(max_examples=300, deadline=None)
    @given(rules, st.integers(0, 1000))
    def test_rule_matches_execution(self, rule, seed):
        rng = SeedStream(seed)
        reads = set()
        try:
            rw = RwAnalyzer().rule(rule, STATE, {}, rng)
            updates = Interpreter(recorder=reads.add).yields(rule, STATE, {}, rng)
        except EvaluationError:
            return
        self.assertEqual(updates.locations(), rw.writes)
        self.assertLessEqual(reads, rw.reads)
