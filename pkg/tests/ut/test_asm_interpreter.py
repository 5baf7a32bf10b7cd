from taserial.asm import syntax
from taserial.asm.interpreter import Interpreter, eval_formula, eval_term, yields
from taserial.asm.state import EMPTY, State
from taserial.asm.values import FALSE, TRUE, UNDEF, Symbol
from taserial.exception import ArityMismatch, UnboundVariable, UndefinedArgument, UnknownRule
from taserial.lang import parse_program
from taserial.lib import SeedStream
from tests.ut import base
from tests.ut.base import loc


def rule_of(text):
    return parse_program('machine T\n    rule: %s\n' % text).rule


def formula_of(text):
    return parse_program('machine T\n    rule: skip\n    terminated: %s\n' % text).terminated


class TestAsmInterpreter(base.BaseTest):

    def setUp(self):
        super().setUp()
        self._state = State({loc('x'): 2, loc('f', 0): 0, loc('f', 1): 0, loc('f', 2): 5, loc('t'): TRUE},
                            domain=range(3))

    def test_arithmetic(self):
        self.assertEqual(eval_term(syntax.Apply('+', (syntax.Apply('x'), syntax.Apply('1'))), self._state, {}), 3)
        self.assertEqual(eval_term(syntax.Apply('-', (syntax.Apply('x'),)), self._state, {}), -2)

    def test_arithmetic_on_undef(self):
        self.assertIs(eval_term(syntax.Apply('+', (syntax.Apply('y'), syntax.Apply('1'))), self._state, {}), UNDEF)
        self.assertIs(eval_term(syntax.Apply('+', (syntax.Apply('t'), syntax.Apply('1'))), self._state, {}), UNDEF)

    def test_literals(self):
        self.assertIs(eval_term(syntax.Apply('true'), self._state, {}), TRUE)
        self.assertIs(eval_term(syntax.Apply('undef'), self._state, {}), UNDEF)
        self.assertEqual(eval_term(syntax.Apply(':red'), self._state, {}), Symbol('red'))

    def test_static_arity(self):
        with self.assertRaises(ArityMismatch):
            eval_term(syntax.Apply('+', (syntax.Apply('1'),) * 3), self._state, {})

    def test_unbound_variable(self):
        with self.assertRaises(UnboundVariable):
            eval_term(syntax.Var('v'), self._state, {})

    def test_formulae(self):
        self.assertTrue(eval_formula(formula_of('x = 2 and not x < 2'), self._state, {}))
        self.assertTrue(eval_formula(formula_of('t'), self._state, {}))
        self.assertFalse(eval_formula(formula_of('t = 1'), self._state, {}))
        self.assertFalse(eval_formula(formula_of('t < 3'), self._state, {}))
        self.assertTrue(eval_formula(formula_of('exists i : f(i) = 5'), self._state, {}))
        self.assertFalse(eval_formula(formula_of('forall i : f(i) = 0'), self._state, {}))
        self.assertTrue(eval_formula(formula_of('x >= 2 or y = 1'), self._state, {}))

    def test_assign(self):
        self.assert_updates(yields(rule_of('f(x) := x + 1'), self._state, {}), {('f', 2): 3})

    def test_assign_undefined_argument(self):
        with self.assertRaises(UndefinedArgument):
            yields(rule_of('f(y) := 1'), self._state, {})

    def test_if_without_else(self):
        self.assertEqual(yields(rule_of('if x = 3 then x := 0'), self._state, {}), EMPTY)
        self.assert_updates(yields(rule_of('if x = 2 then x := 0'), self._state, {}), {('x',): 0})

    def test_par_is_simultaneous(self):
        updates = yields(rule_of('par { x := f(2)  f(2) := x }'), self._state, {})
        self.assert_updates(updates, {('x',): 5, ('f', 2): 2})

    def test_par_clash_is_reported_not_raised(self):
        updates = yields(rule_of('par { x := 1  x := 2 }'), self._state, {})
        self.assertEqual(updates.clashes(), frozenset([loc('x')]))

    def test_seq_reads_intermediate_state(self):
        self.assert_updates(yields(rule_of('seq { x := 7  y := x + 1 }'), self._state, {}), {('x',): 7, ('y',): 8})

    def test_seq_overrides(self):
        self.assert_updates(yields(rule_of('seq { x := 7  x := 9 }'), self._state, {}), {('x',): 9})

    def test_seq_stops_on_clash(self):
        updates = yields(rule_of('seq { par { x := 1  x := 2 }  y := 1 }'), self._state, {})
        self.assertFalse(updates.consistent())
        self.assertNotIn(loc('y'), updates.locations())

    def test_let(self):
        self.assert_updates(yields(rule_of('let v = x + 1 in y := v'), self._state, {}), {('y',): 3})

    def test_forall(self):
        updates = yields(rule_of('forall i with f(i) = 0 do g(i) := i'), self._state, {})
        self.assert_updates(updates, {('g', 0): 0, ('g', 1): 1})

    def test_choose_is_deterministic(self):
        rule = rule_of('choose i with i < 3 do g := i')
        first = yields(rule, self._state, {}, SeedStream(4))
        self.assertEqual(first, yields(rule, self._state, {}, SeedStream(4)))
        self.assertIn(dict(first)[loc('g')], (0, 1, 2))

    def test_choose_depends_on_seed(self):
        rule = rule_of('choose i with i < 3 do g := i')
        witnesses = {dict(yields(rule, self._state, {}, SeedStream(seed)))[loc('g')] for seed in range(50)}
        self.assertGreater(len(witnesses), 1)

    def test_choose_empty_range(self):
        self.assertEqual(yields(rule_of('choose i with f(i) = 9 do g := i'), self._state, {}), EMPTY)

    def test_par_commutes_under_choose(self):
        left = rule_of('par { choose i with i < 3 do a := i  b := 1 }')
        right = syntax.Par(left.right, left.left)
        for seed in range(10):
            self.assertEqual(yields(left, self._state, {}, SeedStream(seed)),
                             yields(right, self._state, {}, SeedStream(seed)))

    def test_call(self):
        program = parse_program("""
machine T
    rule bump(i) = f(i) := f(i) + 1
    rule: par {
        call bump(2)
        call bump(0)
    }
""")
        updates = program.interpreter().yields(program.rule, self._state, {}, SeedStream(0))
        self.assert_updates(updates, {('f', 2): 6, ('f', 0): 1})

    def test_call_unknown_rule(self):
        with self.assertRaises(UnknownRule):
            Interpreter().yields(syntax.Call('missing'), self._state, {}, SeedStream(0))

    def test_call_arity(self):
        program = parse_program('machine T\n    rule bump(i) = f(i) := 1\n    rule: call bump(1)\n')
        with self.assertRaises(ArityMismatch):
            program.interpreter().yields(syntax.Call('bump', ()), self._state, {}, SeedStream(0))

    def test_recorder_sees_every_read(self):
        reads = []
        Interpreter(recorder=reads.append).yields(rule_of('if x = 2 then f(x) := f(0) else skip'), self._state, {},
                                                   SeedStream(0))
        self.assertEqual(set(reads), {loc('x'), loc('f', 0)})

    def test_boolean_assignment(self):
        self.assert_updates(yields(rule_of('par { t := false  u := :on }'), self._state, {}),
                            {('t',): FALSE, ('u',): Symbol('on')})
