import logging
from contextlib import contextmanager

import networkx as nx
from pyrsistent import pmap

from .lexer import tokenize
from ..asm import syntax
from ..asm.interpreter import Interpreter
from ..asm.program import LocationClass, MachineProgram
from ..asm.state import Location, State
from ..asm.values import UNDEF
from ..exception import ArityError, ParseError, RecursiveRule, TASerialException, UnknownIdentifier


COMPARISONS = frozenset(['EQ', 'NEQ', 'LT', 'GT', 'LE', 'GE'])
ARITHMETIC = frozenset(['PLUS', 'MINUS'])
LITERAL_KEYWORDS = frozenset(['TRUE', 'FALSE', 'UNDEF'])


class _MachineBuilder:  # pylint: disable=too-many-instance-attributes

    def __init__(self, token):
        self.token = token
        self.name = None
        self.classes = {LocationClass.Shared: {}, LocationClass.Monitored: {}, LocationClass.Output: {}}
        self.arities = {}
        self.init = {}
        self.rules = {}
        self.rule = None
        self.terminated = None
        self.calls = []
        self.assigns = []

    def declare(self, kind, name, arity, token):
        for other, names in self.classes.items():
            if name in names:
                raise ParseError('Function already declared %s' % other, token.line, token.column, name)
        self.classes[kind][name] = arity
        previous = self.arities.get(name)
        if previous is not None and previous[0] != arity:
            raise ArityError(name, previous[0], arity, token.line, token.column)
        self.arities[name] = (arity, token)

    def use(self, name, arity, token):
        previous = self.arities.get(name)
        if previous is None:
            self.arities[name] = (arity, token)
        elif previous[0] != arity:
            raise ArityError(name, previous[0], arity, token.line, token.column)

    def build(self):
        if self.rule is None:
            raise ParseError('Machine has no main rule', self.token.line, self.token.column, self.name)
        for name, arity, token in self.calls:
            decl = self.rules.get(name)
            if decl is None:
                raise UnknownIdentifier(name, token.line, token.column)
            if len(decl.params) != arity:
                raise ArityError(name, len(decl.params), arity, token.line, token.column)
        for func, token in self.assigns:
            if func in self.classes[LocationClass.Monitored]:
                raise ParseError('Cannot assign to a monitored function', token.line, token.column, func)
        self._check_recursion()
        program = MachineProgram(
            name=self.name,
            rule=self.rule,
            terminated=self.terminated if self.terminated is not None else syntax.Atom('false'),
            shared=pmap(self.classes[LocationClass.Shared]),
            monitored=pmap(self.classes[LocationClass.Monitored]),
            output=pmap(self.classes[LocationClass.Output]),
            init=tuple(sorted(self.init.items(), key=lambda item: item[0].key())),
            rules=pmap(self.rules)
        )
        external = sorted(name for name, _ in syntax.functions(program.terminated)
                          if program.classify(name) != LocationClass.Controlled)
        if external:
            logging.getLogger().warning('Termination formula reads non-controlled functions. %s',
                                        {'machine': self.name, 'functions': external})
        return program

    def _check_recursion(self):
        graph = nx.DiGraph()
        for name, decl in self.rules.items():
            graph.add_node(name)
            for callee in syntax.calls(decl.body):
                graph.add_edge(name, callee)
        try:
            cycle = nx.find_cycle(graph, orientation='original')
        except nx.NetworkXNoCycle:
            return
        raise RecursiveRule(self.name, [edge[0] for edge in cycle])


class Parser:
    """
    Recursive-descent parser of machine programs.

    Identifiers bound by ``let``, ``forall``, ``choose``, quantifiers or rule
    parameters denote variables; every other identifier is a function.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0
        self.scope = []
        self.machine = None

    def parse(self):
        machines = []
        names = set()
        while self._peek().type != 'EOF':
            program = self._parse_machine()
            if program.name in names:
                raise ParseError('Duplicate machine', self.machine.token.line, self.machine.token.column, program.name)
            names.add(program.name)
            machines.append(program)
        if not machines:
            token = self._peek()
            raise ParseError('Expected at least one machine', token.line, token.column)
        return tuple(machines)

    def _parse_machine(self):
        self.machine = _MachineBuilder(self._expect('MACHINE'))
        self.machine.name = self._expect('IDENT').value
        while self._peek().type not in ('MACHINE', 'EOF'):
            token = self._peek()
            if token.type in ('SHARED', 'MONITORED', 'OUTPUT'):
                self._advance()
                self._parse_declarations(token.value)
            elif token.type == 'INIT':
                self._advance()
                self._parse_init()
            elif token.type == 'TERMINATED':
                self._advance()
                self._expect('COLON')
                self.machine.terminated = self._parse_formula()
            elif token.type == 'RULE':
                self._advance()
                self._parse_rule_section()
            else:
                raise ParseError('Expected a machine section', token.line, token.column, token.value)
        return self.machine.build()

    def _parse_declarations(self, kind):
        while True:
            token = self._expect('IDENT')
            self._expect('SLASH')
            arity = int(self._expect('INT').value)
            self.machine.declare(kind, token.value, arity, token)
            if not self._match('COMMA'):
                break

    def _parse_init(self):
        interpreter = Interpreter()
        empty = State()
        while True:
            token = self._peek()
            lhs = self._parse_term()
            self._expect('ASSIGN')
            rhs = self._parse_term()
            if not isinstance(lhs, syntax.Apply) or syntax.is_static_name(lhs.func):
                raise ParseError('Initial value must be assigned to a location', token.line, token.column)
            try:
                location = Location(lhs.func, tuple(interpreter.eval_term(arg, empty, {}) for arg in lhs.args))
                value = interpreter.eval_term(rhs, empty, {})
            except TASerialException:
                raise ParseError('Initial values must be literals', token.line, token.column, lhs.func)
            if UNDEF in location.args:
                raise ParseError('Initial location arguments must be defined', token.line, token.column, lhs.func)
            if location in self.machine.init and self.machine.init[location] != value:
                raise ParseError('Conflicting initial values', token.line, token.column, repr(location))
            self.machine.init[location] = value
            if not self._match('COMMA'):
                break

    def _parse_rule_section(self):
        if self._match('COLON'):
            self.machine.rule = self._parse_rule()
            return
        token = self._expect('IDENT')
        params = []
        if self._match('LPAREN'):
            if self._peek().type != 'RPAREN':
                while True:
                    params.append(self._expect('IDENT').value)
                    if not self._match('COMMA'):
                        break
            self._expect('RPAREN')
        if len(set(params)) != len(params):
            raise ParseError('Duplicate rule parameter', token.line, token.column, token.value)
        if token.value in self.machine.rules:
            raise ParseError('Duplicate rule', token.line, token.column, token.value)
        self._expect('EQ')
        with self._binding(*params):
            body = self._parse_rule()
        self.machine.rules[token.value] = syntax.RuleDecl(token.value, tuple(params), body)

    # Rules

    def _parse_rule(self):  # pylint: disable=too-many-return-statements
        token = self._peek()
        if self._match('SKIP'):
            return syntax.Skip()
        if self._match('IF'):
            guard = self._parse_formula()
            self._expect('THEN')
            then = self._parse_rule()
            otherwise = self._parse_rule() if self._match('ELSE') else syntax.Skip()
            return syntax.If(guard, then, otherwise)
        if self._match('LET'):
            var = self._expect('IDENT').value
            self._expect('EQ')
            term = self._parse_term()
            self._expect('IN')
            with self._binding(var):
                return syntax.Let(var, term, self._parse_rule())
        if token.type in ('FORALL', 'CHOOSE'):
            self._advance()
            var = self._expect('IDENT').value
            self._expect('WITH')
            with self._binding(var):
                guard = self._parse_formula()
                self._expect('DO')
                body = self._parse_rule()
            kind = syntax.ForallDo if token.type == 'FORALL' else syntax.ChooseDo
            return kind(var, guard, body)
        if token.type in ('PAR', 'SEQ'):
            self._advance()
            self._expect('LBRACE')
            rules = []
            while not self._match('RBRACE'):
                rules.append(self._parse_rule())
            return syntax.par(*rules) if token.type == 'PAR' else syntax.seq(*rules)
        if self._match('CALL'):
            name = self._expect('IDENT')
            args = self._parse_arguments() if self._peek().type == 'LPAREN' else ()
            self.machine.calls.append((name.value, len(args), name))
            return syntax.Call(name.value, args)
        return self._parse_assignment()

    def _parse_assignment(self):
        token = self._peek()
        if token.type not in ('IDENT', 'LPAREN', 'INT', 'SYMBOL', 'MINUS') and token.type not in LITERAL_KEYWORDS:
            raise ParseError('Expected a rule', token.line, token.column, token.value)
        lhs = self._parse_term()
        self._expect('ASSIGN')
        rhs = self._parse_term()
        if not isinstance(lhs, syntax.Apply) or syntax.is_static_name(lhs.func):
            raise ParseError('Left side of an assignment must be a location', token.line, token.column, token.value)
        self.machine.assigns.append((lhs.func, token))
        return syntax.Assign(lhs, rhs)

    # Formulae

    def _parse_formula(self):
        left = self._parse_conjunction()
        while self._match('OR'):
            left = syntax.Or(left, self._parse_conjunction())
        return left

    def _parse_conjunction(self):
        left = self._parse_negation()
        while self._match('AND'):
            left = syntax.And(left, self._parse_negation())
        return left

    def _parse_negation(self):
        token = self._peek()
        if self._match('NOT'):
            return syntax.Not(self._parse_negation())
        if token.type in ('FORALL', 'EXISTS'):
            self._advance()
            var = self._expect('IDENT').value
            self._expect('COLON')
            with self._binding(var):
                body = self._parse_formula()
            return syntax.Forall(var, body) if token.type == 'FORALL' else syntax.Exists(var, body)
        return self._parse_comparison()

    def _parse_comparison(self):
        if self._peek().type == 'LPAREN':
            mark = self.index
            try:
                self._advance()
                formula = self._parse_formula()
                self._expect('RPAREN')
                if self._peek().type not in COMPARISONS | ARITHMETIC:
                    return formula
            except ParseError:
                pass
            self.index = mark
        left = self._parse_term()
        op = self._peek().type
        if op in COMPARISONS:
            self._advance()
            right = self._parse_term()
            return {
                'EQ': lambda: syntax.Eq(left, right),
                'NEQ': lambda: syntax.Not(syntax.Eq(left, right)),
                'LT': lambda: syntax.Lt(left, right),
                'GT': lambda: syntax.Lt(right, left),
                'LE': lambda: syntax.Not(syntax.Lt(right, left)),
                'GE': lambda: syntax.Not(syntax.Lt(left, right)),
            }[op]()
        if isinstance(left, syntax.Var):
            return syntax.Eq(left, syntax.Apply('true'))
        return syntax.Atom(left.func, left.args)

    # Terms

    def _parse_term(self):
        left = self._parse_unary()
        while self._peek().type in ARITHMETIC:
            op = self._advance()
            left = syntax.Apply(op.value, (left, self._parse_unary()))
        return left

    def _parse_unary(self):
        if self._match('MINUS'):
            return syntax.Apply('-', (self._parse_unary(),))
        return self._parse_primary()

    def _parse_primary(self):
        token = self._advance()
        if token.type in ('INT', 'SYMBOL') or token.type in LITERAL_KEYWORDS:
            return syntax.Apply(token.value)
        if token.type == 'LPAREN':
            term = self._parse_term()
            self._expect('RPAREN')
            return term
        if token.type != 'IDENT':
            raise ParseError('Expected a term', token.line, token.column, token.value)
        if self._peek().type == 'LPAREN':
            args = self._parse_arguments()
        elif self._is_bound(token.value):
            return syntax.Var(token.value)
        else:
            args = ()
        self.machine.use(token.value, len(args), token)
        return syntax.Apply(token.value, args)

    def _parse_arguments(self):
        self._expect('LPAREN')
        args = []
        if self._peek().type != 'RPAREN':
            while True:
                args.append(self._parse_term())
                if not self._match('COMMA'):
                    break
        self._expect('RPAREN')
        return tuple(args)

    # Plumbing

    @contextmanager
    def _binding(self, *names):
        self.scope.append(frozenset(names))
        try:
            yield
        finally:
            self.scope.pop()

    def _is_bound(self, name):
        return any(name in names for names in self.scope)

    def _peek(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.tokens[self.index]
        if token.type != 'EOF':
            self.index += 1
        return token

    def _match(self, kind):
        if self._peek().type == kind:
            self._advance()
            return True
        return False

    def _expect(self, kind):
        token = self._peek()
        if token.type != kind:
            raise ParseError('Expected %s' % kind, token.line, token.column, token.value)
        return self._advance()


def parse_programs(text):
    """
    Parse every machine declared in ``text``

    :param str text: Program source
    :return tuple: :class:`taserial.asm.program.MachineProgram` per machine, in declaration order
    :raises taserial.exception.ParseError: on syntax errors, with line and column
    """
    return Parser(tokenize(text)).parse()


def parse_program(text):
    """Parse a source holding exactly one machine"""
    programs = parse_programs(text)
    if len(programs) != 1:
        raise ParseError('Expected exactly one machine', 1, 1, [program.name for program in programs])
    return programs[0]
