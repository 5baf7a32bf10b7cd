from ..asm import syntax
from ..asm.values import sort_key

INDENT = '    '


def format_term(term):
    if isinstance(term, syntax.Var):
        return term.name
    if term.func in ('+', '-') and len(term.args) == 2:
        return '(%s %s %s)' % (format_term(term.args[0]), term.func, format_term(term.args[1]))
    if term.func == '-' and len(term.args) == 1:
        return '(-%s)' % format_term(term.args[0])
    if not term.args:
        return term.func
    return '%s(%s)' % (term.func, ', '.join(format_term(arg) for arg in term.args))


def format_formula(formula):  # pylint: disable=too-many-return-statements
    if isinstance(formula, syntax.Atom):
        return format_term(syntax.Apply(formula.pred, formula.args))
    if isinstance(formula, syntax.Eq):
        return '%s = %s' % (format_term(formula.left), format_term(formula.right))
    if isinstance(formula, syntax.Lt):
        return '%s < %s' % (format_term(formula.left), format_term(formula.right))
    if isinstance(formula, syntax.Not):
        return 'not %s' % format_formula(formula.body)
    if isinstance(formula, syntax.And):
        return '(%s and %s)' % (format_formula(formula.left), format_formula(formula.right))
    if isinstance(formula, syntax.Or):
        return '(%s or %s)' % (format_formula(formula.left), format_formula(formula.right))
    if isinstance(formula, syntax.Forall):
        return '(forall %s : %s)' % (formula.var, format_formula(formula.body))
    if isinstance(formula, syntax.Exists):
        return '(exists %s : %s)' % (formula.var, format_formula(formula.body))
    raise TypeError('Not a formula: %r' % (formula,))


def _spine(rule, kind):
    rules = []
    while isinstance(rule, kind):
        rules.append(rule.left)
        rule = rule.right
    rules.append(rule)
    return rules


def format_rule(rule, depth=0):  # pylint: disable=too-many-return-statements
    pad = INDENT * (depth + 1)
    if isinstance(rule, syntax.Skip):
        return 'skip'
    if isinstance(rule, syntax.Assign):
        return '%s := %s' % (format_term(rule.lhs), format_term(rule.rhs))
    if isinstance(rule, syntax.If):
        return 'if %s then %s else %s' % (format_formula(rule.guard), format_rule(rule.then, depth),
                                          format_rule(rule.otherwise, depth))
    if isinstance(rule, syntax.Let):
        return 'let %s = %s in %s' % (rule.var, format_term(rule.term), format_rule(rule.body, depth))
    if isinstance(rule, (syntax.ForallDo, syntax.ChooseDo)):
        keyword = 'forall' if isinstance(rule, syntax.ForallDo) else 'choose'
        return '%s %s with %s do %s' % (keyword, rule.var, format_formula(rule.guard), format_rule(rule.body, depth))
    if isinstance(rule, (syntax.Par, syntax.Seq)):
        keyword = 'par' if isinstance(rule, syntax.Par) else 'seq'
        body = '\n'.join(pad + format_rule(item, depth + 1) for item in _spine(rule, type(rule)))
        return '%s {\n%s\n%s}' % (keyword, body, INDENT * depth)
    if isinstance(rule, syntax.Call):
        return 'call %s(%s)' % (rule.name, ', '.join(format_term(arg) for arg in rule.args))
    raise TypeError('Not a rule: %r' % (rule,))


def _format_value(value):
    text = repr(value)
    return '(%s)' % text if text.startswith('-') else text


def _format_declarations(keyword, arities):
    return '%s%s %s' % (INDENT, keyword, ', '.join('%s/%d' % (name, arities[name]) for name in sorted(arities)))


def format_program(program):
    """
    Print a machine program in the surface syntax accepted by :func:`taserial.lang.parse_program`

    :param taserial.asm.program.MachineProgram program: The program
    :rtype: str
    """
    lines = ['machine %s' % program.name]
    for keyword, arities in (('shared', program.shared), ('monitored', program.monitored), ('output', program.output)):
        if arities:
            lines.append(_format_declarations(keyword, arities))
    if program.init:
        items = sorted(program.init, key=lambda item: (item[0].key(), sort_key(item[1])))
        assignments = ', '.join('%s := %s' % (_format_location(location), _format_value(value)) for location, value in items)
        lines.append('%sinit %s' % (INDENT, assignments))
    for name in sorted(program.rules):
        decl = program.rules[name]
        lines.append('%srule %s(%s) = %s' % (INDENT, name, ', '.join(decl.params), format_rule(decl.body, 1)))
    lines.append('%srule: %s' % (INDENT, format_rule(program.rule, 1)))
    lines.append('%sterminated: %s' % (INDENT, format_formula(program.terminated)))
    return '\n'.join(lines) + '\n'


def _format_location(location):
    if not location.args:
        return location.func
    return '%s(%s)' % (location.func, ', '.join(_format_value(arg) for arg in location.args))


def format_programs(programs):
    return '\n'.join(format_program(program) for program in programs)
