from .lexer import Lexer, Token, tokenize  # noqa: E402, F401
from .parser import Parser, parse_program, parse_programs  # noqa: E402, F401
from .printer import format_program, format_programs, format_rule, format_formula, format_term  # noqa: E402, F401
