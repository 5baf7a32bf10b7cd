from dataclasses import dataclass

from ..exception import ParseError


KEYWORDS = frozenset([
    'machine', 'shared', 'monitored', 'output', 'init', 'terminated', 'rule',
    'skip', 'if', 'then', 'else', 'let', 'in', 'forall', 'exists', 'with', 'do',
    'choose', 'par', 'seq', 'call', 'not', 'and', 'or', 'true', 'false', 'undef'
])

SYMBOLS = {
    '(': 'LPAREN',
    ')': 'RPAREN',
    '{': 'LBRACE',
    '}': 'RBRACE',
    ',': 'COMMA',
    '/': 'SLASH',
    '+': 'PLUS',
    '-': 'MINUS',
    '=': 'EQ',
    '<': 'LT',
    '>': 'GT',
}

COMPOUND = {
    ':=': 'ASSIGN',
    '!=': 'NEQ',
    '<=': 'LE',
    '>=': 'GE',
}


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    line: int
    column: int


def _is_identifier_start(ch):
    return ch == '_' or ('A' <= ch <= 'Z') or ('a' <= ch <= 'z')


def _is_identifier_part(ch):
    return _is_identifier_start(ch) or ('0' <= ch <= '9')


def _ends_name_at(token, line, column):
    return token is not None and (token.type == 'IDENT' or token.value in KEYWORDS) and token.line == line and \
        token.column + len(token.value) == column


class Lexer:
    """
    Tokenizer of the machine language. ``#`` starts a comment running to the end of the line.
    """

    def __init__(self, text):
        self.text = text
        self.index = 0
        self.line = 1
        self.column = 1

    def tokenize(self):
        tokens = []
        while not self._eof:
            ch = self._peek()
            if ch in ' \t\r\n':
                self._advance()
            elif ch == '#':
                while not self._eof and self._peek() != '\n':
                    self._advance()
            elif self.text[self.index:self.index + 2] in COMPOUND:
                tokens.append(Token(COMPOUND[self.text[self.index:self.index + 2]], self.text[self.index:self.index + 2],
                                    self.line, self.column))
                self._advance(2)
            elif ch == ':':
                tokens.append(self._consume_colon(tokens[-1] if tokens else None))
            elif ch in SYMBOLS:
                tokens.append(Token(SYMBOLS[ch], ch, self.line, self.column))
                self._advance()
            elif '0' <= ch <= '9':
                tokens.append(self._consume_while('INT', lambda c: '0' <= c <= '9'))
            elif _is_identifier_start(ch):
                token = self._consume_while('IDENT', _is_identifier_part)
                if token.value in KEYWORDS:
                    token = Token(token.value.upper(), token.value, token.line, token.column)
                tokens.append(token)
            else:
                raise ParseError("Unexpected character '%s'" % ch, self.line, self.column, ch)
        tokens.append(Token('EOF', '', self.line, self.column))
        return tokens

    def _consume_colon(self, previous):
        """A ``:`` written right after a name or keyword, as in ``rule:skip``, never starts a symbol"""
        line, column = self.line, self.column
        self._advance()
        if _ends_name_at(previous, line, column):
            return Token('COLON', ':', line, column)
        if not self._eof and _is_identifier_start(self._peek()):
            name = self._consume_while('IDENT', _is_identifier_part)
            return Token('SYMBOL', ':' + name.value, line, column)
        return Token('COLON', ':', line, column)

    def _consume_while(self, kind, predicate):
        line, column = self.line, self.column
        start = self.index
        while not self._eof and predicate(self._peek()):
            self._advance()
        return Token(kind, self.text[start:self.index], line, column)

    @property
    def _eof(self):
        return self.index >= len(self.text)

    def _peek(self):
        return self.text[self.index]

    def _advance(self, count=1):
        for _ in range(count):
            if self.text[self.index] == '\n':
                self.line += 1
                self.column = 1
            else:
                self.column += 1
            self.index += 1


def tokenize(text):
    return Lexer(text).tokenize()
