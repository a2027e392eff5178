# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Reader for the scalar text format. ``P | Q`` is a quotient of two expressions, ``^`` takes an integer exponent, and
names are looked up as the field's variables::

    1+t+t^3
    (1 | s)*u
    t^2+1 | t+2
"""

import re
from typing import TYPE_CHECKING

from ..errors import DomainError, MalformedInputError

if TYPE_CHECKING:
    from .field import Field

__all__ = ['parse_scalar']

_token_re = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))')


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _token_re.match(text, pos)
        if not m:
            break
        number, name, op = m.groups()
        if number is not None:
            tokens.append(('int', int(number)))
        elif name is not None:
            tokens.append(('name', name))
        elif op in '+-*/^|()':
            tokens.append(('op', op))
        else:
            raise MalformedInputError(f'unexpected character {op!r} in {text!r}')
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: 'Field'):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.pos = 0

    def _error(self, message: str):
        return MalformedInputError(f'{message} in scalar {self.text!r}')

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None, None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op: str):
        kind, value = self.take()
        if kind != 'op' or value != op:
            raise self._error(f'expected {op!r}')

    def parse(self):
        if not self.tokens:
            raise self._error('empty expression')
        value = self.quotient()
        if self.pos != len(self.tokens):
            raise self._error(f'unexpected {self.peek()[1]!r}')
        return value

    def quotient(self):
        num = self.sum()
        if self.peek() == ('op', '|'):
            self.take()
            den = self.sum()
            if self.field.is_zero(den):
                raise self._error('zero denominator')
            return self.field.div(num, den)
        return num

    def sum(self):
        f = self.field
        value = self.product()
        while self.peek() in (('op', '+'), ('op', '-')):
            _, op = self.take()
            rhs = self.product()
            value = f.add(value, rhs) if op == '+' else f.sub(value, rhs)
        return value

    def product(self):
        f = self.field
        value = self.unary()
        while self.peek() in (('op', '*'), ('op', '/')):
            _, op = self.take()
            rhs = self.unary()
            if op == '*':
                value = f.mul(value, rhs)
            else:
                if f.is_zero(rhs):
                    raise self._error('division by zero')
                value = f.div(value, rhs)
        return value

    def unary(self):
        if self.peek() == ('op', '-'):
            self.take()
            return self.field.neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ('op', '^'):
            self.take()
            sign = 1
            if self.peek() == ('op', '-'):
                self.take()
                sign = -1
            kind, value = self.take()
            if kind != 'int':
                raise self._error('exponent must be an integer')
            try:
                return self.field.pow(base, sign * value)
            except DomainError:
                raise self._error('negative power of zero')
        return base

    def atom(self):
        kind, value = self.take()
        if kind == 'int':
            return self.field.from_int(value)
        if kind == 'name':
            return self.field.gen(value)
        if (kind, value) == ('op', '('):
            inner = self.quotient()
            self.expect(')')
            return inner
        raise self._error('unexpected end' if kind is None else f'unexpected {value!r}')


def parse_scalar(text: str, field: 'Field'):
    """Parse a scalar string into an element of ``field``."""
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return field.from_int(text)
        raise MalformedInputError(f'scalar must be a string, got {text!r}')
    return _Parser(text, field).parse()
