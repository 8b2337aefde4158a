"""Tiny recursive-descent parser for arithmetic expressions.

The grammar is shared by ring elements (``3/2``, ``(1+t)/(1-t)``) and
polynomials (``x0^2 + 3*x0*x1 - 5*x2^2``).  The parser knows nothing about
the target algebra; it calls back into an object providing ``const``,
``symbol``, ``add``, ``sub``, ``mul``, ``div``, ``neg`` and ``pow``.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", text, start)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra):
        self.text = text
        self.alg = algebra
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while (tok := self.peek())[0] == "op" and tok[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = self.alg.add(value, rhs) if op == "+" else self.alg.sub(value, rhs)
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    value = self.alg.mul(value, rhs)
                else:
                    try:
                        value = self.alg.div(value, rhs)
                    except (ZeroDivisionError, ValueError, ArithmeticError) as exc:
                        raise ParseError(str(exc), self.text, tok[2]) from None
            elif tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("):
                # implicit multiplication such as 3x0 or 2(x0+x1)
                value = self.alg.mul(value, self.unary())
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return self.alg.neg(value) if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", exp_tok)
            return self.alg.pow(base, int(exp_tok[1]))
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return self.alg.const(int(tok[1]))
        if tok[0] == "name":
            try:
                return self.alg.symbol(tok[1])
            except KeyError:
                raise ParseError(f"unknown symbol {tok[1]!r}", self.text, tok[2]) from None
            except ValueError as exc:
                raise ParseError(str(exc), self.text, tok[2]) from None
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return value
        self.fail("unexpected token", tok)


def parse_expression(text: str, algebra):
    return _Parser(text, algebra).parse()
