"""Recursive-descent parser for the keyword concrete syntax.

Precedence: unary operators (including quantifier prefixes) bind tightest,
then conjunctions/disjunctions, then (r)implications.  Distinct binary
operators at one level must be parenthesized; same-operator chains are
left-associative; implications are non-associative.
"""

from __future__ import annotations

import re
from typing import Optional

from .syntax import (
    App,
    Atom,
    BINARY_OPS,
    Binary,
    Const,
    CORECURRENCES,
    ELEMENTARY,
    EQ_LETTER,
    Formula,
    GENERAL,
    IMPLICATIONS,
    KEYWORDS,
    Letter,
    NOT,
    QUANT_OPS,
    Quant,
    RECURRENCES,
    REPUDIATIONS,
    RIMPLICATIONS,
    TOP,
    BOT,
    Unary,
    Var,
    neg,
)


class ParseError(Exception):
    def __init__(self, message: str, pos: int = -1):
        super().__init__(f"{message}" + (f" (at offset {pos})" if pos >= 0 else ""))
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<sym>[().,=])
    """,
    re.VERBOSE,
)

_IMPL_OPS = frozenset(IMPLICATIONS + RIMPLICATIONS)
_BIN_PLAIN = frozenset(BINARY_OPS) - _IMPL_OPS
_UNARY_PREFIX = frozenset((NOT,) + RECURRENCES + CORECURRENCES + REPUDIATIONS)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        tokens.append((m.lastgroup, m.group(), m.start()))
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, declared: Optional[dict] = None):
        self.tokens = _tokenize(text)
        self.i = 0
        # name -> Letter for atom letters; name -> arity for function letters
        self.letters: dict = {}
        self.functions: dict = {}
        self.variables: set = set()
        if declared:
            for name, letter in declared.items():
                self.letters[name] = letter

    # -- token plumbing ----------------------------------------------------
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, val, pos = self.next()
        if val != text:
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", pos)

    # -- symbol table ------------------------------------------------------
    def _check_role(self, name: str, role: str, pos: int):
        if role != "letter" and name in self.letters:
            raise ParseError(f"{name!r} already used as a game letter", pos)
        if role != "function" and name in self.functions:
            raise ParseError(f"{name!r} already used as a function letter", pos)
        if role != "variable" and name in self.variables:
            raise ParseError(f"{name!r} already used as a variable", pos)

    def atom_letter(self, name: str, arity: int, pos: int) -> Letter:
        self._check_role(name, "letter", pos)
        kind = GENERAL if name[0].isupper() else ELEMENTARY
        letter = self.letters.get(name)
        if letter is None:
            letter = Letter(name, arity, kind)
            self.letters[name] = letter
        elif letter.arity != arity:
            raise ParseError(
                f"letter {name!r} used with arity {arity}, "
                f"declared with {letter.arity}",
                pos,
            )
        return letter

    def function_letter(self, name: str, arity: int, pos: int):
        if name[0].isupper():
            raise ParseError(f"general letter {name!r} cannot head a term", pos)
        self._check_role(name, "function", pos)
        known = self.functions.get(name)
        if known is None:
            self.functions[name] = arity
        elif known != arity:
            raise ParseError(
                f"function letter {name!r} used with arity {arity}, "
                f"declared with {known}",
                pos,
            )

    def variable(self, name: str, pos: int) -> str:
        if name[0].isupper():
            raise ParseError(f"general letter {name!r} cannot be a variable", pos)
        self._check_role(name, "variable", pos)
        self.variables.add(name)
        return name

    # -- grammar -----------------------------------------------------------
    def formula(self) -> Formula:
        left = self.binlevel()
        kind, val, pos = self.peek()
        if val in _IMPL_OPS:
            self.next()
            right = self.binlevel()
            k2, v2, p2 = self.peek()
            if v2 in _IMPL_OPS:
                raise ParseError(
                    f"implications are non-associative; parenthesize around {v2!r}",
                    p2,
                )
            return Binary(val, left, right)
        return left

    def binlevel(self) -> Formula:
        left = self.unary()
        op = None
        while True:
            kind, val, pos = self.peek()
            if val not in _BIN_PLAIN:
                return left
            if op is None:
                op = val
            elif val != op:
                raise ParseError(
                    f"mixing {op!r} and {val!r} at one level needs parentheses",
                    pos,
                )
            self.next()
            left = Binary(op, left, self.unary())

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == NOT:
            self.next()
            return neg(self.unary())
        if val in _UNARY_PREFIX:
            self.next()
            return Unary(val, self.unary())
        if val in QUANT_OPS:
            self.next()
            k2, name, p2 = self.next()
            if k2 != "ident" or name in KEYWORDS:
                raise ParseError(f"expected a variable after {val!r}", p2)
            var = self.variable(name, p2)
            self.expect(".")
            return Quant(val, var, self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if val == "top":
            self.next()
            return TOP
        if val == "bot":
            self.next()
            return BOT
        if kind in ("ident", "num"):
            return self.atom_or_equality()
        raise ParseError(f"expected a formula, found {val or 'end of input'!r}", pos)

    def atom_or_equality(self) -> Formula:
        # A first unit that may turn out to be a term (if '=' follows) or an
        # atom head.  Parse it without committing the symbol table yet.
        kind, val, pos = self.next()
        if kind == "num":
            head = ("const", val, pos)
        else:
            if val in KEYWORDS:
                raise ParseError(f"reserved keyword {val!r} cannot be an identifier", pos)
            if self.peek()[1] == "(":
                args = self.term_args()
                head = ("app", val, pos, args)
            else:
                head = ("bare", val, pos)
        if self.peek()[1] == "=":
            self.next()
            lhs = self.commit_term(head)
            rhs = self.term()
            return Atom(EQ_LETTER, (lhs, rhs))
        # formula head position
        if head[0] == "const":
            raise ParseError(f"constant {head[1]!r} is not a formula", head[2])
        if head[0] == "app":
            letter = self.atom_letter(head[1], len(head[3]), head[2])
            return Atom(letter, head[3])
        return Atom(self.atom_letter(head[1], 0, head[2]), ())

    def commit_term(self, head):
        if head[0] == "const":
            return Const(head[1])
        if head[0] == "app":
            self.function_letter(head[1], len(head[3]), head[2])
            return App(head[1], head[3])
        name, pos = head[1], head[2]
        if name[0].isupper():
            raise ParseError(f"general letter {name!r} cannot appear in a term", pos)
        return Var(self.variable(name, pos))

    def term(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Const(val)
        if kind != "ident" or val in KEYWORDS:
            raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)
        if self.peek()[1] == "(":
            args = self.term_args()
            self.function_letter(val, len(args), pos)
            return App(val, args)
        if val[0].isupper():
            raise ParseError(f"general letter {val!r} cannot appear in a term", pos)
        return Var(self.variable(val, pos))

    def term_args(self) -> tuple:
        self.expect("(")
        if self.peek()[1] == ")":
            self.next()
            return ()
        args = [self.term()]
        while self.peek()[1] == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)


def parse(text: str, declared: Optional[dict] = None) -> Formula:
    """Parse concrete syntax into a Formula.

    ``declared`` optionally pre-declares atom letters (name -> Letter),
    overriding the case-based kind inference.
    """
    p = _Parser(text, declared)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected trailing input {val!r}", pos)
    return f
