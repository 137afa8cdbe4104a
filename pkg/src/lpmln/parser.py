"""Parser for the weighted-rule input language, evidence files, and query
predicate lists.

Grammar (also reproduced in the README):

    program  := {rule}
    rule     := [weight] (head)? (":-" body)? "."
    weight   := decimal | "@log(" posnum ["/" posnum] ")"
    head     := atom {";" atom} | "{" atom "}"
    body     := element {"," element}
    element  := ["not" ["not"]] atom | term "!=" term
    atom     := ident ["(" term {"," term} ")"]
    term     := ident | variable | integer | quoted

Identifiers are ASCII lowercase-first; variables uppercase-first; comments
run from '%' to end of line.  Input is UTF-8 text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import HARD, Atom, Inequality, Literal, Program, Rule, Term, soft


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class LpmlnSyntaxError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM IDENT VAR QUOTED PUNCT EOF
    text: str
    span: SourceSpan


_PUNCTS = (":-", "!=", "::", "(", ")", "{", "}", ";", ",", ".", "/", "@")

_ASCII_LETTERS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_ASCII_WORD = _ASCII_LETTERS | frozenset("0123456789_")


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def err(msg: str, length: int = 1):
        raise LpmlnSyntaxError(msg, SourceSpan(line, col, length))

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_span = SourceSpan(line, col, 1)
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    err("unterminated quoted constant")
                j += 1
            if j >= n:
                err("unterminated quoted constant")
            tok = text[i:j + 1]
            toks.append(_Token("QUOTED", tok, SourceSpan(line, col, len(tok))))
            col += len(tok)
            i = j + 1
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tok = text[i:j]
            toks.append(_Token("NUM", tok, SourceSpan(line, col, len(tok))))
            col += len(tok)
            i = j
            continue
        if c in _ASCII_LETTERS or c == "_":
            j = i
            while j < n and (text[j] in _ASCII_WORD):
                j += 1
            tok = text[i:j]
            kind = "VAR" if tok[0].isupper() else "IDENT"
            if tok[0] == "_":
                err("identifiers must start with a letter", j - i)
            toks.append(_Token(kind, tok, SourceSpan(line, col, len(tok))))
            col += len(tok)
            i = j
            continue
        for p in _PUNCTS:
            if text.startswith(p, i):
                toks.append(_Token("PUNCT", p, SourceSpan(line, col, len(p))))
                col += len(p)
                i += len(p)
                break
        else:
            err(f"unexpected character {c!r}")
    toks.append(_Token("EOF", "", SourceSpan(line, col, 0)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    # -- token helpers

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.next()
        if t.text != text:
            raise LpmlnSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.span)
        return t

    def at(self, text: str) -> bool:
        return self.peek().text == text

    # -- grammar

    def parse_rules(self, allow_weights: bool = True, allow_problog: bool = False) -> list[Rule]:
        rules = []
        while self.peek().kind != "EOF":
            rules.append(self.rule(len(rules) + 1, allow_weights, allow_problog))
        return rules

    def rule(self, index: int, allow_weights: bool, allow_problog: bool) -> Rule:
        weight = HARD
        t = self.peek()
        if t.kind == "NUM" and allow_problog and self.peek(1).text == "::":
            # ProbLog probabilistic fact: p::atom.
            self.next()
            self.next()
            p = self._num_value(t)
            if not 0.0 < p < 1.0:
                raise LpmlnSyntaxError("probabilistic fact needs 0 < p < 1", t.span)
            head = self.atom()
            self.expect(".")
            return Rule(index, soft(math.log(p / (1.0 - p))), (head,))
        if t.kind == "NUM" and self.peek(1).text != "(":
            # A leading numeric literal followed by anything but '(' is a weight.
            self.next()
            self._reject_weight(t, allow_weights)
            weight = soft(self._num_value(t))
        elif t.text == "@":
            self.next()
            weight = soft(self._log_weight(t, allow_weights))

        head: tuple[Atom, ...] = ()
        is_choice = False
        if self.at("{"):
            self.next()
            head = (self.atom(),)
            self.expect("}")
            is_choice = True
        elif not self.at(":-") and not self.at("."):
            disj = [self.atom()]
            while self.at(";"):
                self.next()
                disj.append(self.atom())
            head = tuple(disj)

        body: tuple = ()
        if self.at(":-"):
            self.next()
            elems = [self.body_element()]
            while self.at(","):
                self.next()
                elems.append(self.body_element())
            body = tuple(elems)

        if not head and not body:
            raise LpmlnSyntaxError("empty rule", self.peek().span)
        self.expect(".")
        return Rule(index, weight, head, body, is_choice)

    def _reject_weight(self, t: _Token, allow_weights: bool) -> None:
        if not allow_weights:
            raise LpmlnSyntaxError("weighted rules are not allowed in evidence files", t.span)

    def _num_value(self, t: _Token) -> float:
        return float(t.text)

    def _log_weight(self, at_tok: _Token, allow_weights: bool) -> float:
        name = self.next()
        if name.text != "log":
            raise LpmlnSyntaxError("expected 'log' after '@'", name.span)
        self._reject_weight(at_tok, allow_weights)
        self.expect("(")
        a = self.next()
        if a.kind != "NUM":
            raise LpmlnSyntaxError("@log expects a number", a.span)
        value = self._num_value(a)
        if self.at("/"):
            self.next()
            b = self.next()
            if b.kind != "NUM":
                raise LpmlnSyntaxError("@log expects a number after '/'", b.span)
            bv = self._num_value(b)
            if bv <= 0.0:
                raise LpmlnSyntaxError("@log denominator must be positive", b.span)
            value /= bv
        self.expect(")")
        if value <= 0.0:
            raise LpmlnSyntaxError("@log of a non-positive value", a.span)
        return math.log(value)

    def atom(self) -> Atom:
        t = self.next()
        if t.kind != "IDENT":
            raise LpmlnSyntaxError(f"expected a predicate name, found {t.text or 'end of input'!r}", t.span)
        args: tuple[Term, ...] = ()
        if self.at("("):
            self.next()
            terms = [self.term()]
            while self.at(","):
                self.next()
                terms.append(self.term())
            self.expect(")")
            args = tuple(terms)
        return Atom(t.text, args)

    def term(self) -> Term:
        t = self.next()
        if t.kind in ("IDENT", "VAR", "QUOTED") or (t.kind == "NUM" and "." not in t.text):
            return Term(t.text)
        raise LpmlnSyntaxError(f"expected a term, found {t.text or 'end of input'!r}", t.span)

    def body_element(self):
        t = self.peek()
        if t.kind == "IDENT" and t.text == "not":
            self.next()
            negation = 1
            if self.peek().kind == "IDENT" and self.peek().text == "not":
                self.next()
                negation = 2
            return Literal(self.atom(), negation)
        if t.kind == "IDENT" and self.peek(1).text not in ("!=",):
            return Literal(self.atom(), 0)
        # term != term  (also covers identifiers on the left)
        lhs = self.term()
        self.expect("!=")
        rhs = self.term()
        return Inequality(lhs, rhs)


def parse_program(text: str) -> Program:
    """Parse program text: soft rules carry a leading decimal weight or a
    ``@log(e)`` expression; unweighted rules are hard."""
    return Program(tuple(_Parser(text).parse_rules()))


def parse_evidence(text: str) -> Program:
    """Parse an evidence file: the program grammar restricted to unweighted
    rules.  All returned rules are hard."""
    return Program(tuple(_Parser(text).parse_rules(allow_weights=False)))


def parse_query_spec(text: str) -> tuple[str, ...]:
    """Parse a comma-separated predicate-name list; matching downstream is
    by name only, at any arity."""
    names = []
    for k, piece in enumerate(text.split(",")):
        name = piece.strip()
        if not name:
            raise LpmlnSyntaxError("empty predicate name", SourceSpan(1, k + 1, 1))
        if name not in names:
            names.append(name)
    return tuple(names)


def pretty_program(program: Program) -> str:
    """Render a program so that re-parsing yields a structurally identical
    value (weights survive the round trip exactly)."""
    return str(program)
