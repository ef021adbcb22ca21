"""Controlled grammar for statements, in the ``c_`` / ``_or_`` notation.

    all F are G          some F are c_G
    no F are G           some a are not c_F
    all c_G are c_F      all F are G_or_H
"""

from __future__ import annotations

import re

from .logic import Quantifier, Statement, Term

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at column {position + 1}:\n  {text}\n  {' ' * position}^")


def _tokens(text: str):
    return [(m.group(), m.start()) for m in re.finditer(r"\S+", text)]


def _literal(word: str, pos: int, text: str, atomic: frozenset) -> Term:
    complemented = word.startswith("c_")
    name = word[2:] if complemented else word
    if not _NAME.match(name):
        raise ParseError(f"bad term name {name!r}", text, pos + (2 if complemented else 0))
    if complemented and name in atomic:
        raise ParseError(f"atomic term {name!r} cannot be complemented", text, pos)
    return Term(name, complemented, name in atomic)


def _predicate(word: str, pos: int, text: str, atomic: frozenset) -> tuple:
    parts = word.split("_or_")
    if len(parts) > 2:
        raise ParseError("at most two disjuncts are supported", text, pos)
    terms = []
    offset = pos
    for part in parts:
        if not part:
            raise ParseError("empty disjunct", text, offset)
        terms.append(_literal(part, offset, text, atomic))
        offset += len(part) + 4
    return tuple(terms)


def parse_statement(text: str, atomic=()) -> Statement:
    atomic = frozenset(atomic)
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty statement", text, 0)
    quant, qpos = toks[0]
    if quant not in ("all", "some", "no"):
        raise ParseError(f"expected 'all', 'some' or 'no', found {quant!r}", text, qpos)
    if len(toks) < 4:
        end = toks[-1][1] + len(toks[-1][0])
        raise ParseError("statement is incomplete", text, end)
    (subj, spos), (verb, vpos) = toks[1], toks[2]
    if verb != "are":
        raise ParseError(f"expected 'are', found {verb!r}", text, vpos)
    rest = toks[3:]
    q = {"all": Quantifier.ALL, "some": Quantifier.SOME, "no": Quantifier.NO}[quant]
    if quant == "some" and rest[0][0] == "not":
        q = Quantifier.SOME_NOT
        rest = rest[1:]
        if not rest:
            raise ParseError("missing predicate after 'not'", text, len(text))
    if len(rest) != 1:
        raise ParseError(f"unexpected {rest[1][0]!r}", text, rest[1][1])
    word, ppos = rest[0]
    subject = _literal(subj, spos, text, atomic)
    predicate = _predicate(word, ppos, text, atomic)
    if len(predicate) == 2 and q is not Quantifier.ALL:
        raise ParseError("a disjunctive predicate needs 'all'", text, qpos)
    return Statement(q, subject, predicate)


def format_statement(s: Statement) -> str:
    return str(s)


def parse_line(line: str, atomic=()) -> tuple:
    """Split ``"s1, s2, ..., conclusion"`` into (premises, conclusion)."""
    parts = [p.strip() for p in line.split(",")]
    statements = [parse_statement(p, atomic) for p in parts]
    if len(statements) < 2:
        raise ParseError("need at least one premise and a conclusion", line, 0)
    return statements[:-1], statements[-1]
