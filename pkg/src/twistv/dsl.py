"""Parser for the element expression language and the literal sub-languages.

Grammar (whitespace-insensitive):

    expr    := prod
    prod    := factor ("*" factor)*
    factor  := base ("^" INT)?
    base    := "(" expr ")" | "[" expr "," expr "]" | call | "id"
    call    := "iota"  "(" WORD ")"
             | "iota1" "(" COLOR "," WORD ")"
             | "defer" "(" BRICK "," WORD ")"
             | "quad"  "(" TREE "," PERM "," "[" WORD ("," WORD)* "]" "," TREE ")"
             | "conj"  "(" expr "," expr ")"
    TREE    := "." | "(" COLOR TREE TREE ")"
    PERM    := "[" INT ("," INT)* "]"
    BRICK   := "{" (COLOR ":" BITS ("," COLOR ":" BITS)*)? "}"
    POINT   := "{" (COLOR ":" BITS? "(" BITS ")" ("," ...)*)? "}"
    WORD    := "1" | (NAME ("^" INT)?)+
    COLOR   := NAME | INT

``[a, b]`` is the commutator a b a^-1 b^-1 and ``conj(a, b)`` is b a b^-1.
Parsing is oracle-free; colors and generator names are resolved against an
oracle at evaluation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .element import (CantorPoint, Quadruple, commutator, conjugate, identity_element,
                      inverse, iota, iota1, multiply, power)
from .forest import Brick, Forest, Permutation, Tree, LEAF
from .label_group import LabelElement, LabelGroupError, LabelGroupOracle
from .subgroups import deferment


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class ExprEvalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tokens

_PUNCT = "()[]{},:*^."


@dataclass(frozen=True)
class _Tok:
    kind: str       # name | int | punct | end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c in _PUNCT:
            toks.append(_Tok("punct", c, line, col))
            col += 1
            i += 1
            continue
        if c.isdigit() or (c == "-" and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", line, col)
    toks.append(_Tok("end", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# AST

WordAst = tuple[tuple[str, int], ...]
TreeAst = "str | tuple"          # "." or (color_token, left, right)
BrickAst = tuple[tuple[str, str], ...]
PointAst = tuple[tuple[str, tuple[str, str]], ...]


@dataclass(frozen=True)
class EId:
    pass


@dataclass(frozen=True)
class EIota:
    word: WordAst


@dataclass(frozen=True)
class EIota1:
    color: str
    word: WordAst


@dataclass(frozen=True)
class EDefer:
    brick: BrickAst
    word: WordAst


@dataclass(frozen=True)
class EQuad:
    minus: object
    perm: tuple[int, ...]
    words: tuple[WordAst, ...]
    plus: object


@dataclass(frozen=True)
class EConj:
    a: object
    b: object


@dataclass(frozen=True)
class EComm:
    a: object
    b: object


@dataclass(frozen=True)
class EProd:
    items: tuple


@dataclass(frozen=True)
class EPow:
    base: object
    exp: int


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.pos = 0

    # -- token primitives

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, expected: str) -> None:
        t = self.peek()
        got = repr(t.text) if t.kind != "end" else "end of input"
        raise ExprSyntaxError(f"expected {expected}, got {got}", t.line, t.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.kind == "punct" and t.text == text:
            return self.next()
        self.fail(f"'{text}'")

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == text

    # -- expression grammar

    def parse_expr(self) -> object:
        items = [self.parse_factor()]
        while self.at("*"):
            self.next()
            items.append(self.parse_factor())
        return items[0] if len(items) == 1 else EProd(tuple(items))

    def parse_factor(self) -> object:
        base = self.parse_base()
        if self.at("^"):
            self.next()
            t = self.peek()
            if t.kind != "int":
                self.fail("an integer exponent")
            self.next()
            return EPow(base, int(t.text))
        return base

    def parse_base(self) -> object:
        t = self.peek()
        if self.at("("):
            self.next()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if self.at("["):
            self.next()
            a = self.parse_expr()
            self.expect(",")
            b = self.parse_expr()
            self.expect("]")
            return EComm(a, b)
        if t.kind == "name":
            if t.text == "id":
                self.next()
                return EId()
            if t.text == "iota":
                self.next()
                self.expect("(")
                w = self.parse_word()
                self.expect(")")
                return EIota(w)
            if t.text == "iota1":
                self.next()
                self.expect("(")
                c = self.parse_color_token()
                self.expect(",")
                w = self.parse_word()
                self.expect(")")
                return EIota1(c, w)
            if t.text == "defer":
                self.next()
                self.expect("(")
                b = self.parse_brick()
                self.expect(",")
                w = self.parse_word()
                self.expect(")")
                return EDefer(b, w)
            if t.text == "quad":
                self.next()
                self.expect("(")
                minus = self.parse_tree()
                self.expect(",")
                perm = self.parse_perm()
                self.expect(",")
                self.expect("[")
                words = [self.parse_word()]
                while self.at(","):
                    self.next()
                    words.append(self.parse_word())
                self.expect("]")
                self.expect(",")
                plus = self.parse_tree()
                self.expect(")")
                return EQuad(minus, perm, tuple(words), plus)
            if t.text == "conj":
                self.next()
                self.expect("(")
                a = self.parse_expr()
                self.expect(",")
                b = self.parse_expr()
                self.expect(")")
                return EConj(a, b)
        self.fail("an expression (id, iota, iota1, defer, quad, conj, '(', or '[')")

    # -- literal sub-languages

    def parse_color_token(self) -> str:
        t = self.peek()
        if t.kind in ("name", "int"):
            self.next()
            return t.text
        self.fail("a color (name or integer)")

    def parse_word(self) -> WordAst:
        letters: list[tuple[str, int]] = []
        t = self.peek()
        if t.kind == "int" and t.text == "1":
            self.next()
            return ()
        if t.kind != "name":
            self.fail("a label word (generators or 1)")
        while self.peek().kind == "name":
            name = self.next().text
            exp = 1
            if self.at("^"):
                self.next()
                e = self.peek()
                if e.kind != "int":
                    self.fail("an integer exponent")
                self.next()
                exp = int(e.text)
            if exp >= 0:
                letters.extend(((name, 1),) * exp)
            else:
                letters.extend(((name, -1),) * (-exp))
        return tuple(letters)

    def parse_tree(self) -> object:
        if self.at("."):
            self.next()
            return "."
        if self.at("("):
            self.next()
            color = self.parse_color_token()
            left = self.parse_tree()
            right = self.parse_tree()
            self.expect(")")
            return (color, left, right)
        self.fail("a tree ('.' or '(color tree tree)')")

    def parse_perm(self) -> tuple[int, ...]:
        self.expect("[")
        out = [self.parse_int()]
        while self.at(","):
            self.next()
            out.append(self.parse_int())
        self.expect("]")
        return tuple(out)

    def parse_int(self) -> int:
        t = self.peek()
        if t.kind != "int":
            self.fail("an integer")
        self.next()
        return int(t.text)

    def parse_bits(self) -> str:
        t = self.peek()
        if t.kind != "int" or any(c not in "01" for c in t.text):
            self.fail("a 0/1 word")
        self.next()
        return t.text

    def parse_brick(self) -> BrickAst:
        self.expect("{")
        entries: list[tuple[str, str]] = []
        if not self.at("}"):
            while True:
                c = self.parse_color_token()
                self.expect(":")
                entries.append((c, self.parse_bits()))
                if self.at(","):
                    self.next()
                    continue
                break
        self.expect("}")
        return tuple(entries)

    def parse_point(self) -> PointAst:
        self.expect("{")
        entries: list[tuple[str, tuple[str, str]]] = []
        if not self.at("}"):
            while True:
                c = self.parse_color_token()
                self.expect(":")
                pre = ""
                if self.peek().kind == "int":
                    pre = self.parse_bits()
                self.expect("(")
                per = self.parse_bits()
                self.expect(")")
                entries.append((c, (pre, per)))
                if self.at(","):
                    self.next()
                    continue
                break
        self.expect("}")
        return tuple(entries)

    def finish(self) -> None:
        t = self.peek()
        if t.kind != "end":
            raise ExprSyntaxError(f"trailing input {t.text!r}", t.line, t.col)


# ---------------------------------------------------------------------------
# entry points


def parse_expression(text: str) -> object:
    """Parse an element expression to an AST (no oracle needed)."""
    p = _Parser(text)
    ast = p.parse_expr()
    p.finish()
    return ast


def parse_brick_literal(text: str, oracle: LabelGroupOracle) -> Brick:
    p = _Parser(text)
    ast = p.parse_brick()
    p.finish()
    return _build_brick(ast, oracle)


def parse_point_literal(text: str, oracle: LabelGroupOracle) -> CantorPoint:
    p = _Parser(text)
    ast = p.parse_point()
    p.finish()
    entries = {}
    for tok, coord in ast:
        s = oracle.resolve_color(tok)
        if s in entries:
            raise ExprEvalError(f"duplicate color {tok!r} in point")
        entries[s] = coord
    return CantorPoint.of(entries)


def parse_word_literal(text: str) -> LabelElement:
    p = _Parser(text)
    w = p.parse_word()
    p.finish()
    return LabelElement(w)


# ---------------------------------------------------------------------------
# evaluation


def _build_brick(ast: BrickAst, oracle: LabelGroupOracle) -> Brick:
    entries = {}
    for tok, bits in ast:
        s = oracle.resolve_color(tok)
        if s in entries:
            raise ExprEvalError(f"duplicate color {tok!r} in brick")
        entries[s] = bits
    return Brick.of(entries)


def _build_tree(ast: object, oracle: LabelGroupOracle) -> Tree:
    if ast == ".":
        return LEAF
    tok, left, right = ast
    s = oracle.resolve_color(tok)
    return Tree(s, _build_tree(left, oracle), _build_tree(right, oracle))


def evaluate(ast: object, oracle: LabelGroupOracle) -> Quadruple:
    """Evaluate a parsed expression against an oracle."""
    try:
        return _eval(ast, oracle)
    except (LabelGroupError, ValueError) as exc:
        if isinstance(exc, ExprEvalError):
            raise
        raise ExprEvalError(str(exc)) from exc


def _eval(ast: object, oracle: LabelGroupOracle) -> Quadruple:
    if isinstance(ast, EId):
        return identity_element(oracle)
    if isinstance(ast, EIota):
        return iota(oracle, LabelElement(ast.word))
    if isinstance(ast, EIota1):
        return iota1(oracle, oracle.resolve_color(ast.color), LabelElement(ast.word))
    if isinstance(ast, EDefer):
        return deferment(oracle, _build_brick(ast.brick, oracle), LabelElement(ast.word))
    if isinstance(ast, EQuad):
        minus = _build_tree(ast.minus, oracle)
        plus = _build_tree(ast.plus, oracle)
        labels = tuple(LabelElement(w) for w in ast.words)
        return Quadruple(oracle, Forest((minus,)), Permutation(ast.perm), labels,
                         Forest((plus,)))
    if isinstance(ast, EConj):
        return conjugate(_eval(ast.a, oracle), _eval(ast.b, oracle))
    if isinstance(ast, EComm):
        return commutator(_eval(ast.a, oracle), _eval(ast.b, oracle))
    if isinstance(ast, EProd):
        out = _eval(ast.items[0], oracle)
        for item in ast.items[1:]:
            out = multiply(out, _eval(item, oracle))
        return out
    if isinstance(ast, EPow):
        return power(_eval(ast.base, oracle), ast.exp)
    raise ExprEvalError(f"unknown AST node {ast!r}")


def parse_and_evaluate(text: str, oracle: LabelGroupOracle) -> Quadruple:
    return evaluate(parse_expression(text), oracle)
