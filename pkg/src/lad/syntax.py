"""Concrete syntax for formulas.

Extensional connectives are written ~  /\\  \\/  =>, intensional ones
!  &  |  ->, falsum is _|_ and the defined symbols are <> (diamond) and
the n-ary infix (+).  Precedence, tightest first:

    prefixes (~ ! <>)   then   /\\ &   then   \\/ | (+)   then   => ->

Binary connectives at the same level associate to the right, so
p -> q -> r reads p -> (q -> r) and p (+) q (+) r is a single three-way
(+).  Macros are expanded while parsing; the printer can re-sugar them.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    FALSUM,
    Atom,
    ExtAnd,
    ExtImp,
    ExtNeg,
    ExtOr,
    Falsum,
    Formula,
    IntAnd,
    IntImp,
    IntNeg,
    IntOr,
    LayerError,
    diamond,
    is_l_formula,
    match_diamond,
    match_plus,
    plus_disj,
)


class ParseError(Exception):
    """Malformed formula text."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        at = f" at position {position}"
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(message + at + hint)
        self.position = position
        self.expected = expected


@dataclass(frozen=True)
class _Token:
    kind: str  # "op" or "ident" or "eof"
    text: str
    pos: int


# Longest tokens first so _|_ wins over |, (+) over ( and so on.
_FIXED = ("_|_", "(+)", "/\\", "\\/", "->", "=>", "<>", "~", "!", "&", "|", "(", ")")


def tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for tok in _FIXED:
            if text.startswith(tok, i):
                out.append(_Token("op", tok, i))
                i += len(tok)
                break
        else:
            if ch.isalpha():
                j = i + 1
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                out.append(_Token("ident", text[i:j], i))
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
    out.append(_Token("eof", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.next()
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, (text,))

    def _ext(self, cls, op: _Token, *operands: Formula) -> Formula:
        for f in operands:
            if not is_l_formula(f):
                raise LayerError(
                    f"operand of extensional {op.text!r} is not an L-formula",
                    position=op.pos,
                    offending=f,
                )
        return cls(*operands)

    def parse(self) -> Formula:
        phi = self.imp()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)
        return phi

    def imp(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("->", "=>"):
            self.next()
            right = self.imp()  # right associative
            if tok.text == "->":
                return IntImp(left, right)
            return self._ext(ExtImp, tok, left, right)
        return left

    def disj(self) -> Formula:
        items = [self.conj()]
        ops: list[_Token] = []
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ("\\/", "|", "(+)"):
                self.next()
                ops.append(tok)
                items.append(self.conj())
            else:
                break
        # Fold right to left; consecutive (+) operands collapse into one
        # n-ary expansion, because the expansion of a nested (+) is not
        # an L-formula and could never feed an outer (+).
        result = items[-1]
        run: list[Formula] | None = None
        run_op: _Token | None = None
        for k in range(len(ops) - 1, -1, -1):
            op, item = ops[k], items[k]
            if op.text == "(+)":
                if run is None:
                    run = [item, result]
                    run_op = op
                else:
                    run.insert(0, item)
            else:
                if run is not None:
                    result = self._plus(run, run_op)
                    run = None
                if op.text == "\\/":
                    result = self._ext(ExtOr, op, item, result)
                else:
                    result = IntOr(item, result)
        if run is not None:
            result = self._plus(run, run_op)
        return result

    def _plus(self, operands: list[Formula], op: _Token) -> Formula:
        for f in operands:
            if not is_l_formula(f):
                raise LayerError(
                    "operand of (+) is not an L-formula",
                    position=op.pos,
                    offending=f,
                )
        return plus_disj(operands)

    def conj(self) -> Formula:
        left = self.prefix()
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("/\\", "&"):
            self.next()
            right = self.conj()  # right associative
            if tok.text == "&":
                return IntAnd(left, right)
            return self._ext(ExtAnd, tok, left, right)
        return left

    def prefix(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("~", "!", "<>"):
            self.next()
            operand = self.prefix()
            if tok.text == "~":
                return self._ext(ExtNeg, tok, operand)
            if tok.text == "!":
                return IntNeg(operand)
            return diamond(operand)
        return self.primary()

    def primary(self) -> Formula:
        tok = self.next()
        if tok.kind == "ident":
            return Atom(tok.text)
        if tok.kind == "op" and tok.text == "_|_":
            return FALSUM
        if tok.kind == "op" and tok.text == "(":
            phi = self.imp()
            self.expect(")")
            return phi
        raise ParseError(
            f"unexpected {tok.text or 'end of input'!r}",
            tok.pos,
            ("atom", "_|_", "(", "~", "!", "<>"),
        )


def parse(text: str) -> Formula:
    """Parse concrete syntax into a formula, expanding <> and (+)."""
    return _Parser(text).parse()


_PREC_IMP, _PREC_DISJ, _PREC_CONJ, _PREC_PREFIX = 1, 2, 3, 4

_BIN = {
    ExtImp: ("=>", _PREC_IMP),
    IntImp: ("->", _PREC_IMP),
    ExtOr: ("\\/", _PREC_DISJ),
    IntOr: ("|", _PREC_DISJ),
    ExtAnd: ("/\\", _PREC_CONJ),
    IntAnd: ("&", _PREC_CONJ),
}


def format_formula(phi: Formula, mode: str = "macro") -> str:
    """Render a formula; parse(format_formula(phi)) returns phi.

    In "macro" mode diamond patterns print as <> and expanded n-ary (+)
    patterns (n >= 2) print infix.  "full" mode prints the raw tree.
    """
    if mode not in ("macro", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    return _fmt(phi, 0, mode == "macro")


def _fmt(phi: Formula, min_prec: int, macro: bool) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Falsum):
        return "_|_"
    if macro:
        inner = match_diamond(phi)
        if inner is not None:
            return "<>" + _fmt(inner, _PREC_PREFIX, macro)
        ops = match_plus(phi)
        if ops is not None:
            body = " (+) ".join(_fmt(op, _PREC_DISJ + 1, macro) for op in ops)
            return f"({body})" if _PREC_DISJ < min_prec else body
    if isinstance(phi, ExtNeg):
        return "~" + _fmt(phi.operand, _PREC_PREFIX, macro)
    if isinstance(phi, IntNeg):
        return "!" + _fmt(phi.operand, _PREC_PREFIX, macro)
    sym, prec = _BIN[type(phi)]
    body = f"{_fmt(phi.left, prec + 1, macro)} {sym} {_fmt(phi.right, prec, macro)}"
    return f"({body})" if prec < min_prec else body
