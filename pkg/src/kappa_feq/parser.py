"""Text formats for rational functions, additive maps and structured forms.

Grammar::

    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | factor
    factor  := primary ( '^' ['-'] INT | '(' '{' INT (',' INT)* '}' ')' | '(' expr ')' )*
    primary := INT | 't' | 'x' | 'D' | 'id' | '(' expr ')'

``^`` binds tighter than ``*`` and ``/``, which bind tighter than ``+`` and
``-``.  ``m({1,2})`` attaches the map ``m`` to the slot block {1, 2};
``m(expr)`` applies ``m`` to a value.  ``x`` is only meaningful when the text
is compiled as a point function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .additive import D as _D
from .additive import ID as _ID
from .additive import AdditiveMap, apply
from .exact import RatFunc, T, render_ratfunc
from .forms import BlockPattern, SymForm

__all__ = [
    "ParseError",
    "parse_expr",
    "parse_ratfunc",
    "parse_map",
    "parse_form",
    "parse_point_function",
    "render",
    "render_map",
    "render_form",
    "render_ratfunc",
]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: Optional[int] = None):
        self.message, self.text, self.pos = message, text, pos
        if pos is not None and text:
            caret = " " * pos + "^"
            message = f"{message} at position {pos}\n  {text}\n  {caret}"
        super().__init__(message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int" | "name" | "op" | "end"
    value: str
    pos: int


def _tokenize(text: str):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^(){},":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            out.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Partial:
    """Sum of block products with explicit slot labels (arity fixed later)."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms  # list of (coeff, tuple of (slots tuple, map))


_NAMES = {"t", "x", "D", "id"}


class _Parser:
    def __init__(self, text: str, x: Optional[RatFunc] = None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.x = x

    # -- token helpers -----------------------------------------------------------
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        if not self.accept(op):
            self.fail(f"expected {op!r}")

    def fail(self, msg: str, pos: int = None):
        raise ParseError(msg, self.text, self.tok.pos if pos is None else pos)

    # -- grammar -------------------------------------------------------------------
    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.value!r}")
        return value

    def expr(self):
        pos = self.tok.pos
        if self.accept("-"):
            value = _neg(self.term(), self, pos)
        else:
            self.accept("+")
            value = self.term()
        while self.tok.kind == "op" and self.tok.value in "+-":
            op, pos = self.next().value, self.tok.pos
            rhs = self.term()
            value = _add(value, rhs if op == "+" else _neg(rhs, self, pos), self, pos)
        return value

    def term(self):
        value = self.unary()
        while self.tok.kind == "op" and self.tok.value in "*/":
            op, pos = self.next().value, self.tok.pos
            rhs = self.unary()
            value = _mul(value, rhs, self, pos) if op == "*" else _div(value, rhs, self, pos)
        return value

    def unary(self):
        pos = self.tok.pos
        if self.accept("-"):
            return _neg(self.unary(), self, pos)
        return self.factor()

    def factor(self):
        value = self.primary()
        while True:
            pos = self.tok.pos
            if self.accept("^"):
                sign = -1 if self.accept("-") else 1
                if self.tok.kind != "int":
                    self.fail("expected an integer exponent")
                value = _pow(value, sign * int(self.next().value), self, pos)
            elif self.tok.kind == "op" and self.tok.value == "(" and isinstance(value, AdditiveMap):
                self.next()
                if self.accept("{"):
                    slots = self.slot_list()
                    self.expect(")")
                    value = _Partial([(Fraction(1), ((slots, value),))])
                else:
                    arg = self.expr()
                    self.expect(")")
                    arg = _as_ratfunc(arg, self, pos)
                    value = apply(value, arg)
            else:
                return value

    def slot_list(self):
        slots = []
        while True:
            if self.tok.kind != "int":
                self.fail("expected a slot index")
            tok = self.next()
            s = int(tok.value)
            if s < 1:
                self.fail("slot indices start at 1", tok.pos)
            if s in slots:
                self.fail(f"slot {s} repeated in block", tok.pos)
            slots.append(s)
            if self.accept("}"):
                return tuple(slots)
            self.expect(",")

    def primary(self):
        tok = self.tok
        if tok.kind == "int":
            self.next()
            return Fraction(int(tok.value))
        if tok.kind == "name":
            self.next()
            if tok.value == "t":
                return T
            if tok.value == "D":
                return _D
            if tok.value == "id":
                return _ID
            if tok.value == "x":
                if self.x is None:
                    self.fail("'x' is only allowed in point-function expressions", tok.pos)
                return self.x
            self.fail(f"unknown name {tok.value!r}", tok.pos)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok.value!r}")


# -- value algebra ----------------------------------------------------------------

def _kind(v) -> str:
    if isinstance(v, Fraction):
        return "scalar"
    if isinstance(v, RatFunc):
        return "function"
    if isinstance(v, AdditiveMap):
        return "map"
    if isinstance(v, _Partial):
        return "form"
    return type(v).__name__


def _as_ratfunc(v, p: _Parser, pos):
    if isinstance(v, Fraction):
        return RatFunc.constant(v)
    if isinstance(v, RatFunc):
        return v
    p.fail(f"expected a rational function, got a {_kind(v)}", pos)


def _neg(v, p, pos):
    if isinstance(v, _Partial):
        return _Partial([(-c, b) for c, b in v.terms])
    return -v


def _add(a, b, p, pos):
    ka, kb = _kind(a), _kind(b)
    if ka == kb == "form":
        return _Partial(a.terms + b.terms)
    if ka == kb:
        return a + b
    if {ka, kb} <= {"scalar", "function"}:
        return _as_ratfunc(a, p, pos) + _as_ratfunc(b, p, pos)
    p.fail(f"cannot add a {ka} and a {kb}", pos)


def _mul(a, b, p, pos):
    ka, kb = _kind(a), _kind(b)
    if ka == "scalar" and kb == "form":
        return _Partial([(a * c, bl) for c, bl in b.terms])
    if kb == "scalar" and ka == "form":
        return _Partial([(b * c, bl) for c, bl in a.terms])
    if "scalar" in (ka, kb) and {ka, kb} <= {"scalar", "function", "map"}:
        return a * b
    if ka == kb == "function":
        return a * b
    if ka == kb == "form":
        terms = []
        for c1, b1 in a.terms:
            used = {s for slots, _ in b1 for s in slots}
            for c2, b2 in b.terms:
                clash = sorted(used & {s for slots, _ in b2 for s in slots})
                if clash:
                    p.fail(f"slot {clash[0]} used by more than one block", pos)
                terms.append((c1 * c2, b1 + b2))
        return _Partial(terms)
    p.fail(f"cannot multiply a {ka} by a {kb}", pos)


def _div(a, b, p, pos):
    ka, kb = _kind(a), _kind(b)
    try:
        if kb == "scalar":
            if ka == "form":
                return _Partial([(c / b, bl) for c, bl in a.terms])
            if ka in ("scalar", "function"):
                return a / b
            if ka == "map":
                return a * (1 / b)
        if kb == "function" and ka in ("scalar", "function"):
            return _as_ratfunc(a, p, pos) / b
    except ZeroDivisionError:
        p.fail("division by zero", pos)
    p.fail(f"cannot divide a {ka} by a {kb}", pos)


def _pow(a, e: int, p, pos):
    ka = _kind(a)
    try:
        if ka == "scalar":
            return a ** e
        if ka == "function":
            return a ** e
    except ZeroDivisionError:
        p.fail("zero raised to a negative power", pos)
    if ka == "map":
        if e < 0:
            p.fail("maps only take non-negative powers", pos)
        return a ** e
    p.fail(f"cannot raise a {ka} to a power", pos)


def _finish_form(partial: _Partial, p: _Parser, arity: int = None) -> SymForm:
    n = max((s for _, bl in partial.terms for slots, _ in bl for s in slots), default=0)
    if arity is not None:
        if n > arity:
            raise ParseError(f"slot {n} exceeds arity {arity}", p.text)
        n = arity
    terms = []
    for coeff, blocks in partial.terms:
        used = sorted(s for slots, _ in blocks for s in slots)
        missing = sorted(set(range(1, n + 1)) - set(used))
        if missing:
            shown = "*".join(f"{render_map(m, atomic=True)}({{{','.join(map(str, sl))}}})" for sl, m in blocks)
            raise ParseError(
                f"arity mismatch: term {shown} leaves slot(s) {missing} of 1..{n} empty", p.text
            )
        terms.append((coeff, BlockPattern.build(blocks)))
    return SymForm(n, terms)


# -- public entry points --------------------------------------------------------------

def parse_expr(text: str):
    """Parse into a RatFunc, AdditiveMap or SymForm (scalars become constant RatFuncs)."""
    p = _Parser(text)
    value = p.parse()
    if isinstance(value, Fraction):
        return RatFunc.constant(value)
    if isinstance(value, _Partial):
        return _finish_form(value, p)
    return value


def parse_ratfunc(text: str) -> RatFunc:
    p = _Parser(text)
    value = p.parse()
    if isinstance(value, (Fraction, RatFunc)):
        return _as_ratfunc(value, p, 0)
    raise ParseError(f"expected a rational function, got a {_kind(value)}", text, 0)


def parse_map(text: str) -> AdditiveMap:
    p = _Parser(text)
    value = p.parse()
    if isinstance(value, Fraction) and value == 0:
        return AdditiveMap()
    if isinstance(value, AdditiveMap):
        return value
    raise ParseError(f"expected an additive map, got a {_kind(value)}", text, 0)


def parse_form(text: str, arity: int = None) -> SymForm:
    p = _Parser(text)
    value = p.parse()
    if isinstance(value, Fraction) and value == 0 and arity:
        return SymForm(arity)
    if not isinstance(value, _Partial):
        raise ParseError(f"expected a form, got a {_kind(value)}", text, 0)
    return _finish_form(value, p, arity)


def parse_point_function(text: str) -> Callable[[RatFunc], RatFunc]:
    """Compile an expression in ``x`` (and ``t``) into ``x -> value``."""
    _Parser(text, x=T).parse()  # syntax check up front

    def f(x):
        p = _Parser(text, x=x)
        return _as_ratfunc(p.parse(), p, 0)

    return f


# -- rendering -----------------------------------------------------------------------

def _map_term(k: int) -> str:
    return "id" if k == 0 else "D" if k == 1 else f"D^{k}"


def render_map(a: AdditiveMap, atomic: bool = False) -> str:
    """``D - 1/2*D^2``; with ``atomic`` a compound map is parenthesized."""
    if a.is_zero():
        return "0"
    parts = []
    for k, c in a.support:
        mag = abs(c)
        body = _map_term(k) if mag == 1 else f"{mag}*{_map_term(k)}"
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    if atomic and (len(a.support) > 1 or a.support[0][1] != 1):
        out = f"({out})"
    return out


def render_form(F: SymForm) -> str:
    """``9*id({1})*id({2})*D({3}) - 9/2*id({1})*D({2,3}) + D({1,2,3})``."""
    if F.is_zero():
        return "0"
    out = ""
    for i, (c, pattern) in enumerate(F.terms):
        body = "*".join(
            f"{render_map(m, atomic=True)}({{{','.join(map(str, slots))}}})" for slots, m in pattern.blocks
        )
        mag = abs(c)
        piece = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            out = ("-" if c < 0 else "") + piece
        else:
            out += (" - " if c < 0 else " + ") + piece
    return out


def render(value) -> str:
    if isinstance(value, RatFunc):
        return render_ratfunc(value)
    if isinstance(value, AdditiveMap):
        return render_map(value)
    if isinstance(value, SymForm):
        return render_form(value)
    return str(value)
