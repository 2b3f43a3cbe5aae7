"""Recursive-descent parser for the expression and spec grammar.

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' ['-'] int)?
    base     := rational | 'zeta' '(' int ')' | variable | '(' expr ')'
    rational := int ('/' int)?

Negative exponents are allowed only on scalar subexpressions (no
variables), which provides exact inverses such as zeta(4)^-1.  Surfaces
are written ``f=<expr>; phi=<expr>`` or ``free: X,Y``; image tables are
written ``x -> <expr>; y -> <expr>; z -> <expr>`` with an optional
leading ``D:`` or ``M:`` tag.

Parse errors carry the 0-based position of the offending token.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import CycScalar
from .multipoly import MultiPoly
from .surface import SurfaceSpec


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(->)|([()+\-*/^=;:,]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if match.group(1) is not None:
            tokens.append(("int", match.group(1), match.start(1)))
        elif match.group(2) is not None:
            tokens.append(("name", match.group(2), match.start(2)))
        elif match.group(3) is not None:
            tokens.append(("arrow", "->", match.start(3)))
        else:
            tokens.append(("sym", match.group(4), match.start(4)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allowed_vars: Optional[Sequence[str]] = None):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.allowed_vars = tuple(allowed_vars) if allowed_vars is not None else None

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.index += 1
        return tok

    def expect(self, kind: str, value: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] if tok else "end of input"
            pos = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {want!r}, found {got!r}", pos)
        return self.next()

    def at_symbol(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "sym" and tok[1] == value

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])

    # -- expression grammar -------------------------------------------------

    def expr(self) -> MultiPoly:
        negate = False
        if self.at_symbol("-"):
            self.next()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.at_symbol("+") or self.at_symbol("-"):
            op = self.next()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.at_symbol("*"):
            self.next()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        if not self.at_symbol("^"):
            return base
        caret = self.next()
        negative = False
        if self.at_symbol("-"):
            self.next()
            negative = True
        k = int(self.expect("int")[1])
        if negative:
            if base.variables:
                raise ParseError("negative exponent on a non-scalar expression", caret[2])
            return MultiPoly.constant(base.as_scalar() ** (-k))
        return base ** k

    def base(self) -> MultiPoly:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, pos = tok
        if kind == "int":
            self.next()
            num = int(value)
            if self.at_symbol("/"):
                self.next()
                den = int(self.expect("int")[1])
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return MultiPoly.constant(Fraction(num, den))
            return MultiPoly.constant(num)
        if kind == "name" and value == "zeta":
            self.next()
            self.expect("sym", "(")
            n = int(self.expect("int")[1])
            self.expect("sym", ")")
            if n < 1:
                raise ParseError("zeta index must be >= 1", pos)
            return MultiPoly.constant(CycScalar.zeta(n))
        if kind == "name":
            self.next()
            if self.allowed_vars is not None and value not in self.allowed_vars:
                raise ParseError(f"unknown variable {value!r}", pos)
            return MultiPoly.variable(value)
        if kind == "sym" and value == "(":
            self.next()
            inner = self.expr()
            self.expect("sym", ")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_expression(text: str, allowed_vars: Optional[Sequence[str]] = None) -> MultiPoly:
    parser = _Parser(text, allowed_vars)
    result = parser.expr()
    parser.done()
    return result


def parse_scalar(text: str) -> CycScalar:
    p = parse_expression(text)
    if p.variables:
        raise ParseError("expected a scalar expression", 0)
    return p.as_scalar()


def parse_surface(text: str) -> SurfaceSpec:
    stripped = text.strip()
    if stripped.startswith("free"):
        parser = _Parser(stripped)
        parser.expect("name", "free")
        parser.expect("sym", ":")
        names = [parser.expect("name")[1]]
        while parser.at_symbol(","):
            parser.next()
            names.append(parser.expect("name")[1])
        parser.done()
        return SurfaceSpec.free_ring(names)
    parts = _split_semicolons(stripped)
    if len(parts) != 2:
        raise ParseError("surface spec needs 'f=<expr>; phi=<expr>'", 0)
    table = {}
    for part in parts:
        key, _, rhs = part.partition("=")
        key = key.strip()
        if key not in ("f", "phi") or not rhs.strip():
            raise ParseError("surface spec needs 'f=<expr>; phi=<expr>'", 0)
        table[key] = rhs
    if set(table) != {"f", "phi"}:
        raise ParseError("surface spec needs both f and phi", 0)
    f = parse_expression(table["f"], ("x",))
    phi = parse_expression(table["phi"], ("z",))
    return SurfaceSpec.danielewski(f, phi)


def parse_images(text: str, surface: SurfaceSpec) -> dict[str, MultiPoly]:
    """Image table ``x -> expr; ...`` covering every generator of the surface."""
    stripped = text.strip()
    for tag in ("D:", "M:", "d:", "m:"):
        if stripped.startswith(tag):
            stripped = stripped[len(tag):]
            break
    images: dict[str, MultiPoly] = {}
    for part in _split_semicolons(stripped):
        parser = _Parser(part, surface.variables)
        name_tok = parser.expect("name")
        if name_tok[1] not in surface.variables:
            raise ParseError(f"unknown generator {name_tok[1]!r}", name_tok[2])
        if name_tok[1] in images:
            raise ParseError(f"duplicate image for {name_tok[1]!r}", name_tok[2])
        parser.expect("arrow")
        rest = part[_offset_after(parser):]
        images[name_tok[1]] = parse_expression(rest, surface.variables)
    missing = set(surface.variables) - set(images)
    if missing:
        raise ParseError(f"missing images for {sorted(missing)}", len(text))
    return images


def _offset_after(parser: _Parser) -> int:
    tok = parser.peek()
    return tok[2] if tok is not None else len(parser.text)


def _split_semicolons(text: str) -> list[str]:
    parts = [piece for piece in text.split(";") if piece.strip()]
    if not parts:
        raise ParseError("empty specification", 0)
    return parts
