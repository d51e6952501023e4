"""Text form of algebra elements.

Grammar (whitespace is allowed between tokens, not inside a scalar)::

    elem  := term (('+' | '-') term)*      |  '0'
    term  := [coef '*'] gen
    coef  := scalar | '(' scalar ')'
    gen   := ('L' | 'I' | 'G' | 'H') '[' integer ']'

A leading sign before the first term is tolerated.  The canonical printed
form writes every coefficient explicitly, e.g. ``-1*L[5]`` or
``1*L[3] - 1/2*I[-1] + (3/5+4/5i)*G[0]``; the zero element prints as ``0``.
"""

from __future__ import annotations

import re

from .algebra import FAMILIES, Element, GeneratorId
from .scalar import ONE, Scalar, format_scalar, match_scalar

__all__ = ["ElementSyntaxError", "parse_element", "format_element", "format_coef"]


class ElementSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        pointer = " " * pos + "^"
        super().__init__(f"syntax error at position {pos}: expected {expected}\n  {text}\n  {pointer}")


_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ElementSyntaxError(self.text, self.pos, repr(ch))
        self.pos += 1

    def error(self, expected: str):
        return ElementSyntaxError(self.text, self.pos, expected)

    def scalar(self) -> Scalar:
        self.ws()
        hit = match_scalar(self.text, self.pos)
        if hit is None:
            raise self.error("scalar")
        value, self.pos = hit
        return value

    def generator(self) -> GeneratorId:
        ch = self.peek()
        if not ch.isalpha():
            raise self.error("generator L[..], I[..], G[..] or H[..]")
        if ch not in FAMILIES:
            raise ElementSyntaxError(self.text, self.pos, f"family letter L, I, G or H (unknown family {ch!r})")
        self.pos += 1
        self.expect("[")
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("integer degree")
        self.pos = m.end()
        self.expect("]")
        return GeneratorId(ch, int(m.group()))

    def term(self) -> tuple[Scalar, GeneratorId]:
        ch = self.peek()
        if ch in FAMILIES or (ch.isalpha() and ch != "i"):
            return ONE, self.generator()
        if ch == "(":
            self.pos += 1
            coef = self.scalar()
            self.expect(")")
        else:
            coef = self.scalar()
        self.expect("*")
        return coef, self.generator()

    def element(self) -> Element:
        terms: dict[GeneratorId, Scalar] = {}

        def add(c: Scalar, g: GeneratorId) -> None:
            terms[g] = terms.get(g, Scalar()) + c

        first_sign = 1
        if self.peek() == "0":
            save = self.pos
            self.pos += 1
            if self.peek() == "":
                return Element()
            self.pos = save
        if self.peek() in "+-" and self.peek() != "":
            nxt = self.text[self.pos + 1:self.pos + 2]
            # a sign glued to a digit belongs to the scalar
            if not nxt.isdigit():
                first_sign = -1 if self.peek() == "-" else 1
                self.pos += 1
        c, g = self.term()
        add(c if first_sign == 1 else -c, g)
        while True:
            op = self.peek()
            if op == "":
                break
            if op not in "+-":
                raise self.error("'+', '-' or end of input")
            self.pos += 1
            c, g = self.term()
            add(c if op == "+" else -c, g)
        return Element(terms)


def parse_element(text: str) -> Element:
    """Parse an element expression; raises :class:`ElementSyntaxError`."""
    if not text.strip():
        raise ElementSyntaxError(text, 0, "element")
    return _Parser(text).element()


def format_coef(c: Scalar) -> str:
    s = format_scalar(c)
    return f"({s})" if c.im else s


def format_element(e: Element) -> str:
    items = e.items()
    if not items:
        return "0"
    parts = []
    for k, (g, c) in enumerate(items):
        neg = c.is_real() and c.re < 0
        if k == 0:
            parts.append(f"{format_coef(c)}*{g}")
        elif neg:
            parts.append(f" - {format_coef(-c)}*{g}")
        else:
            parts.append(f" + {format_coef(c)}*{g}")
    return "".join(parts)
