"""ASCII expression syntax for algebra elements.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := [scalar '*'] factor ('*' factor)*  |  '0'
    factor := 's' '(' pathid (',' pathid)* ')' | 'p' '(' vertexid ')'
            | factor '^*' | '(' expr ')'
    scalar := rational [('+'|'-') rational 'i']  |  rational 'i'

``rational`` is ``digits ['/' digits]``.  ``s(e1,e2)`` is ``s_{e1 e2}``.  The
printer emits terms in a canonical order and uses only this grammar, so
``parse(to_string(x))`` reproduces ``x``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import CompositionError, ExpressionSyntaxError, GraphError
from .scalars import QQi

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?(?:i(?![A-Za-z0-9_]))?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<star>\^\*)
  | (?P<op>[*+\-(),])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            out.append((kind if kind != "op" else val, val, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _rational(tok: str) -> Fraction:
    return Fraction(tok)


class _Parser:
    def __init__(self, graph, text):
        self.graph = graph
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, what=None):
        t = self.peek()
        if t[0] != kind:
            found = "end of input" if t[0] == "eof" else repr(t[1])
            raise ExpressionSyntaxError(f"expected {what or kind!r}, found {found}", t[2])
        return self.next()

    # grammar --------------------------------------------------------------

    def parse(self):
        x = self.expr()
        t = self.peek()
        if t[0] != "eof":
            raise ExpressionSyntaxError(f"unexpected {t[1]!r}", t[2])
        return x

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.next()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def scalar(self):
        t = self.next()
        val = t[1]
        if val.endswith("i"):
            return QQi(0, _rational(val[:-1]))
        re_part = _rational(val)
        a, b = self.peek(), self.peek(1)
        if a[0] in ("+", "-") and b[0] == "num" and b[1].endswith("i"):
            self.i += 2
            im = _rational(b[1][:-1])
            return QQi(re_part, im if a[0] == "+" else -im)
        return QQi(re_part)

    def term(self):
        from .algebra import AlgebraElement

        coeff = None
        if self.peek()[0] == "num":
            start = self.peek()
            coeff = self.scalar()
            if self.peek()[0] != "*":
                if not coeff and start[1] == "0":
                    return AlgebraElement.zero(self.graph)
                t = self.peek()
                found = "end of input" if t[0] == "eof" else repr(t[1])
                raise ExpressionSyntaxError(f"expected '*' after scalar, found {found}", t[2])
            self.next()
        acc = self.factor()
        while self.peek()[0] == "*":
            self.next()
            acc = acc * self.factor()
        return acc.scale(coeff) if coeff is not None else acc

    def factor(self):
        t = self.peek()
        if t[0] == "(":
            self.next()
            x = self.expr()
            self.expect(")", ")")
        elif t[0] == "id" and t[1] in ("s", "p") and self.peek(1)[0] == "(":
            self.next()
            self.next()
            ids = [self.expect("id", "identifier")]
            if t[1] == "s":
                while self.peek()[0] == ",":
                    self.next()
                    ids.append(self.expect("id", "identifier"))
            self.expect(")", ")")
            x = self._generator(t[1], ids)
        else:
            found = "end of input" if t[0] == "eof" else repr(t[1])
            raise ExpressionSyntaxError(f"expected a factor, found {found}", t[2])
        while self.peek()[0] == "star":
            self.next()
            x = x.adjoint()
        return x

    def _generator(self, kind, ids):
        from .algebra import AlgebraElement

        g = self.graph
        if kind == "p":
            _, name, pos = ids[0]
            if not g.has_vertex(name):
                raise GraphError(f"unknown vertex {name!r} at offset {pos}")
            return AlgebraElement.p(g, name)
        if len(ids) == 1 and g.has_vertex(ids[0][1]):
            return AlgebraElement.p(g, ids[0][1])
        for _, name, pos in ids:
            if not g.has_edge(name):
                raise GraphError(f"unknown edge {name!r} at offset {pos}")
        try:
            return AlgebraElement.s(g, *[name for _, name, _ in ids])
        except CompositionError as exc:
            raise CompositionError(f"{exc} at offset {ids[0][2]}") from None


def parse(graph, text: str):
    """Parse ``text`` into an :class:`~mwalgebra.algebra.AlgebraElement` over ``graph``."""
    return _Parser(graph, text).parse()


def parse_scalar(text: str) -> QQi:
    text = text.strip()
    sign = 1
    if text[:1] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    p = _Parser(None, text)
    if p.peek()[0] != "num":
        raise ExpressionSyntaxError("expected a number", p.peek()[2])
    val = p.scalar()
    if p.peek()[0] != "eof":
        raise ExpressionSyntaxError("trailing input in scalar", p.peek()[2])
    return val if sign > 0 else -val


# printing -----------------------------------------------------------------


def format_scalar(c: QQi) -> str:
    c = QQi.coerce(c)
    if not c.im:
        return str(c.re)
    im = abs(c.im)
    sign = "+" if c.im > 0 else "-"
    return f"{c.re}{sign}{im}i"


def _monomial_text(mu, nu) -> str:
    if not mu.edges and not nu.edges:
        return f"p({mu.range})"
    if not nu.edges:
        return f"s({','.join(mu.edges)})"
    if not mu.edges:
        return f"s({','.join(nu.edges)})^*"
    return f"s({','.join(mu.edges)})*s({','.join(nu.edges)})^*"


def to_string(x) -> str:
    """Canonical text: terms sorted by (degree, |nu|, paths)."""
    from .algebra import _sort_key

    items = sorted(x.terms.items(), key=lambda kv: _sort_key(kv[0]))
    if not items:
        return "0"
    parts = []
    for k, ((mu, nu), c) in enumerate(items):
        neg = c.re < 0 or (c.re == 0 and c.im < 0)
        m = -c if neg else c
        coeff = "" if m == 1 else f"{format_scalar(m)}*"
        body = coeff + _monomial_text(mu, nu)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
