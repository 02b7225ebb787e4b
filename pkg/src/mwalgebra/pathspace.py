"""Cylinder functions on the infinite path space.

A :class:`CylinderFn` is a finite linear combination of indicators
``chi_{Z(alpha)}`` where ``Z(alpha)`` is the set of infinite paths that begin
with the finite path ``alpha``.  These are exactly the locally constant
compactly supported functions, i.e. a dense *-subalgebra of ``C_0(E^inf)``.

Keys may have mixed lengths and may overlap; the represented *function* is what
counts, so equality is decided after refining both sides to a common depth.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import GraphMismatchError
from .graph import Graph, Path
from .scalars import ONE, QQi


class CylinderFn:
    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms=None):
        self.graph = graph
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for alpha, c in items:
                alpha = graph.as_path(alpha)
                c = QQi.coerce(c)
                prev = clean.get(alpha)
                clean[alpha] = c if prev is None else prev + c
            clean = {k: v for k, v in clean.items() if v}
        self.terms = clean

    @classmethod
    def _raw(cls, graph, terms):
        obj = cls.__new__(cls)
        obj.graph = graph
        obj.terms = terms
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, graph: Graph) -> "CylinderFn":
        return cls._raw(graph, {})

    @classmethod
    def indicator(cls, graph: Graph, alpha, coeff=ONE) -> "CylinderFn":
        """``coeff * chi_{Z(alpha)}``."""
        return cls(graph, {graph.as_path(alpha): coeff})

    @classmethod
    def unit(cls, graph: Graph, v) -> "CylinderFn":
        """Indicator of ``E^inf_v``, the unit of the fiber over ``v``."""
        return cls._raw(graph, {graph.vertex(v): ONE})

    # inspection -----------------------------------------------------------

    @property
    def depth(self) -> int:
        return max((k.length for k in self.terms), default=0)

    def is_zero(self) -> bool:
        return not any(self.refine(self.depth).terms.values())

    def support_vertices(self) -> set:
        return {k.range for k in self.terms}

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    # refinement -----------------------------------------------------------

    def refine(self, n: int) -> "CylinderFn":
        """Rewrite every key as the sum of its length-``n`` extensions."""
        if n < self.depth:
            raise ValueError(f"refinement depth {n} is smaller than key length {self.depth}")
        g = self.graph
        out = defaultdict(QQi)
        for alpha, c in self.terms.items():
            for beta in g.extensions(alpha, n - alpha.length):
                out[beta] = out[beta] + c
        return CylinderFn._raw(g, {k: v for k, v in out.items() if v})

    def canonical(self) -> "CylinderFn":
        """Minimal mixed-depth form: refine, then merge complete sibling sets."""
        g = self.graph
        cur = dict(self.refine(self.depth).terms)
        for level in range(self.depth, 0, -1):
            groups = defaultdict(dict)
            for alpha, c in cur.items():
                if alpha.length == level:
                    parent = Path(alpha.edges[:-1], alpha.range, g.r(alpha.edges[-1]))
                    groups[parent][alpha.edges[-1]] = c
            for parent, kids in groups.items():
                inc = g.incoming(parent.source)
                vals = set(kids.values())
                if len(kids) == len(inc) and len(vals) == 1:
                    for eid in kids:
                        del cur[Path(parent.edges + (eid,), parent.range, g.s(eid))]
                    cur[parent] = vals.pop()
        return CylinderFn._raw(g, cur)

    # algebra --------------------------------------------------------------

    def _check(self, other):
        if other.graph is not self.graph:
            raise GraphMismatchError("cylinder functions over different graphs")

    def __add__(self, other):
        if not isinstance(other, CylinderFn):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return CylinderFn._raw(self.graph, out)

    def __neg__(self):
        return CylinderFn._raw(self.graph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CylinderFn):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "CylinderFn":
        c = QQi.coerce(c)
        if not c:
            return CylinderFn.zero(self.graph)
        return CylinderFn._raw(self.graph, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CylinderFn):
            return self.multiply(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def multiply(self, other: "CylinderFn") -> "CylinderFn":
        """Pointwise product.

        Computed termwise without a global refinement: two cylinders are either
        nested (product is the smaller one) or disjoint.  This agrees with
        refining both operands to a common depth and multiplying there.
        """
        self._check(other)
        out = defaultdict(QQi)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a.length >= b.length:
                    if a.startswith(b):
                        out[a] = out[a] + ca * cb
                elif b.startswith(a):
                    out[b] = out[b] + ca * cb
        return CylinderFn._raw(self.graph, {k: v for k, v in out.items() if v})

    def conjugate(self) -> "CylinderFn":
        return CylinderFn._raw(self.graph, {k: c.conjugate() for k, c in self.terms.items()})

    def pullback_shift(self, e) -> "CylinderFn":
        """``f o phi_e`` where ``phi_e(x) = e x`` maps ``E^inf_{s(e)}`` into ``E^inf_{r(e)}``."""
        g = self.graph
        edge = g.edge(e)
        out = defaultdict(QQi)
        unit = Path((), edge.source, edge.source)
        for beta, c in self.terms.items():
            if not beta.edges:
                if beta.range == edge.range:
                    out[unit] = out[unit] + c
            elif beta.edges[0] == edge.id:
                rest = beta.edges[1:]
                key = Path(rest, edge.source, beta.source) if rest else unit
                out[key] = out[key] + c
        return CylinderFn._raw(g, {k: v for k, v in out.items() if v})

    def evaluate(self, alpha) -> QQi:
        """Value at any infinite path extending ``alpha``."""
        alpha = self.graph.as_path(alpha)
        if alpha.length < self.depth:
            raise ValueError(f"path of length {alpha.length} is shorter than key length {self.depth}")
        total = QQi(0)
        for beta, c in self.terms.items():
            if alpha.startswith(beta):
                total = total + c
        return total

    def restrict(self, v) -> "CylinderFn":
        """Part of ``f`` supported on ``E^inf_v``."""
        return CylinderFn._raw(self.graph, {k: c for k, c in self.terms.items() if k.range == v})

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CylinderFn):
            return NotImplemented
        if other.graph is not self.graph:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.canonical().terms.items()))

    def __repr__(self):
        return f"CylinderFn({self})"

    def __str__(self):
        from .expr import format_scalar

        if not self.terms:
            return "0"
        parts = []
        for alpha, c in self:
            parts.append(f"{format_scalar(c)}*chi[{alpha}]")
        return " + ".join(parts)


def cylinder(graph: Graph, *terms) -> CylinderFn:
    """Shorthand: ``cylinder(g, ("e1", 2), ("v", -1))``."""
    return CylinderFn(graph, {graph.as_path(a): c for a, c in terms})
