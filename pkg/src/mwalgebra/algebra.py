"""Exact model of the dense *-subalgebra of C*(E) spanned by ``s_mu s_nu^*``.

An :class:`AlgebraElement` is a finite linear combination of monomials
``(mu, nu)`` standing for ``s_mu s_nu^*`` with ``s(mu) == s(nu)``.  Products are
computed with the contraction rule

    s_nu^* s_alpha = s_alpha'       if alpha = nu alpha'
                   = s_nu'^*        if nu = alpha nu'
                   = 0              otherwise,

which follows from ``s_e^* s_f = delta_{e,f} p_{s(e)}``.  Equality needs the
Cuntz-Krieger relation ``p_v = sum_{r(e)=v} s_e s_e^*`` as well; it is decided by
:func:`normal_form`, which expands every monomial of a gauge degree class
``d = |mu| - |nu|`` to the same ``|nu|`` via

    s_mu s_nu^* = sum_{r(e)=s(mu)} s_{mu e} s_{nu e}^*.

Soundness of that test rests on one external fact from graph-algebra theory:
for a graph with no sources, the monomials ``s_mu s_nu^*`` with fixed
``(|mu|, |nu|)`` are linearly independent, and distinct degree classes are
independent under the gauge action.  No norms are computed anywhere.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import CompositionError, GraphMismatchError
from .graph import Graph, Path
from .pathspace import CylinderFn
from .scalars import ONE, QQi


def _sort_key(mono):
    mu, nu = mono
    return (mu.length - nu.length, nu.length, mu.edges, nu.edges, mu.range, nu.range)


class AlgebraElement:
    __slots__ = ("graph", "terms")

    def __init__(self, graph: Graph, terms=None):
        self.graph = graph
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (mu, nu), c in items:
                mu, nu = graph.as_path(mu), graph.as_path(nu)
                if mu.source != nu.source:
                    raise CompositionError(f"monomial s_{mu} s_{nu}^* has s({mu}) != s({nu})")
                c = QQi.coerce(c)
                prev = clean.get((mu, nu))
                clean[(mu, nu)] = c if prev is None else prev + c
            clean = {k: v for k, v in clean.items() if v}
        self.terms = clean

    @classmethod
    def _raw(cls, graph, terms):
        obj = cls.__new__(cls)
        obj.graph = graph
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, graph: Graph) -> "AlgebraElement":
        return cls._raw(graph, {})

    # generators -----------------------------------------------------------

    @classmethod
    def s(cls, graph: Graph, *edges) -> "AlgebraElement":
        """``s_mu`` for the path ``mu`` spelled by ``edges``."""
        mu = graph.path(*edges)
        return cls._raw(graph, {(mu, graph.vertex(mu.source)): ONE})

    @classmethod
    def p(cls, graph: Graph, v) -> "AlgebraElement":
        w = graph.vertex(v)
        return cls._raw(graph, {(w, w): ONE})

    @classmethod
    def unit(cls, graph: Graph) -> "AlgebraElement":
        """``sum_v p_v``; the identity since the graph is finite."""
        return cls._raw(graph, {(graph.vertex(v), graph.vertex(v)): ONE for v in graph.vertices})

    # inspection -----------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])))

    def degrees(self) -> set:
        return {mu.length - nu.length for mu, nu in self.terms}

    def is_syntactically_zero(self) -> bool:
        return not self.terms

    # linear structure -----------------------------------------------------

    def _check(self, other):
        if other.graph is not self.graph:
            raise GraphMismatchError("algebra elements over different graphs")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
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
        return AlgebraElement._raw(self.graph, out)

    def __neg__(self):
        return AlgebraElement._raw(self.graph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = QQi.coerce(c)
        if not c:
            return AlgebraElement.zero(self.graph)
        return AlgebraElement._raw(self.graph, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def adjoint(self) -> "AlgebraElement":
        return adjoint(self)

    @property
    def star(self) -> "AlgebraElement":
        return adjoint(self)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.graph is not self.graph:
            return False
        return equals(self, other)

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        from .expr import to_string

        return to_string(self)


def monomial(graph: Graph, mu, nu, coeff=ONE) -> AlgebraElement:
    """``coeff * s_mu s_nu^*``; requires ``s(mu) == s(nu)``."""
    return AlgebraElement(graph, {(graph.as_path(mu), graph.as_path(nu)): coeff})


def adjoint(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw(x.graph, {(nu, mu): c.conjugate() for (mu, nu), c in x.terms.items()})


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    if not x.terms or not y.terms:
        return AlgebraElement.zero(x.graph)

    # index y by every prefix of its left path alpha
    by_prefix = defaultdict(list)
    exact = defaultdict(list)
    for (alpha, beta), c in y.terms.items():
        ae = alpha.edges
        exact[(alpha.range, ae)].append((alpha, beta, c))
        for k in range(len(ae) + 1):
            by_prefix[(alpha.range, ae[:k])].append((alpha, beta, c))

    out = defaultdict(QQi)
    for (mu, nu), cx in x.terms.items():
        ne = nu.edges
        n = len(ne)
        # alpha = nu alpha'
        for alpha, beta, cy in by_prefix.get((nu.range, ne), ()):
            tail = alpha.edges[n:]
            new_mu = Path(mu.edges + tail, mu.range, alpha.source) if tail else mu
            key = (new_mu, beta)
            out[key] = out[key] + cx * cy
        # nu = alpha nu' with alpha strictly shorter than nu
        for k in range(n):
            hits = exact.get((nu.range, ne[:k]))
            if not hits:
                continue
            tail = ne[k:]
            for alpha, beta, cy in hits:
                key = (mu, Path(beta.edges + tail, beta.range, nu.source))
                out[key] = out[key] + cx * cy
    return AlgebraElement._raw(x.graph, {k: v for k, v in out.items() if v})


@dataclass
class NormalForm:
    """Per gauge degree ``d``: an expansion level ``N_d`` and the expanded terms.

    Every monomial in class ``d`` has ``|nu| == N_d`` and ``|mu| == N_d + d``.
    """

    graph: Graph
    classes: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(terms for _, terms in self.classes.values())

    def levels(self) -> dict:
        return {d: lvl for d, (lvl, _) in self.classes.items()}

    def to_element(self) -> AlgebraElement:
        out = {}
        for _, terms in self.classes.values():
            out.update(terms)
        return AlgebraElement._raw(self.graph, out)

    def max_abs_coefficient(self) -> float:
        return max((abs(c) for _, t in self.classes.values() for c in t.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return equals(self.to_element(), other.to_element())

    def __str__(self):
        from .expr import to_string

        return to_string(self.to_element())


def normal_form(x: AlgebraElement, level: int = 0) -> NormalForm:
    """Expand every degree class to ``N_d = max(level, max |nu| in the class)``."""
    g = x.graph
    buckets = defaultdict(list)
    for (mu, nu), c in x.terms.items():
        buckets[mu.length - nu.length].append((mu, nu, c))
    classes = {}
    for d in sorted(buckets):
        items = buckets[d]
        target = max(level, max(nu.length for _, nu, _ in items))
        out = defaultdict(QQi)
        for mu, nu, c in items:
            k = target - nu.length
            if k == 0:
                out[(mu, nu)] = out[(mu, nu)] + c
                continue
            for beta in g.paths(k, mu.source):
                be = beta.edges
                key = (Path(mu.edges + be, mu.range, beta.source), Path(nu.edges + be, nu.range, beta.source))
                out[key] = out[key] + c
        classes[d] = (target, {k: v for k, v in out.items() if v})
    return NormalForm(g, classes)


def equals(x: AlgebraElement, y: AlgebraElement) -> bool:
    x._check(y)
    diff = x - y
    if not diff.terms:
        return True
    return normal_form(diff).is_zero()


def is_zero(x: AlgebraElement) -> bool:
    return not x.terms or normal_form(x).is_zero()


def tau(f: CylinderFn) -> AlgebraElement:
    """``chi_{Z(alpha)} -> p_alpha = s_alpha s_alpha^*``, extended linearly."""
    return AlgebraElement._raw(f.graph, {(a, a): c for a, c in f.terms.items()})


def check_intertwine(f: CylinderFn, e) -> bool:
    """``tau(f o phi_e) == s_e^* tau(f) s_e``."""
    g = f.graph
    se = AlgebraElement.s(g, g.edge(e).id)
    lhs = tau(f.pullback_shift(e))
    rhs = multiply(multiply(adjoint(se), tau(f)), se)
    return equals(lhs, rhs)
