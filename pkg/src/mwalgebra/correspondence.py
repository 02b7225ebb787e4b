"""The bundle of correspondences over a graph and its representation (psi, pi).

Coefficients ``a = (a_v)`` live in ``A = sum_v A_v`` and vectors
``xi = (xi_e)`` in ``X = sum_e X_e`` where ``X_e`` is the fiber algebra over
``s(e)``.  The operations are

    (a xi)_e = (a_{r(e)} o phi_e) xi_e
    (xi a)_e = xi_e a_{s(e)}
    <xi, eta>_v = sum_{s(e)=v} conj(xi_e) eta_e

Two fiber models share this interface:

* path-space model: fibers are :class:`CylinderFn` supported on ``E^inf_v`` and
  ``phi_e`` is the shift ``x -> e x``; identities hold exactly.
* geometric model: fibers are :class:`GeoFn` callables on the boxes ``T_v`` of
  an :class:`~mwalgebra.ifs.MWSystem` and ``phi_e`` is the similarity map.
  ``pi_geo`` samples ``f o Phi`` on depth-``n`` cylinders through the coding
  map, so the Toeplitz identities hold up to a residual that shrinks with ``n``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, adjoint, equals, multiply, normal_form, tau
from .errors import GraphMismatchError, ModelMismatchError, SupportError
from .graph import Graph
from .pathspace import CylinderFn
from .scalars import QQi


class GeoFn:
    """Complex-valued function on a fiber box, evaluated on ``(m, d)`` point arrays."""

    __slots__ = ("fn",)

    def __init__(self, fn):
        if isinstance(fn, GeoFn):
            fn = fn.fn
        elif not callable(fn):
            c = complex(fn)
            fn = lambda x, c=c: np.full(len(x), c, dtype=complex)
        self.fn = fn

    @classmethod
    def constant(cls, c) -> "GeoFn":
        return cls(c)

    def __call__(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.asarray(self.fn(pts), dtype=complex)
        return np.broadcast_to(out, (len(pts),)).copy() if out.ndim == 0 else out.reshape(len(pts))

    def __mul__(self, other):
        if isinstance(other, GeoFn):
            return GeoFn(lambda x, f=self, g=other: f(x) * g(x))
        c = complex(other)
        return GeoFn(lambda x, f=self: c * f(x))

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, GeoFn):
            return NotImplemented
        return GeoFn(lambda x, f=self, g=other: f(x) + g(x))

    def __neg__(self):
        return GeoFn(lambda x, f=self: -f(x))

    def __sub__(self, other):
        return self + (-other)

    def conjugate(self) -> "GeoFn":
        return GeoFn(lambda x, f=self: np.conj(f(x)))

    def compose(self, sim) -> "GeoFn":
        """``f o phi`` for a similarity ``phi``."""
        return GeoFn(lambda x, f=self, m=sim: f(m.apply(x)))


def _zero_like(fiber_model, graph, system):
    if fiber_model == "path":
        return CylinderFn.zero(graph)
    return GeoFn.constant(0)


class _Bundle:
    """Shared plumbing for :class:`AElement` and :class:`CorrVector`."""

    __slots__ = ("graph", "components", "system")

    def __init__(self, graph: Graph, components=None, system=None):
        self.graph = graph
        self.system = system
        comps = {}
        for k, f in (components or {}).items():
            k = self._key(k)
            if system is None:
                if not isinstance(f, CylinderFn):
                    raise ModelMismatchError("path-space model needs CylinderFn fibers")
                if f.graph is not graph:
                    raise GraphMismatchError("fiber over a different graph")
                fiber = self._fiber_vertex(k)
                bad = {a for a in f.terms if a.range != fiber}
                if bad:
                    raise SupportError(f"component {k!r} must be supported on E^inf_{fiber}, got {sorted(map(str, bad))}")
                if f.terms:
                    comps[k] = f
            else:
                comps[k] = GeoFn(f)
        self.components = comps

    @property
    def model(self) -> str:
        return "path" if self.system is None else "geometric"

    def component(self, k):
        k = self._key(k)
        f = self.components.get(k)
        if f is None:
            return _zero_like(self.model, self.graph, self.system)
        return f

    def _same(self, other):
        if other.graph is not self.graph:
            raise GraphMismatchError("operands over different graphs")
        if other.model != self.model or other.system is not self.system:
            raise ModelMismatchError("operands use different fiber models")


class AElement(_Bundle):
    """``a = (a_v)_v`` with ``a_v`` a function on the fiber over ``v``."""

    __slots__ = ()

    def _key(self, k):
        if not self.graph.has_vertex(k):
            raise SupportError(f"unknown vertex {k!r}")
        return k

    def _fiber_vertex(self, k):
        return k

    @classmethod
    def fiber_unit(cls, graph, v, system=None) -> "AElement":
        if system is None:
            return cls(graph, {v: CylinderFn.unit(graph, v)})
        return cls(graph, {v: GeoFn.constant(1)}, system)

    @classmethod
    def unit(cls, graph, system=None) -> "AElement":
        if system is None:
            return cls(graph, {v: CylinderFn.unit(graph, v) for v in graph.vertices})
        return cls(graph, {v: GeoFn.constant(1) for v in graph.vertices}, system)

    def __mul__(self, other: "AElement") -> "AElement":
        self._same(other)
        keys = set(self.components) & set(other.components)
        return AElement(self.graph, {v: self.components[v] * other.components[v] for v in keys}, self.system)

    def __add__(self, other: "AElement") -> "AElement":
        self._same(other)
        keys = set(self.components) | set(other.components)
        return AElement(self.graph, {v: self.component(v) + other.component(v) for v in keys}, self.system)

    def conjugate(self) -> "AElement":
        return AElement(self.graph, {v: f.conjugate() for v, f in self.components.items()}, self.system)

    def support(self) -> set:
        return set(self.components)

    def __eq__(self, other):
        if not isinstance(other, AElement) or self.model != "path":
            return NotImplemented
        keys = set(self.components) | set(other.components)
        return all(self.component(v) == other.component(v) for v in keys)

    __hash__ = None


class CorrVector(_Bundle):
    """``xi = (xi_e)_e`` with ``xi_e`` a function on the fiber over ``s(e)``."""

    __slots__ = ()

    def _key(self, k):
        return self.graph.edge(k).id

    def _fiber_vertex(self, k):
        return self.graph.s(k)

    @classmethod
    def unit_vector(cls, graph, e, system=None) -> "CorrVector":
        """Fiber unit in slot ``e`` and zero elsewhere."""
        if system is None:
            return cls(graph, {e: CylinderFn.unit(graph, graph.s(e))})
        return cls(graph, {e: GeoFn.constant(1)}, system)

    def __add__(self, other: "CorrVector") -> "CorrVector":
        self._same(other)
        keys = set(self.components) | set(other.components)
        return CorrVector(self.graph, {e: self.component(e) + other.component(e) for e in keys}, self.system)

    def __eq__(self, other):
        if not isinstance(other, CorrVector) or self.model != "path":
            return NotImplemented
        keys = set(self.components) | set(other.components)
        return all(self.component(e) == other.component(e) for e in keys)

    __hash__ = None


# module operations ----------------------------------------------------------


def left_act(a: AElement, xi: CorrVector) -> CorrVector:
    a._same(xi)
    g = a.graph
    out = {}
    for e, f in xi.components.items():
        av = a.components.get(g.r(e))
        if av is None:
            continue
        if a.system is None:
            out[e] = av.pullback_shift(e) * f
        else:
            out[e] = av.compose(a.system.map(e)) * f
    return CorrVector(g, out, xi.system)


def right_act(xi: CorrVector, a: AElement) -> CorrVector:
    a._same(xi)
    g = a.graph
    out = {}
    for e, f in xi.components.items():
        av = a.components.get(g.s(e))
        if av is not None:
            out[e] = f * av
    return CorrVector(g, out, xi.system)


def inner(xi: CorrVector, eta: CorrVector) -> AElement:
    xi._same(eta)
    g = xi.graph
    out = {}
    for e, f in xi.components.items():
        h = eta.components.get(e)
        if h is None:
            continue
        v = g.s(e)
        term = f.conjugate() * h
        out[v] = out[v] + term if v in out else term
    return AElement(g, out, xi.system)


# representation in the graph algebra -----------------------------------------


def _require_path_model(x):
    if x.system is not None:
        raise ModelMismatchError("geometric model passed; use pi_geo / toeplitz_residual_geo")


def pi(a: AElement) -> AlgebraElement:
    """``pi(a) = tau(a o Phi)``; in the path-space model ``Phi`` is the identity."""
    _require_path_model(a)
    out = AlgebraElement.zero(a.graph)
    for f in a.components.values():
        out = out + tau(f)
    return out


def psi(xi: CorrVector) -> AlgebraElement:
    """``psi(xi) = sum_e s_e pi(xi_e)``."""
    _require_path_model(xi)
    g = xi.graph
    out = AlgebraElement.zero(g)
    for e, f in xi.components.items():
        out = out + multiply(AlgebraElement.s(g, e), tau(f))
    return out


def toeplitz_defects(xi: CorrVector, eta: CorrVector, a: AElement, pi_fn=None, psi_fn=None) -> list:
    """The three Toeplitz defects as algebra elements (all zero iff the identities hold)."""
    pi_fn = pi_fn or pi
    psi_fn = psi_fn or psi
    px, pe, pa = psi_fn(xi), psi_fn(eta), pi_fn(a)
    return [
        multiply(adjoint(px), pe) - pi_fn(inner(xi, eta)),
        multiply(pa, px) - psi_fn(left_act(a, xi)),
        multiply(px, pa) - psi_fn(right_act(xi, a)),
    ]


def check_toeplitz(xi: CorrVector, eta: CorrVector, a: AElement) -> bool:
    _require_path_model(a)
    z = AlgebraElement.zero(a.graph)
    return all(equals(d, z) for d in toeplitz_defects(xi, eta, a))


def covariance_sides(a: AElement, u) -> tuple:
    """``(sum_{r(e)=u} psi(a . unit_e) psi(unit_e)^*, pi(a))``."""
    _require_path_model(a)
    g = a.graph
    extra = set(a.components) - {u}
    if extra:
        raise SupportError(f"element must be supported on vertex {u!r}; also has {sorted(extra)}")
    lhs = AlgebraElement.zero(g)
    for e in g.incoming(u):
        unit = CorrVector.unit_vector(g, e.id)
        lhs = lhs + multiply(psi(left_act(a, unit)), adjoint(psi(unit)))
    return lhs, pi(a)


def check_covariance(a: AElement, u) -> bool:
    lhs, rhs = covariance_sides(a, u)
    return equals(lhs, rhs)


# geometric model ------------------------------------------------------------


def _exact(z) -> QQi:
    z = complex(z)
    return QQi(Fraction(z.real), Fraction(z.imag))


def sample_fiber(f: GeoFn, system, v, n: int) -> CylinderFn:
    """Depth-``n`` cylinder approximation of ``f o Phi`` on ``E^inf_v``."""
    from .ifs import cell_centers

    paths, pts = cell_centers(system, n)[v]
    vals = f(pts) if len(paths) else np.zeros(0, dtype=complex)
    return CylinderFn._raw(system.graph, {p: _exact(z) for p, z in zip(paths, vals) if z != 0})


def pi_geo(a: AElement, n: int) -> AlgebraElement:
    if a.system is None:
        raise ModelMismatchError("no geometric system attached")
    if n < 1:
        raise ValueError("depth must be at least 1")
    out = AlgebraElement.zero(a.graph)
    for v, f in a.components.items():
        out = out + tau(sample_fiber(f, a.system, v, n))
    return out


def psi_geo(xi: CorrVector, n: int) -> AlgebraElement:
    if xi.system is None:
        raise ModelMismatchError("no geometric system attached")
    g = xi.graph
    out = AlgebraElement.zero(g)
    for e, f in xi.components.items():
        out = out + multiply(AlgebraElement.s(g, e), tau(sample_fiber(f, xi.system, g.s(e), n)))
    return out


def toeplitz_residual_geo(xi: CorrVector, eta: CorrVector, a: AElement, n: int) -> float:
    """Largest absolute normal-form coefficient among the three Toeplitz defects."""
    if a.system is None:
        raise ModelMismatchError("no geometric system attached")
    defects = toeplitz_defects(
        xi, eta, a, pi_fn=lambda b: pi_geo(b, n), psi_fn=lambda x: psi_geo(x, n)
    )
    return max(normal_form(d).max_abs_coefficient() for d in defects)
