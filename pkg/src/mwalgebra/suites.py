"""Randomized identity batteries shared by the CLI and the acceptance tests.

Each battery returns ``{check_name: [passed, total]}``; a battery passes when
``passed == total`` for every entry.
"""

from __future__ import annotations

import random
from collections import defaultdict

from .algebra import AlgebraElement, adjoint, check_intertwine, equals, multiply, normal_form, tau
from .correspondence import AElement, CorrVector, check_covariance, check_toeplitz, pi, psi
from .graph import Graph
from .sampling import (
    random_aelement,
    random_corrvector,
    random_cylinder,
    random_element,
)


def _tally():
    return defaultdict(lambda: [0, 0])


def _record(tally, name, ok):
    tally[name][1] += 1
    if ok:
        tally[name][0] += 1


def all_passed(tally) -> bool:
    return all(p == t for p, t in tally.values())


def ck_identities(graph: Graph) -> dict:
    """``p_v - sum_{r(e)=v} s_e s_e^*`` normal-forms to zero for every vertex."""
    out = {}
    for v in graph.vertices:
        x = AlgebraElement.p(graph, v)
        for e in graph.incoming(v):
            se = AlgebraElement.s(graph, e.id)
            x = x - multiply(se, adjoint(se))
        out[v] = normal_form(x).is_zero()
    return out


def grading_preserved(x: AlgebraElement, y: AlgebraElement) -> bool:
    """Every monomial of a monomial product has the summed degree."""
    for (m1, n1), c1 in x.terms.items():
        for (m2, n2), c2 in y.terms.items():
            d = (m1.length - n1.length) + (m2.length - n2.length)
            prod = multiply(AlgebraElement._raw(x.graph, {(m1, n1): c1}),
                            AlgebraElement._raw(y.graph, {(m2, n2): c2}))
            if any(mu.length - nu.length != d for mu, nu in prod.terms):
                return False
    return True


def algebra_suite(graph: Graph, rng: random.Random, pairs: int = 500) -> dict:
    tally = _tally()
    for v, ok in ck_identities(graph).items():
        _record(tally, "cuntz_krieger", ok)
    for _ in range(pairs):
        x, y, z = (random_element(graph, rng) for _ in range(3))
        xy = multiply(x, y)
        _record(tally, "associativity", equals(multiply(xy, z), multiply(x, multiply(y, z))))
        _record(tally, "adjoint_antimultiplicative", equals(adjoint(xy), multiply(adjoint(y), adjoint(x))))
        _record(tally, "bilinearity", equals(multiply(x, y + z), xy + multiply(x, z)))
        _record(tally, "grading", grading_preserved(x, y))
    return dict(tally)


def intertwine_suite(graph: Graph, rng: random.Random, samples: int = 1000) -> dict:
    tally = _tally()
    for _ in range(samples):
        f = random_cylinder(graph, rng)
        g = random_cylinder(graph, rng)
        _record(tally, "tau_multiplicative", equals(tau(f * g), multiply(tau(f), tau(g))))
        _record(tally, "tau_star", equals(tau(f.conjugate()), adjoint(tau(f))))
        for e in graph.edges:
            _record(tally, "intertwine", check_intertwine(f, e.id))
    return dict(tally)


def toeplitz_suite(graph: Graph, rng: random.Random, samples: int = 1000) -> dict:
    tally = _tally()
    for _ in range(samples):
        xi = random_corrvector(graph, rng)
        eta = random_corrvector(graph, rng)
        a = random_aelement(graph, rng)
        _record(tally, "toeplitz", check_toeplitz(xi, eta, a))
    return dict(tally)


def covariance_suite(graph: Graph, rng: random.Random, samples: int = 1000) -> dict:
    tally = _tally()
    for _ in range(samples):
        u = rng.choice(graph.vertices)
        a = random_aelement(graph, rng, vertices=[u])
        _record(tally, "covariance", check_covariance(a, u))
    return dict(tally)


def generator_coverage(graph: Graph) -> dict:
    """``psi(unit_e) == s_e`` for every edge and ``pi(unit_v) == p_v`` for every vertex."""
    tally = _tally()
    for e in graph.edges:
        _record(tally, "psi_unit_is_s_e", equals(psi(CorrVector.unit_vector(graph, e.id)), AlgebraElement.s(graph, e.id)))
    for v in graph.vertices:
        _record(tally, "pi_unit_is_p_v", equals(pi(AElement.fiber_unit(graph, v)), AlgebraElement.p(graph, v)))
    return dict(tally)
