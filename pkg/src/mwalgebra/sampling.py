"""Seeded random graphs, paths and elements for the property batteries."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import AlgebraElement
from .correspondence import AElement, CorrVector
from .graph import Graph, Path
from .pathspace import CylinderFn
from .scalars import QQi


def random_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 12) -> Graph:
    """Row-finite graph with no sources: every vertex receives at least one edge."""
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    m = rng.randint(n, max(n, max_edges))
    edges = []
    for i, v in enumerate(verts):
        edges.append((f"e{i}", v, rng.choice(verts)))
    for i in range(n, m):
        edges.append((f"e{i}", rng.choice(verts), rng.choice(verts)))
    return Graph(verts, edges)


def random_scalar(rng: random.Random, complex_prob: float = 0.3) -> QQi:
    def q():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    re = q()
    im = q() if rng.random() < complex_prob else Fraction(0)
    if not re and not im:
        re = Fraction(1)
    return QQi(re, im)


def random_path(graph: Graph, rng: random.Random, max_len: int = 2, range_vertex=None) -> Path:
    v = range_vertex if range_vertex is not None else rng.choice(graph.vertices)
    n = rng.randint(0, max_len)
    edges, src = [], v
    for _ in range(n):
        e = rng.choice(graph.incoming(src))
        edges.append(e.id)
        src = e.source
    return Path(tuple(edges), v, src)


def random_path_to(graph: Graph, rng: random.Random, source, max_len: int = 2) -> Path:
    """Random path whose *source* is ``source`` (grown leftwards)."""
    n = rng.randint(0, max_len)
    edges, rng_v = [], source
    for _ in range(n):
        out = [e for e in graph.edges if e.source == rng_v]
        if not out:
            break
        e = rng.choice(out)
        edges.insert(0, e.id)
        rng_v = e.range
    return Path(tuple(edges), rng_v, source)


def random_cylinder(graph: Graph, rng: random.Random, terms: int = 3, max_len: int = 2,
                    range_vertex=None) -> CylinderFn:
    k = rng.randint(0, terms)
    return CylinderFn(graph, [(random_path(graph, rng, max_len, range_vertex), random_scalar(rng))
                              for _ in range(k)])


def random_element(graph: Graph, rng: random.Random, terms: int = 3, max_len: int = 2) -> AlgebraElement:
    out = []
    for _ in range(rng.randint(1, terms)):
        w = rng.choice(graph.vertices)
        mu = random_path_to(graph, rng, w, max_len)
        nu = random_path_to(graph, rng, w, max_len)
        out.append(((mu, nu), random_scalar(rng)))
    return AlgebraElement(graph, out)


def random_aelement(graph: Graph, rng: random.Random, terms: int = 2, max_len: int = 2,
                    vertices=None) -> AElement:
    verts = graph.vertices if vertices is None else vertices
    return AElement(graph, {v: random_cylinder(graph, rng, terms, max_len, v) for v in verts
                            if vertices is not None or rng.random() < 0.7})


def random_corrvector(graph: Graph, rng: random.Random, terms: int = 2, max_len: int = 2) -> CorrVector:
    comps = {}
    for e in graph.edges:
        if rng.random() < 0.6:
            comps[e.id] = random_cylinder(graph, rng, terms, max_len, e.source)
    return CorrVector(graph, comps)
