import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mwalgebra.errors import CompositionError, GraphError
from mwalgebra.graph import Graph, validate
from mwalgebra.sampling import random_graph, random_path


def test_validate_minimal_loop(loop):
    assert validate(loop).ok


def test_validate_reports_source():
    g = Graph(["u", "v"], [("e", "u", "v")])
    rep = validate(g)
    assert not rep.ok
    assert rep.violations == ["v is a source"]


def test_validate_two_loops(cantor):
    assert validate(cantor)


def test_constructor_rejects_unknown_vertex():
    with pytest.raises(GraphError):
        Graph(["v"], [("e", "v", "w")])


def test_constructor_rejects_id_clash():
    with pytest.raises(GraphError):
        Graph(["v", "e"], [("e", "v", "v")])


def test_edges_between(loop, cantor):
    assert [e.id for e in loop.edges_between("v", "v")] == ["e"]
    assert [e.id for e in cantor.edges_between("v", "v")] == ["e1", "e2"]
    g = Graph(["u", "v"], [("e", "v", "v"), ("f", "u", "v")])
    assert g.edges_between("v", "u") == ()
    with pytest.raises(GraphError):
        g.edges_between("v", "nope")


def test_edges_between_partitions_edges(two_cycle):
    g = two_cycle
    seen = []
    for u, v in itertools.product(g.vertices, repeat=2):
        seen.extend(e.id for e in g.edges_between(u, v))
    assert sorted(seen) == sorted(g.edge_ids)
    assert len(seen) == len(set(seen))


def test_concat(cantor):
    v = cantor.vertex("v")
    beta = cantor.path("e1", "e2")
    assert cantor.concat(v, beta) == beta
    assert cantor.concat(beta, v) == beta
    assert cantor.concat(cantor.path("e1"), cantor.path("e2")).edges == ("e1", "e2")


def test_concat_mismatch(two_cycle):
    g = two_cycle
    with pytest.raises(CompositionError):
        g.concat(g.path("a"), g.path("a"))  # s(a)=w, r(a)=u


def test_path_composability(two_cycle):
    g = two_cycle
    p = g.path("a", "b", "c")
    assert (p.range, p.source, p.length) == ("u", "u", 3)
    with pytest.raises(CompositionError):
        g.path("a", "c")


def test_extend_canonical(loop, cantor):
    assert loop.extend_canonical(loop.vertex("v"), 3).edges == ("e", "e", "e")
    assert cantor.extend_canonical(cantor.vertex("v"), 2).edges == ("e1", "e1")
    alpha = cantor.path("e2")
    assert cantor.extend_canonical(alpha, 0) == alpha


def test_paths_count_matches_adjacency_power(two_cycle):
    import numpy as np

    a = two_cycle.adjacency()
    for n in range(5):
        expected = int(np.linalg.matrix_power(a, n).sum())
        assert len(two_cycle.paths(n)) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_concat_associative_and_length_additive(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    a = random_path(g, rng, 3)
    b = random_path(g, rng, 3, a.source)
    c = random_path(g, rng, 3, b.source)
    ab = g.concat(a, b)
    assert ab.length == a.length + b.length
    assert g.concat(ab, c) == g.concat(a, g.concat(b, c))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 6))
def test_extend_canonical_never_fails_on_valid_graphs(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng)
    assert validate(g).ok
    alpha = random_path(g, rng, 3)
    ext = g.extend_canonical(alpha, n)
    assert ext.length == alpha.length + n
    assert g.path(*ext.edges) == ext if ext.edges else ext.is_vertex
