"""Directed graphs, finite paths and the row-finite/no-source check.

Conventions follow the "generators go the same way as the edges" rule: a path
``e1 e2 ... en`` is composable when ``s(e_i) == r(e_{i+1})``, its range is
``r(e1)`` and its source is ``s(en)``.  Extending a path to the right therefore
means appending an edge ``e`` with ``r(e) == s(path)``, and a vertex is a
*source* when no edge has it as its range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import CompositionError, GraphError


class Edge(NamedTuple):
    id: str
    range: str
    source: str


class Path(NamedTuple):
    """A finite path; ``edges == ()`` encodes the vertex ``range == source``."""

    edges: tuple
    range: str
    source: str

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def startswith(self, prefix: "Path") -> bool:
        if prefix.range != self.range:
            return False
        k = len(prefix.edges)
        return k <= len(self.edges) and self.edges[:k] == prefix.edges

    def sort_key(self):
        return (len(self.edges), self.edges, self.range)

    def __str__(self):
        return " ".join(self.edges) if self.edges else self.range


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class Graph:
    """Finite directed graph ``E = (E^0, E^1, r, s)``; immutable after construction.

    Vertex and edge ids are strings, kept in lexicographic order; the order is
    used for canonical tie-breaking (see :meth:`extend_canonical`).  Vertex and
    edge ids must be distinct so that expressions can refer to either.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        verts = [str(v) for v in vertices]
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex id")
        vset = set(verts)
        recs = []
        for e in edges:
            if isinstance(e, dict):
                e = Edge(str(e["id"]), str(e["range"]), str(e["source"]))
            else:
                e = Edge(*(str(x) for x in e))
            for end in (e.range, e.source):
                if end not in vset:
                    raise GraphError(f"edge {e.id!r} refers to unknown vertex {end!r}")
            recs.append(e)
        ids = [e.id for e in recs]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        clash = vset.intersection(ids)
        if clash:
            raise GraphError(f"ids used for both a vertex and an edge: {sorted(clash)}")

        self._vertices = tuple(sorted(verts))
        self._edges = tuple(sorted(recs))
        self._by_id = {e.id: e for e in self._edges}
        incoming = {v: [] for v in self._vertices}
        for e in self._edges:
            incoming[e.range].append(e)
        self._incoming = {v: tuple(es) for v, es in incoming.items()}
        self._paths_cache = {}

    # basic accessors ------------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self._edges)

    def __repr__(self):
        return f"Graph(vertices={list(self._vertices)}, edges={[tuple(e) for e in self._edges]})"

    def has_vertex(self, v) -> bool:
        return v in self._incoming

    def has_edge(self, e) -> bool:
        return e in self._by_id

    def edge(self, e) -> Edge:
        if isinstance(e, Edge):
            e = e.id
        try:
            return self._by_id[e]
        except KeyError:
            raise GraphError(f"unknown edge {e!r}") from None

    def _check_vertex(self, v):
        if v not in self._incoming:
            raise GraphError(f"unknown vertex {v!r}")

    def r(self, e) -> str:
        return self.edge(e).range

    def s(self, e) -> str:
        return self.edge(e).source

    def incoming(self, v) -> tuple:
        """Edges ``e`` with ``r(e) == v``, sorted by id."""
        self._check_vertex(v)
        return self._incoming[v]

    def edges_between(self, u, v) -> tuple:
        """``E^1_{uv}``: edges with range ``u`` and source ``v``."""
        self._check_vertex(u)
        self._check_vertex(v)
        return tuple(e for e in self._incoming[u] if e.source == v)

    # paths ----------------------------------------------------------------

    def vertex(self, v) -> Path:
        self._check_vertex(v)
        return Path((), v, v)

    def path(self, *edge_ids) -> Path:
        """Path from a sequence of edge ids (or a single vertex id)."""
        if len(edge_ids) == 1 and not isinstance(edge_ids[0], str):
            edge_ids = tuple(edge_ids[0])
        if len(edge_ids) == 1 and edge_ids[0] in self._incoming:
            return self.vertex(edge_ids[0])
        if not edge_ids:
            raise GraphError("empty edge list; use Graph.vertex for length-0 paths")
        es = [self.edge(e) for e in edge_ids]
        for i, (a, b) in enumerate(zip(es, es[1:])):
            if a.source != b.range:
                raise CompositionError(
                    f"edges {a.id!r} and {b.id!r} do not compose: s({a.id})={a.source} != r({b.id})={b.range}"
                    f" (position {i + 1})"
                )
        return Path(tuple(e.id for e in es), es[0].range, es[-1].source)

    def as_path(self, p) -> Path:
        if isinstance(p, Path):
            return p
        if isinstance(p, str):
            return self.path(*p.split()) if " " in p.strip() else self.path(p.strip())
        return self.path(*p)

    def concat(self, a: Path, b: Path) -> Path:
        if a.source != b.range:
            raise CompositionError(f"cannot concatenate: s({a}) = {a.source} != r({b}) = {b.range}")
        if not b.edges:
            return a
        if not a.edges:
            return b
        return Path(a.edges + b.edges, a.range, b.source)

    def extend_canonical(self, alpha: Path, n: int) -> Path:
        """Append ``n`` edges, each time the smallest-id edge that composes."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        edges = list(alpha.edges)
        src = alpha.source
        for _ in range(n):
            inc = self._incoming[src]
            if not inc:
                raise GraphError(f"vertex {src!r} is a source; cannot extend")
            edges.append(inc[0].id)
            src = inc[0].source
        return Path(tuple(edges), alpha.range, src)

    def extensions(self, alpha: Path, n: int) -> list:
        """All paths ``alpha beta`` with ``length(beta) == n``."""
        out = [alpha]
        for _ in range(n):
            nxt = []
            for p in out:
                for e in self._incoming[p.source]:
                    nxt.append(Path(p.edges + (e.id,), p.range, e.source))
            out = nxt
        return out

    def paths(self, n: int, range_vertex=None) -> tuple:
        """All paths of length ``n`` (optionally with a fixed range), cached."""
        key = (n, range_vertex)
        if key not in self._paths_cache:
            roots = self._vertices if range_vertex is None else (range_vertex,)
            out = []
            for v in roots:
                out.extend(self.extensions(self.vertex(v), n))
            self._paths_cache[key] = tuple(out)
        return self._paths_cache[key]

    def adjacency(self):
        """Integer matrix with entry ``(u, v) = |E^1_{uv}|`` in vertex order."""
        import numpy as np

        idx = {v: i for i, v in enumerate(self._vertices)}
        a = np.zeros((len(idx), len(idx)), dtype=int)
        for e in self._edges:
            a[idx[e.range], idx[e.source]] += 1
        return a

    def is_strongly_connected(self) -> bool:
        from scipy.sparse.csgraph import connected_components

        n, _ = connected_components(self.adjacency(), directed=True, connection="strong")
        return n == 1


def validate(graph: Graph) -> ValidationReport:
    """Row-finite, no sources: every vertex receives at least one edge."""
    violations = [f"{v} is a source" for v in graph.vertices if not graph.incoming(v)]
    if not graph.vertices:
        violations.append("graph has no vertices")
    return ValidationReport(not violations, violations)


def single_loop() -> Graph:
    """One vertex ``v`` with one loop ``e``."""
    return Graph(["v"], [("e", "v", "v")])


def cantor_graph() -> Graph:
    """One vertex ``v`` with two loops ``e1 < e2``."""
    return Graph(["v"], [("e1", "v", "v"), ("e2", "v", "v")])


def rose(k: int, vertex: str = "v") -> Graph:
    """One vertex with ``k`` loops ``e1..ek``."""
    return Graph([vertex], [(f"e{i}", vertex, vertex) for i in range(1, k + 1)])
