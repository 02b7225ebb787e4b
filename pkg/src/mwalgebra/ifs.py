"""Graph-directed iterated function systems built from similarities.

Each vertex ``v`` carries an axis-aligned box ``T_v`` (dimension 1 or 2) and
each edge ``e`` a similarity ``phi_e: T_{s(e)} -> T_{r(e)}`` with ratio
``rho_e < 1``.  The coding map sends an infinite path ``e1 e2 ...`` to the single
point of the nested cells ``phi_{e1} o ... o phi_{ek}(T_{s(ek)})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import GraphError, ResourceError
from .graph import Graph, Path, ValidationReport, validate

DEFAULT_POINT_CAP = 4_000_000
CONTAINMENT_SLACK = 1e-12


@dataclass(frozen=True)
class Similarity:
    """``x -> ratio * R(angle) F x + translation``; ``F`` flips the second axis when ``reflect``.

    In one dimension the orthogonal part is ``+-1``: the angle must be a
    multiple of 180 degrees, and ``reflect`` negates.
    """

    ratio: float
    angle_degrees: float = 0.0
    reflect: bool = False
    translation: tuple = (0.0,)

    @property
    def dimension(self) -> int:
        return len(self.translation)

    def linear(self) -> np.ndarray:
        d = self.dimension
        if d == 1:
            turns = round(self.angle_degrees / 180.0)
            sign = -1.0 if (turns % 2 == 1) != bool(self.reflect) else 1.0
            return np.array([[sign * self.ratio]])
        t = math.radians(self.angle_degrees)
        rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        flip = np.diag([1.0, -1.0]) if self.reflect else np.eye(2)
        return self.ratio * rot @ flip

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear().T + np.asarray(self.translation, dtype=float)

    def shifted(self, delta) -> "Similarity":
        t = tuple(float(a) + float(b) for a, b in zip(self.translation, np.broadcast_to(delta, (self.dimension,))))
        return Similarity(self.ratio, self.angle_degrees, self.reflect, t)


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def diam(self) -> float:
        return float(np.linalg.norm(np.subtract(self.hi, self.lo)))

    @property
    def center(self) -> np.ndarray:
        return (np.asarray(self.lo, float) + np.asarray(self.hi, float)) / 2

    def corners(self) -> np.ndarray:
        lo, hi = np.asarray(self.lo, float), np.asarray(self.hi, float)
        if self.dimension == 1:
            return np.array([[lo[0]], [hi[0]]])
        return np.array([[lo[0], lo[1]], [hi[0], lo[1]], [lo[0], hi[1]], [hi[0], hi[1]]])

    def contains(self, points, slack=CONTAINMENT_SLACK) -> bool:
        pts = np.atleast_2d(points)
        scale = max(1.0, float(np.max(np.abs(np.r_[self.lo, self.hi]))))
        tol = slack * scale
        return bool(np.all(pts >= np.asarray(self.lo) - tol) and np.all(pts <= np.asarray(self.hi) + tol))


@dataclass
class MWSystem:
    graph: Graph
    dimension: int
    spaces: dict
    maps: dict

    def __post_init__(self):
        self.spaces = {v: b if isinstance(b, Box) else Box(tuple(map(float, b[0])), tuple(map(float, b[1])))
                       for v, b in self.spaces.items()}
        self._cells = {}

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def map(self, e) -> Similarity:
        return self.maps[self.graph.edge(e).id]

    def box(self, v) -> Box:
        return self.spaces[v]

    @property
    def max_ratio(self) -> float:
        return max(m.ratio for m in self.maps.values())

    @property
    def max_diam(self) -> float:
        return max(b.diam for b in self.spaces.values())


@dataclass
class AttractorApprox:
    """Per-vertex point sets within Hausdorff distance ``radius`` of the attractor."""

    points: dict
    radius: float
    depth: int
    pitch: float
    raw_radius: float = field(default=0.0)


def validate_system(sys: MWSystem) -> ValidationReport:
    g = sys.graph
    out = list(validate(g).violations)
    if sys.dimension not in (1, 2):
        out.append(f"dimension must be 1 or 2, got {sys.dimension}")
        return ValidationReport(False, out)
    for v in g.vertices:
        b = sys.spaces.get(v)
        if b is None:
            out.append(f"vertex {v} has no space")
        elif b.dimension != sys.dimension or np.any(np.asarray(b.hi) < np.asarray(b.lo)):
            out.append(f"vertex {v}: malformed box {b.lo}..{b.hi}")
    for e in g.edges:
        m = sys.maps.get(e.id)
        if m is None:
            out.append(f"edge {e.id} has no map")
            continue
        if m.dimension != sys.dimension:
            out.append(f"edge {e.id}: translation has dimension {m.dimension}")
            continue
        if not (0 < m.ratio < 1):
            out.append(f"edge {e.id}: ratio {m.ratio} is not a contraction")
        if sys.dimension == 1 and m.angle_degrees % 180:
            out.append(f"edge {e.id}: angle must be a multiple of 180 in dimension 1")
        if e.source in sys.spaces and e.range in sys.spaces:
            img = m.apply(sys.spaces[e.source].corners())
            if not sys.spaces[e.range].contains(img):
                lo, hi = img.min(axis=0), img.max(axis=0)
                out.append(
                    f"edge {e.id}: image [{', '.join(f'{x:.6g}' for x in lo)}]..[{', '.join(f'{x:.6g}' for x in hi)}]"
                    f" not inside T_{e.range}"
                )
    return ValidationReport(not out, out)


# coding map -------------------------------------------------------------------


def _compose(sys: MWSystem, edges) -> tuple:
    """Linear part and translation of ``phi_{e1} o ... o phi_{en}``, accumulated left to right."""
    d = sys.dimension
    lin = np.eye(d)
    off = np.zeros(d)
    ratio = 1.0
    for e in edges:
        m = sys.maps[e]
        off = off + lin @ np.asarray(m.translation, float)
        lin = lin @ m.linear()
        ratio *= m.ratio
    return lin, off, ratio


def code(sys: MWSystem, alpha, n: int) -> tuple:
    """Approximate ``Phi`` on ``Z(alpha)``: ``(point, radius)``.

    ``alpha`` is extended canonically to length ``n``; the point is the image of
    the centre of ``T_{s}`` under the composed map and every infinite path with
    that prefix codes a point within ``radius``.
    """
    g = sys.graph
    alpha = g.as_path(alpha)
    if n < alpha.length:
        raise ValueError(f"depth {n} is shorter than the path ({alpha.length})")
    full = g.extend_canonical(alpha, n - alpha.length)
    lin, off, ratio = _compose(sys, full.edges)
    box = sys.spaces[full.source]
    return lin @ box.center + off, ratio * box.diam / 2


def cell_centers(sys: MWSystem, n: int) -> dict:
    """``{v: (paths, points)}`` for all length-``n`` paths with range ``v``.

    ``points[i]`` is ``code(sys, paths[i], n).point``, built inside-out so each
    level costs one vectorised map application per edge.
    """
    if n in sys._cells:
        return sys._cells[n]
    g = sys.graph
    level = {v: ([g.vertex(v)], sys.spaces[v].center[None, :]) for v in g.vertices}
    for _ in range(n):
        nxt = {}
        for v in g.vertices:
            paths, chunks = [], []
            for e in g.incoming(v):
                sub_paths, sub_pts = level[e.source]
                chunks.append(sys.maps[e.id].apply(sub_pts))
                paths.extend(Path((e.id,) + p.edges, v, p.source) for p in sub_paths)
            pts = np.concatenate(chunks) if chunks else np.zeros((0, sys.dimension))
            nxt[v] = (paths, pts)
        level = nxt
    sys._cells[n] = level
    return level


@dataclass
class EquivarianceReport:
    passed: bool
    max_discrepancy: float
    max_bound: float
    checked: int
    failures: list = field(default_factory=list)


def random_path(graph: Graph, rng, n: int) -> Path:
    v = graph.vertices[rng.integers(len(graph.vertices))]
    edges, src = [], v
    for _ in range(n):
        inc = graph.incoming(src)
        e = inc[rng.integers(len(inc))]
        edges.append(e.id)
        src = e.source
    return Path(tuple(edges), v, src)


def check_equivariance(sys: MWSystem, samples: int = 1000, n: int = 30, tol: float = 1e-12,
                       seed=0, maps=None) -> EquivarianceReport:
    """Sample ``|code(e alpha) - phi_e(code(alpha))|`` against ``2 * radius + tol``.

    ``maps`` optionally overrides the edge maps used on the ``phi_e`` side only.
    """
    g = sys.graph
    rng = np.random.default_rng(seed)
    outgoing = {v: [e for e in g.edges if e.source == v] for v in g.vertices}
    worst, worst_bound, count, failures = 0.0, 0.0, 0, []
    for _ in range(samples):
        alpha = random_path(g, rng, n)
        point, radius = code(sys, alpha, n)
        for e in outgoing[alpha.range]:
            ea = Path((e.id,) + alpha.edges, e.range, alpha.source)
            lhs, _ = code(sys, ea, n + 1)
            phi = (maps or {}).get(e.id, sys.maps[e.id])
            rhs = phi.apply(point[None, :])[0]
            gap = float(np.linalg.norm(lhs - rhs))
            bound = 2 * radius + tol
            count += 1
            worst = max(worst, gap)
            worst_bound = max(worst_bound, bound)
            if gap > bound:
                failures.append((str(ea), gap, bound))
    return EquivarianceReport(not failures, worst, worst_bound, count, failures[:10])


# attractor ----------------------------------------------------------------------


def _grid_dedup(points: np.ndarray, pitch: float) -> np.ndarray:
    """Keep the lexicographically smallest point in each grid cell (order independent)."""
    if len(points) == 0:
        return points
    cells = np.floor(points / pitch).astype(np.int64)
    order = np.lexsort(tuple(points[:, i] for i in reversed(range(points.shape[1])))
                       + tuple(cells[:, i] for i in reversed(range(cells.shape[1]))))
    cells, points = cells[order], points[order]
    keep = np.ones(len(points), dtype=bool)
    keep[1:] = np.any(cells[1:] != cells[:-1], axis=1)
    return points[keep]


def attractor_depth(sys: MWSystem, eps: float) -> int:
    """Smallest ``k`` with ``rho_max^k * diam_max + sqrt(d) * eps / 4 <= eps``."""
    budget = eps * (1 - math.sqrt(sys.dimension) / 4)
    k, size = 0, sys.max_diam
    while size > budget:
        size *= sys.max_ratio
        k += 1
    return k


def attractor(sys: MWSystem, eps: float, cap: int = DEFAULT_POINT_CAP, seeds: str = "corners") -> AttractorApprox:
    """Deterministic iteration ``K_u <- union_{r(e)=u} phi_e(K_{s(e)})`` from box seeds.

    After ``k`` levels every point lies in a depth-``k`` cell, so the Hausdorff
    distance to the invariant sets is at most ``rho_max^k * diam_max``; the final
    grid deduplication (pitch ``eps/4``) adds at most one cell diagonal.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    g = sys.graph
    k = attractor_depth(sys, eps)
    pitch = eps / 4
    if seeds == "corners":
        pts = {v: sys.spaces[v].corners() for v in g.vertices}
    elif seeds == "centers":
        pts = {v: sys.spaces[v].center[None, :] for v in g.vertices}
    else:
        raise ValueError(f"unknown seed set {seeds!r}")
    for _ in range(k):
        predicted = sum(len(pts[e.source]) for e in g.edges)
        if predicted > cap:
            raise ResourceError(f"attractor at eps={eps} needs more than {cap} points (depth {k})")
        nxt = {}
        for u in g.vertices:
            chunks = [sys.maps[e.id].apply(pts[e.source]) for e in g.incoming(u)]
            nxt[u] = np.unique(np.concatenate(chunks), axis=0)
        pts = nxt
    pts = {v: _grid_dedup(p, pitch) for v, p in pts.items()}
    raw = sys.max_ratio ** k * sys.max_diam
    return AttractorApprox(pts, raw + math.sqrt(sys.dimension) * pitch, k, pitch, raw)


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) == 0 or len(b) == 0:
        return math.inf if len(a) != len(b) else 0.0
    da, _ = cKDTree(b).query(a)
    db, _ = cKDTree(a).query(b)
    return float(max(da.max(), db.max()))


def self_similarity_gap(sys: MWSystem, approx: AttractorApprox) -> dict:
    """``d_H(K_u, union_{r(e)=u} phi_e(K_{s(e)}))`` on the returned clouds, per vertex."""
    out = {}
    for u in sys.graph.vertices:
        img = np.concatenate([sys.maps[e.id].apply(approx.points[e.source]) for e in sys.graph.incoming(u)])
        out[u] = hausdorff_distance(approx.points[u], img)
    return out


def box_mesh(box: Box, pitch: float) -> np.ndarray:
    axes = []
    for lo, hi in zip(box.lo, box.hi):
        n = int(math.floor((hi - lo) / pitch + 1e-9))
        ticks = lo + pitch * np.arange(n + 1)
        if hi - ticks[-1] > 1e-12:
            ticks = np.append(ticks, hi)
        axes.append(ticks)
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([gr.ravel() for gr in grids], axis=1)


@dataclass
class SurjectivityReport:
    vertices: dict
    max_gap: dict
    eps: float

    @property
    def passed(self) -> bool:
        return all(self.vertices.values())


def check_surjectivity(sys: MWSystem, eps: float, cap: int = DEFAULT_POINT_CAP) -> SurjectivityReport:
    """Does the attractor fill each ``T_v`` up to resolution ``eps``?"""
    approx = attractor(sys, eps, cap)
    ok, gaps = {}, {}
    for v in sys.graph.vertices:
        mesh = box_mesh(sys.spaces[v], eps)
        dist, _ = cKDTree(approx.points[v]).query(mesh)
        gaps[v] = float(dist.max())
        ok[v] = gaps[v] <= 2 * eps
    return SurjectivityReport(ok, gaps, eps)


# dimension ------------------------------------------------------------------------


def mauldin_matrix(sys: MWSystem, s: float) -> np.ndarray:
    """``A(s)[u, v] = sum_{e in E_uv} rho_e ** s``."""
    g = sys.graph
    idx = {v: i for i, v in enumerate(g.vertices)}
    a = np.zeros((len(idx), len(idx)))
    for e in g.edges:
        a[idx[e.range], idx[e.source]] += sys.maps[e.id].ratio ** s
    return a


def perron_bracket(a: np.ndarray, tol: float = 1e-13, max_iter: int = 200_000) -> tuple:
    """Power iteration on ``A + I`` with Collatz-Wielandt bounds.

    Returns ``(lower, upper)`` enclosing the spectral radius of the irreducible
    nonnegative matrix ``a``; the shift makes the iteration primitive so periodic
    graphs converge too.
    """
    m = a + np.eye(len(a))
    x = np.ones(len(a))
    lo, hi = 0.0, math.inf
    for _ in range(max_iter):
        y = m @ x
        q = y / x
        lo, hi = float(q.min()), float(q.max())
        if hi - lo <= tol * max(1.0, hi):
            break
        x = y / np.linalg.norm(y)
    return lo - 1.0, hi - 1.0


def spectral_radius(a: np.ndarray, tol: float = 1e-13) -> float:
    lo, hi = perron_bracket(a, tol)
    return (lo + hi) / 2


def dimension(sys: MWSystem, tol: float = 1e-12) -> float:
    """The ``s`` with spectral radius of ``A(s)`` equal to 1, by bisection."""
    if not sys.graph.is_strongly_connected():
        raise GraphError("dimension needs a strongly connected graph")
    lo, hi = 0.0, float(sys.dimension + 1)
    while perron_bracket(mauldin_matrix(sys, hi), tol / 10)[0] > 1.0:
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        low_r, high_r = perron_bracket(mauldin_matrix(sys, mid), tol / 10)
        if low_r > 1.0:
            lo = mid
        elif high_r < 1.0:
            hi = mid
        else:
            return mid
    return (lo + hi) / 2

