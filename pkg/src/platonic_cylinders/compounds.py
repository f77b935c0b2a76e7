"""Polygonal figures formed by the tangent lines at the zeros of the min curve.

At an interior zero some lines intersect; each connected cluster of
intersecting lines closes up into a planar triangle, a planar pentagram or
the 1-skeleton of a tetrahedron.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from platonic_cylinders.geom import closest_points, line_distance
from platonic_cylinders.platonic import PairKind, rotation_group
from platonic_cylinders.rotation import DeltaConfiguration

POINT_TOL = 1e-9

COMPONENT_TYPES = {3: "triangle", 6: "tetrahedron-skeleton", 5: "pentagonal-star"}


class CompoundError(ValueError):
    pass


@dataclass(frozen=True)
class Intersection:
    i: int
    j: int
    point: np.ndarray


def intersection_graph(config: DeltaConfiguration, tol: float = POINT_TOL) -> list[Intersection]:
    """All line pairs closer than ``tol``, with their (approximate) common point."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    out = []
    for (i, a), (j, b) in itertools.combinations(enumerate(config.lines), 2):
        if line_distance(a, b) < tol:
            p, q = closest_points(a, b)
            out.append(Intersection(i, j, 0.5 * (p + q)))
    return out


def _dedup(points, tol=POINT_TOL) -> np.ndarray:
    kept: list[np.ndarray] = []
    for p in points:
        if not any(np.linalg.norm(p - k) < tol for k in kept):
            kept.append(p)
    return np.array(kept)


def _index_of(points: np.ndarray, p: np.ndarray) -> int:
    d = np.linalg.norm(points - p, axis=1)
    k = int(np.argmin(d))
    if d[k] >= POINT_TOL:
        raise CompoundError(f"point {p} is not a known vertex")
    return k


@dataclass(frozen=True)
class Component:
    """One cluster of mutually intersecting lines.

    ``points`` holds every intersection point, ``segments`` one pair of point
    indices per line (its two outermost intersection points) and ``loop`` the
    closed vertex cycle when the segments form one (triangle, pentagram).
    """

    kind: str
    lines: tuple[int, ...]
    points: np.ndarray
    segments: tuple[tuple[int, int], ...]
    loop: np.ndarray | None

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.array([np.linalg.norm(self.points[a] - self.points[b]) for a, b in self.segments])

    @property
    def vertices(self) -> np.ndarray:
        """Segment endpoints (the figure's corners)."""
        idx = sorted({k for s in self.segments for k in s})
        return self.points[idx]


@dataclass(frozen=True)
class PolygonalCompound:
    pair: PairKind
    delta: float
    components: tuple[Component, ...]
    component_type: str = field(default="")

    @property
    def vertices(self) -> np.ndarray:
        return _dedup(np.vstack([c.vertices for c in self.components]))

    @property
    def loops(self) -> list[np.ndarray]:
        return [c.loop for c in self.components if c.loop is not None]


def _cycle(n_vertices: int, segments) -> list[int] | None:
    adj: dict[int, list[int]] = {k: [] for k in range(n_vertices)}
    for a, b in segments:
        adj[a].append(b)
        adj[b].append(a)
    used = [k for k in adj if adj[k]]
    if any(len(adj[k]) != 2 for k in used):
        return None
    order = [used[0]]
    prev, cur = None, used[0]
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == order[0]:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(used) else None


def _build_component(config: DeltaConfiguration, lines: list[int], hits: list[Intersection]) -> Component:
    kind = COMPONENT_TYPES.get(len(lines))
    if kind is None:
        raise CompoundError(f"cluster of {len(lines)} lines {lines} matches no known figure")
    points = _dedup([h.point for h in hits])
    segments = []
    for k in lines:
        line = config.lines[k]
        on_line = [h.point for h in hits if k in (h.i, h.j)]
        params = [float((p - line.tangency) @ line.direction) for p in on_line]
        lo, hi = on_line[int(np.argmin(params))], on_line[int(np.argmax(params))]
        segments.append((_index_of(points, lo), _index_of(points, hi)))
    cyc = _cycle(len(points), segments)
    loop = points[cyc] if cyc is not None else None
    if kind == "tetrahedron-skeleton":
        if len(points) != 4 or cyc is not None:
            raise CompoundError(f"six-line cluster is not a tetrahedron skeleton ({len(points)} points)")
    elif loop is None or len(loop) != len(lines):
        raise CompoundError(f"{kind} cluster {lines} does not close into a {len(lines)}-cycle")
    return Component(kind, tuple(lines), points, tuple(segments), loop)


def extract_compound(config: DeltaConfiguration, tol: float = POINT_TOL) -> PolygonalCompound:
    """Group intersecting lines into closed figures and classify them."""
    hits = intersection_graph(config, tol)
    if not hits:
        raise CompoundError(f"no intersecting lines at delta={config.delta!r}")
    parent = list(range(len(config.lines)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in hits:
        parent[find(h.i)] = find(h.j)
    clusters: dict[int, list[int]] = {}
    for k in range(len(config.lines)):
        clusters.setdefault(find(k), []).append(k)
    loners = [c for c in clusters.values() if len(c) == 1]
    if loners:
        raise CompoundError(f"lines {sorted(x for c in loners for x in c)} meet no other line")
    components = tuple(
        _build_component(config, c, [h for h in hits if h.i in c]) for c in sorted(clusters.values())
    )
    kinds = {c.kind for c in components}
    if len(kinds) != 1:
        raise CompoundError(f"mixed component types {sorted(kinds)}")
    return PolygonalCompound(config.pair, config.delta, components, kinds.pop())


@dataclass(frozen=True)
class VertexStats:
    vertex_count: int
    circumradius: float
    min_pairwise_distance: float
    nearest_neighbor_count: int
    radius_spread: float


def vertex_stats(source, tol: float = POINT_TOL) -> VertexStats:
    """Vertex-transitivity signature of a compound (or an explicit point set).

    Raises ``CompoundError`` if vertices do not share a circumradius or do not
    all have the same number of nearest neighbours.
    """
    pts = source.vertices if isinstance(source, PolygonalCompound) else _dedup(np.asarray(source, float), tol)
    radii = np.linalg.norm(pts, axis=1)
    spread = float(radii.max() - radii.min())
    if spread > tol:
        raise CompoundError(f"vertices do not share a circumradius (spread {spread:.3e})")
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    np.fill_diagonal(d, np.inf)
    dmin = float(d.min())
    counts = np.count_nonzero(d - dmin < tol, axis=1)
    if len(set(counts.tolist())) != 1:
        raise CompoundError(f"nearest-neighbour counts differ across vertices: {sorted(set(counts.tolist()))}")
    return VertexStats(len(pts), float(radii.mean()), dmin, int(counts[0]), spread)


def _segment_distance(p1, p2, q1, q2) -> float:
    d1, d2, r = p2 - p1, q2 - q1, p1 - q1
    a, e, f = d1 @ d1, d2 @ d2, d2 @ r
    c, b = d1 @ r, d1 @ d2
    denom = a * e - b * b
    s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > 1e-18 else 0.0
    t = (b * s + f) / e
    if t < 0.0:
        t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
    elif t > 1.0:
        t, s = 1.0, np.clip((b - c) / a, 0.0, 1.0)
    return float(np.linalg.norm(p1 + s * d1 - q1 - t * d2))


def _unit(v):
    n = np.linalg.norm(v)
    return v / n if n > 1e-15 else None


def _segment_solid_angle(r1, r2, r3, r4) -> float:
    # signed solid angle of the quadrilateral swept by two segments
    r13, r14, r23, r24 = r3 - r1, r4 - r1, r3 - r2, r4 - r2
    ns = [_unit(np.cross(r13, r14)), _unit(np.cross(r14, r24)), _unit(np.cross(r24, r23)), _unit(np.cross(r23, r13))]
    if any(n is None for n in ns):
        return 0.0
    omega = sum(math.asin(float(np.clip(ns[k] @ ns[(k + 1) % 4], -1.0, 1.0))) for k in range(4))
    sign = np.sign(np.cross(r4 - r3, r2 - r1) @ r13)
    return omega * sign


def linking_number(loop_a, loop_b) -> int:
    """Gauss linking number of two closed polygons (exact segment solid angles)."""
    a = np.asarray(loop_a, float)
    b = np.asarray(loop_b, float)
    seg_a = [(a[k], a[(k + 1) % len(a)]) for k in range(len(a))]
    seg_b = [(b[k], b[(k + 1) % len(b)]) for k in range(len(b))]
    total = 0.0
    for p1, p2 in seg_a:
        for q1, q2 in seg_b:
            if _segment_distance(p1, p2, q1, q2) < POINT_TOL:
                raise CompoundError("loops touch or intersect; linking number undefined")
            total += _segment_solid_angle(p1, p2, q1, q2)
    lk = total / (4.0 * math.pi)
    rounded = round(lk)
    if abs(lk - rounded) > 1e-6:
        raise CompoundError(f"linking sum {lk!r} is not close to an integer")
    return int(rounded)


def linking_matrix(loops) -> np.ndarray:
    n = len(loops)
    out = np.zeros((n, n), dtype=int)
    for i, j in itertools.combinations(range(n), 2):
        out[i, j] = out[j, i] = linking_number(loops[i], loops[j])
    return out


def star_inner_pentagons(pc: PolygonalCompound) -> list[np.ndarray]:
    """The five self-intersections of each pentagram, ordered around its centre."""
    if pc.component_type != "pentagonal-star":
        raise CompoundError(f"expected a pentagonal-star compound, got {pc.component_type!r}")
    out = []
    for comp in pc.components:
        corners = {k for s in comp.segments for k in s}
        inner = comp.points[[k for k in range(len(comp.points)) if k not in corners]]
        if len(inner) != 5:
            raise CompoundError(f"star has {len(inner)} self-intersections")
        centre = inner.mean(axis=0)
        normal = _unit(np.cross(inner[0] - centre, inner[1] - centre))
        e1 = _unit(inner[0] - centre)
        e2 = np.cross(normal, e1)
        ang = [math.atan2((p - centre) @ e2, (p - centre) @ e1) for p in inner]
        out.append(inner[np.argsort(ang)])
    return out


def id_ball_radius(vertices) -> float:
    """Radius of equal balls on these directions that touch a unit ball and each other."""
    v = np.asarray(vertices, float)
    if len(v) < 2:
        raise ValueError("need at least two directions")
    u = v / np.linalg.norm(v, axis=1)[:, None]
    cosines = np.clip(u @ u.T, -1.0, 1.0)
    np.fill_diagonal(cosines, -np.inf)
    theta = math.acos(float(cosines.max()))
    if theta < 1e-12:
        raise ValueError("coincident directions")
    s = math.sin(theta / 2.0)
    if s >= 1.0 - 1e-12:
        raise ValueError("directions are antipodal only; ball radius is unbounded")
    return s / (1.0 - s)


def _is_k_fold_axis(group, axis, k) -> bool:
    target = 1.0 + 2.0 * math.cos(2.0 * math.pi / k)
    return any(np.linalg.norm(g @ axis - axis) < POINT_TOL and abs(np.trace(g) - target) < POINT_TOL for g in group)


def _same_point_set(a: np.ndarray, b: np.ndarray) -> bool:
    if len(a) != len(b):
        return False
    return all(np.min(np.linalg.norm(b - p, axis=1)) < POINT_TOL for p in a)


def axial_generation_check(pair, compound: PolygonalCompound) -> bool:
    """True if the compound is the group orbit of one planar loop.

    The loop must lie in a plane through the origin orthogonal to a 3-fold
    axis (triangles) or a 5-fold axis (pentagrams).
    """
    pair = PairKind.parse(pair)
    fold = {"triangle": 3, "pentagonal-star": 5}.get(compound.component_type)
    if fold is None:
        return False
    group = rotation_group(pair)
    loop = compound.components[0].loop
    normal = _unit(np.cross(loop[1] - loop[0], loop[2] - loop[0]))
    if normal is None or np.max(np.abs(loop @ normal)) > POINT_TOL:
        return False
    if not _is_k_fold_axis(group, normal, fold):
        return False
    images: list[np.ndarray] = []
    for g in group:
        img = loop @ g.T
        if not any(_same_point_set(img, x) for x in images):
            images.append(img)
    loops = compound.loops
    if len(images) != len(loops):
        return False
    return all(any(_same_point_set(img, x) for x in loops) for img in images)
