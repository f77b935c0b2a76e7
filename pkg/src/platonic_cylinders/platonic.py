"""Midsphere-normalized Platonic solids, their rotation groups and edge-pair orbits."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from platonic_cylinders.geom import TangentLine, line_distance, rotate_tangent_line, rotation_about_axis

TAU = (1.0 + math.sqrt(5.0)) / 2.0

MATCH_TOL = 1e-9
GROUP_CAP = 200


class PairKind(enum.Enum):
    """A dual pair of Platonic solids. The first member sits at delta = 0."""

    T = "T"
    O = "O"
    I = "I"

    @property
    def n_edges(self) -> int:
        return {"T": 6, "O": 12, "I": 30}[self.value]

    @property
    def group_order(self) -> int:
        return {"T": 12, "O": 24, "I": 60}[self.value]

    @property
    def t(self) -> int:
        """1, 2, 4: orbit count is 3t - 1 and the min curve has t local maxima."""
        return {"T": 1, "O": 2, "I": 4}[self.value]

    @property
    def base(self) -> str:
        return {"T": "tetrahedron", "O": "octahedron", "I": "icosahedron"}[self.value]

    @property
    def dual(self) -> str:
        return {"T": "dual-tetrahedron", "O": "cube", "I": "dodecahedron"}[self.value]

    @classmethod
    def parse(cls, value) -> "PairKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        aliases = {"TETRAHEDRON": "T", "OCTAHEDRON": "O", "CUBE": "O", "ICOSAHEDRON": "I", "DODECAHEDRON": "I"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown pair {value!r}; expected one of T, O, I") from None


@dataclass(frozen=True)
class Solid:
    name: str
    vertices: np.ndarray  # (V, 3)
    edges: tuple[tuple[int, int], ...]
    vertex_degree: int
    h: float  # circumradius for unit midradius

    @property
    def midpoints(self) -> np.ndarray:
        e = np.array(self.edges)
        return 0.5 * (self.vertices[e[:, 0]] + self.vertices[e[:, 1]])

    def edges_at(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]


def _raw_vertices(name: str) -> np.ndarray:
    if name == "tetrahedron":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "dual-tetrahedron":
        pts = [(-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    elif name == "octahedron":
        pts = [s * e for e in np.eye(3) for s in (1, -1)]
    elif name == "cube":
        pts = list(itertools.product((1, -1), repeat=3))
    elif name == "icosahedron":
        pts = [np.roll((0, a, b * TAU), r) for r in range(3) for a in (1, -1) for b in (1, -1)]
    elif name == "dodecahedron":
        # oriented so the vertices sit over the icosahedron's face centres
        pts = list(itertools.product((1, -1), repeat=3))
        pts += [np.roll((0, a * TAU, b / TAU), r) for r in range(3) for a in (1, -1) for b in (1, -1)]
    else:
        raise ValueError(f"unknown solid {name!r}")
    return np.array(pts, dtype=float)


def _canonical_order(vertices: np.ndarray) -> np.ndarray:
    key = np.round(vertices, 9)
    return vertices[np.lexsort(key.T[::-1])]


@lru_cache(maxsize=None)
def build_solid(name: str) -> Solid:
    """Platonic solid scaled so that its midsphere is the unit sphere.

    Vertices are sorted lexicographically (1e-9 tolerance) and edges are
    sorted index pairs in lexicographic order.
    """
    v = _canonical_order(_raw_vertices(name))
    dist = np.linalg.norm(v[:, None, :] - v[None, :, :], axis=2)
    edge_len = dist[dist > MATCH_TOL].min()
    edges = tuple(
        (i, j) for i, j in itertools.combinations(range(len(v)), 2) if abs(dist[i, j] - edge_len) < 1e-9 * edge_len
    )
    midradius = np.linalg.norm(0.5 * (v[edges[0][0]] + v[edges[0][1]]))
    v = v / midradius
    v.flags.writeable = False
    degree = sum(1 for e in edges if 0 in e)
    return Solid(name, v, edges, degree, float(np.linalg.norm(v[0])))


def edge_tangent_lines(solid: Solid) -> list[TangentLine]:
    """One tangent line per edge: touching at the midpoint, along the edge."""
    out = []
    for i, j in solid.edges:
        a, b = solid.vertices[i], solid.vertices[j]
        p = 0.5 * (a + b)
        u = b - a
        out.append(TangentLine(p / np.linalg.norm(p), u / np.linalg.norm(u)))
    return out


def edge_permutation(solid: Solid, rot: np.ndarray) -> list[int]:
    """Permutation of edge indices induced by ``rot`` (matched by midpoints)."""
    mids = solid.midpoints
    moved = mids @ rot.T
    d = np.linalg.norm(moved[:, None, :] - mids[None, :, :], axis=2)
    perm = []
    for row in d:
        hits = np.flatnonzero(row < MATCH_TOL)
        if len(hits) != 1:
            raise RuntimeError(f"ambiguous edge match under rotation ({len(hits)} candidates)")
        perm.append(int(hits[0]))
    if sorted(perm) != list(range(len(mids))):
        raise RuntimeError("rotation does not permute the edge set")
    return perm


@lru_cache(maxsize=None)
def rotation_group(pair) -> tuple[np.ndarray, ...]:
    """Proper rotation group of the pair, closed from two generators.

    Generators: the vertex-axis rotation by 2*pi/k at vertex 0 of the base
    solid and the half-turn about the midpoint of an edge through that vertex.
    """
    pair = PairKind.parse(pair)
    solid = build_solid(pair.base)
    v = solid.vertices[0] / solid.h
    e = solid.edges[solid.edges_at(0)[0]]
    m = 0.5 * (solid.vertices[e[0]] + solid.vertices[e[1]])
    gens = [rotation_about_axis(v, 2 * math.pi / solid.vertex_degree), rotation_about_axis(m / np.linalg.norm(m), math.pi)]

    elements = [np.eye(3)]
    frontier = [np.eye(3)]
    while frontier:
        fresh = []
        for g in frontier:
            for s in gens:
                x = s @ g
                if not any(np.abs(x - y).max() < MATCH_TOL for y in elements):
                    elements.append(x)
                    fresh.append(x)
                    if len(elements) > GROUP_CAP:
                        raise RuntimeError("group closure exceeded element cap")
        frontier = fresh
    if len(elements) != pair.group_order:
        raise RuntimeError(f"group closure for {pair.value} gave {len(elements)} elements, expected {pair.group_order}")
    for x in elements:
        x.flags.writeable = False
    return tuple(elements)


def neighboring_pairs(solid: Solid) -> list[tuple[int, int]]:
    """Edge pairs sharing a vertex and related by the 2*pi/k turn about it."""
    mids = solid.midpoints
    found = set()
    for v in range(len(solid.vertices)):
        rot = rotation_about_axis(solid.vertices[v] / solid.h, 2 * math.pi / solid.vertex_degree)
        star = solid.edges_at(v)
        for a, b in itertools.combinations(star, 2):
            if (np.linalg.norm(rot @ mids[a] - mids[b]) < MATCH_TOL
                    or np.linalg.norm(rot @ mids[b] - mids[a]) < MATCH_TOL):
                found.add((a, b))
    return sorted(found)


@dataclass(frozen=True)
class Orbit:
    label: int
    representative: tuple[int, int]
    members: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitTable:
    pair: PairKind
    orbits: tuple[Orbit, ...]

    def __len__(self):
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def __getitem__(self, label: int) -> Orbit:
        return self.orbits[label]

    def label_of(self, a: int, b: int) -> int:
        key = (min(a, b), max(a, b))
        for o in self.orbits:
            if key in o.members:
                return o.label
        raise KeyError(key)


def _rep_distance_sq(lines, pair, delta):
    a = rotate_tangent_line(lines[pair[0]], delta)
    b = rotate_tangent_line(lines[pair[1]], delta)
    return line_distance(a, b) ** 2


@lru_cache(maxsize=None)
def edge_pair_orbits(pair) -> OrbitTable:
    """Partition unordered pairs of distinct base-solid edges into group orbits.

    Labels are 0-based, sorted by orbit size and then by the representative's
    squared distance at delta = 0.1. The representative is the lexicographically
    smallest member.
    """
    pair = PairKind.parse(pair)
    solid = build_solid(pair.base)
    perms = [edge_permutation(solid, g) for g in rotation_group(pair)]
    n = len(solid.edges)
    seen: set[tuple[int, int]] = set()
    raw = []
    for a, b in itertools.combinations(range(n), 2):
        if (a, b) in seen:
            continue
        members = {tuple(sorted((p[a], p[b]))) for p in perms}
        seen |= members
        raw.append(tuple(sorted(members)))
    lines = edge_tangent_lines(solid)
    raw.sort(key=lambda m: (len(m), round(_rep_distance_sq(lines, m[0], 0.1), 12)))
    orbits = tuple(Orbit(i, m[0], m) for i, m in enumerate(raw))
    return OrbitTable(pair, orbits)
