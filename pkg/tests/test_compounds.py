import itertools
import math

import numpy as np
import pytest

from platonic_cylinders import constants as C
from platonic_cylinders.compounds import (
    CompoundError,
    axial_generation_check,
    extract_compound,
    id_ball_radius,
    intersection_graph,
    linking_matrix,
    linking_number,
    star_inner_pentagons,
    vertex_stats,
)
from platonic_cylinders.platonic import edge_pair_orbits, rotation_group
from platonic_cylinders.rotation import rotated_configuration

MINIMA = {
    "O1": ("O", C.DELTA_O_MIN, 4, "triangle", 2 * math.sqrt(3)),
    "I1": ("I", C.DELTA_I_MIN1, 10, "triangle", 2 * math.sqrt(3)),
    "I2": ("I", C.DELTA_I_MIN2, 5, "tetrahedron-skeleton", 2 * math.sqrt(2)),
    "I3": ("I", C.DELTA_I_MIN3, 6, "pentagonal-star", None),
}


def compound(key):
    pair, delta = MINIMA[key][:2]
    return extract_compound(rotated_configuration(pair, delta))


def crossing_linking_number(a, b, direction=(0.123, 0.456, 0.879)):
    """Oracle: half the signed crossing count of a generic planar projection."""
    n = np.asarray(direction, float)
    n /= np.linalg.norm(n)
    e1 = np.cross(n, [1.0, 0.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    total = 0
    for k in range(len(a)):
        p1, p2 = a[k], a[(k + 1) % len(a)]
        for m in range(len(b)):
            q1, q2 = b[m], b[(m + 1) % len(b)]
            P1, P2, Q1, Q2 = [np.array([x @ e1, x @ e2]) for x in (p1, p2, q1, q2)]
            r, s = P2 - P1, Q2 - Q1
            den = r[0] * s[1] - r[1] * s[0]
            if abs(den) < 1e-14:
                continue
            w = Q1 - P1
            t = (w[0] * s[1] - w[1] * s[0]) / den
            u = (w[0] * r[1] - w[1] * r[0]) / den
            if not (0 <= t < 1 and 0 <= u < 1):
                continue
            height_a = (p1 + t * (p2 - p1)) @ n
            height_b = (q1 + u * (q2 - q1)) @ n
            over, under = ((p2 - p1), (q2 - q1)) if height_a > height_b else ((q2 - q1), (p2 - p1))
            total += int(np.sign(np.cross(over, under) @ n))
    return total // 2


class TestIntersectionGraph:
    @pytest.mark.parametrize("key,degree", [("O1", 2), ("I2", 4), ("I3", 4)])
    def test_degree(self, key, degree):
        pair, delta = MINIMA[key][:2]
        config = rotated_configuration(pair, delta)
        hits = intersection_graph(config)
        deg = np.zeros(len(config.lines), int)
        for h in hits:
            deg[h.i] += 1
            deg[h.j] += 1
        assert set(deg.tolist()) == {degree}

    def test_two_types_at_third_minimum(self):
        table = edge_pair_orbits("I")
        config = rotated_configuration("I", C.DELTA_I_MIN3)
        per_line = {}
        for h in intersection_graph(config):
            lab = table.label_of(h.i, h.j)
            for k in (h.i, h.j):
                per_line.setdefault(k, []).append(lab)
        for labs in per_line.values():
            assert len(set(labs)) == 2 and all(labs.count(x) == 2 for x in set(labs))

    def test_generic_delta_has_no_intersections(self):
        assert intersection_graph(rotated_configuration("I", 0.5)) == []


class TestCompounds:
    @pytest.mark.parametrize("key", sorted(MINIMA))
    def test_structure(self, key):
        pair, delta, count, kind, edge = MINIMA[key]
        pc = compound(key)
        assert len(pc.components) == count and pc.component_type == kind
        if edge is not None:
            for comp in pc.components:
                assert np.max(np.abs(comp.edge_lengths - edge)) < 1e-9
        used = sorted(l for c in pc.components for l in c.lines)
        n = len(rotated_configuration(pair, delta).lines)
        assert used == list(range(n))
        assert all(len(c.segments) == len(c.lines) for c in pc.components)

    @pytest.mark.parametrize("key", sorted(MINIMA))
    def test_components_congruent(self, key):
        pc = compound(key)
        group = rotation_group(pc.pair)
        ref = pc.components[0].vertices
        for comp in pc.components[1:]:
            assert any(
                all(np.min(np.linalg.norm(comp.vertices - g @ v, axis=1)) < 1e-9 for v in ref)
                for g in group
            )

    def test_generic_configuration_rejected(self):
        with pytest.raises(CompoundError):
            extract_compound(rotated_configuration("O", 0.3))


class TestVertexStats:
    def test_cuboctahedron_signature(self):
        st = vertex_stats(compound("O1"))
        assert (st.vertex_count, st.nearest_neighbor_count) == (12, 4)
        assert st.min_pairwise_distance == pytest.approx(2.0, abs=1e-9)

    def test_icosidodecahedron_signature(self):
        st = vertex_stats(compound("I1"))
        assert (st.vertex_count, st.nearest_neighbor_count) == (30, 4)
        assert st.min_pairwise_distance == pytest.approx(math.sqrt(5) - 1, abs=1e-9)

    def test_star_tips_signature(self):
        st = vertex_stats(compound("I3"))
        assert (st.vertex_count, st.nearest_neighbor_count) == (30, 4)

    def test_inner_pentagons_share_circumradius(self):
        pents = star_inner_pentagons(compound("I3"))
        st = vertex_stats(np.vstack(pents))
        assert st.vertex_count == 30 and st.radius_spread < 1e-9

    def test_inconsistent_points(self):
        with pytest.raises(CompoundError):
            vertex_stats([[1, 0, 0], [0, 2, 0]])


class TestLinking:
    HOPF_A = np.array([[0, 0, 0], [2, 0, 0], [1, 2, 0]], float) - [1, 0.5, 0]
    HOPF_B = np.array([[0, 0, -1], [0, 0, 1], [0, 2, 0]], float) + [0, -0.5 - 0.7, 0]

    def test_far_apart_triangles(self):
        tri = np.array([[1, 0, 0], [-0.5, 0.8, 0], [-0.5, -0.8, 0]])
        assert linking_number(tri, tri + [0, 0, 5]) == 0

    def test_hopf_triangles(self):
        assert abs(linking_number(self.HOPF_A, self.HOPF_B)) == 1
        assert linking_number(self.HOPF_A, self.HOPF_B) == crossing_linking_number(self.HOPF_A, self.HOPF_B)
        assert linking_number(self.HOPF_A, self.HOPF_B[::-1]) == -linking_number(self.HOPF_A, self.HOPF_B)

    def test_touching_loops(self):
        tri = np.array([[1, 0, 0], [-0.5, 0.8, 0], [-0.5, -0.8, 0]])
        with pytest.raises(CompoundError):
            linking_number(tri, tri + [1.5, 0, 0])

    @pytest.mark.parametrize("key", ["O1", "I1"])
    def test_triangles_pairwise_linked(self, key):
        loops = compound(key).loops
        lk = linking_matrix(loops)
        for i, j in itertools.combinations(range(len(loops)), 2):
            assert abs(lk[i, j]) == 1
            assert lk[i, j] == crossing_linking_number(loops[i], loops[j])

    def test_inner_pentagons_pairwise_linked(self):
        pents = star_inner_pentagons(compound("I3"))
        for a, b in itertools.combinations(pents, 2):
            assert abs(linking_number(a, b)) == 1
            assert linking_number(a, b) == crossing_linking_number(a, b)

    def test_inner_pentagons_regular_and_planar(self):
        for p in star_inner_pentagons(compound("I3")):
            edges = np.linalg.norm(p - np.roll(p, 1, axis=0), axis=1)
            assert np.ptp(edges) < 1e-9
            centred = p - p.mean(axis=0)
            assert np.linalg.svd(centred, compute_uv=False)[-1] < 1e-9

    def test_star_pentagons_need_stars(self):
        with pytest.raises(CompoundError):
            star_inner_pentagons(compound("O1"))


class TestIdBallRadius:
    def test_icosidodecahedron(self):
        ids = np.array([np.roll(v, r) for r in range(3) for v in
                        [(s, 0, 0) for s in (1, -1)]
                        + [(a / 2, b * C.TAU / 2, c / (2 * C.TAU)) for a in (1, -1) for b in (1, -1) for c in (1, -1)]])
        assert len({tuple(np.round(v, 9)) for v in ids}) == 30
        assert id_ball_radius(ids) == pytest.approx(1 / math.sqrt(5), abs=1e-12)

    def test_compound_vertices(self):
        assert id_ball_radius(compound("I1").vertices) == pytest.approx(1 / math.sqrt(5), abs=1e-12)

    def test_cuboctahedron(self):
        cubo = [p for p in itertools.product((-1, 0, 1), repeat=3) if sorted(map(abs, p)) == [0, 1, 1]]
        assert len(cubo) == 12
        assert id_ball_radius(cubo) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(ValueError):
            id_ball_radius([(0, 0, 1), (0, 0, -1)])
        with pytest.raises(ValueError):
            id_ball_radius([(0, 0, 1), (0, 0, 2)])


@pytest.mark.parametrize("key,expected", [("O1", True), ("I1", True), ("I3", True), ("I2", False)])
def test_axial_generation(key, expected):
    assert axial_generation_check(MINIMA[key][0], compound(key)) is expected
