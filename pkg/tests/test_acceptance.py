"""Acceptance criteria, one test per criterion.

Each test evaluates every sub-check at its stated tolerance, records a single
PASS/FAIL line (shown in the terminal summary) and then asserts.
"""

import math

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from platonic_cylinders import constants as C
from platonic_cylinders.compounds import (
    extract_compound,
    id_ball_radius,
    linking_matrix,
    star_inner_pentagons,
    vertex_stats,
)
from platonic_cylinders.criticality import (
    Polynomial,
    critical_catalog,
    local_maxima,
    maximize_branch,
    radii_identity_check,
    real_roots,
)
from platonic_cylinders.geom import distance_from_radius, radius_from_distance
from platonic_cylinders.platonic import PairKind, build_solid, edge_pair_orbits, edge_tangent_lines
from platonic_cylinders.rotation import (
    all_branches,
    branch_distance_sq,
    closed_form_branch,
    configuration_min_distance,
    matching_orbits,
    min_distance_sq,
    neighbor_distance_sq_general,
    neighbor_label,
    rotated_configuration,
)

HALF_PI = math.pi / 2
SAMPLES = np.linspace(0.0, HALF_PI, 100)


def for_tt(T):
    T = np.asarray(T, float)
    return 16 * T**2 / ((3 * T**2 + 1) * (T**2 + 3))


def record(number, title, checks):
    """checks: list of (label, ok, detail). Records one line, then asserts."""
    failed = [f"{label} ({detail})" for label, ok, detail in checks if not ok]
    status = "FAIL" if failed else "PASS"
    line = f"[{status}] criterion {number:2d}: {title}"
    if failed:
        line += " -- failed: " + "; ".join(failed)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failed, line


def close(label, got, want, tol):
    got, want = float(got), float(want)
    err = abs(got - want)
    return label, bool(err <= tol), f"got {got!r}, want {want!r}, |diff| {err:.3e}, tol {tol:g}"


def test_criterion_01_conversion():
    grid = np.linspace(0.0, 10.0, 1000)
    worst = max(abs(radius_from_distance(distance_from_radius(r)) - r) for r in grid)
    record(1, "radius/distance conversion", [
        ("r(1) == 1 exactly", radius_from_distance(1.0) == 1.0, f"got {radius_from_distance(1.0)!r}"),
        ("round trip on 1000 points", worst <= 1e-12, f"max error {worst:.3e}"),
    ])


def test_criterion_02_tetrahedron_family():
    lab = neighbor_label("T")
    branch = branch_distance_sq("T", lab, SAMPLES)
    ref = for_tt(np.tan(SAMPLES))
    top = maximize_branch("T", lab)
    record(2, "tetrahedron family", [
        close("closed-form value at pi/4", float(for_tt(math.tan(math.pi / 4))), 1.0, 1e-12),
        close("argmax at pi/4", top.delta, math.pi / 4, 1e-12),
        close("max value 1", top.d_sq, 1.0, 1e-12),
        ("numeric branch = closed form at 100 samples", float(np.max(np.abs(branch - ref))) <= 1e-10,
         f"max diff {np.max(np.abs(branch - ref)):.3e}"),
    ])


def test_criterion_03_general_neighbor_formula():
    d = np.linspace(0.0, HALF_PI - 1e-3, 100)
    T = np.tan(d)
    o_ref = -4 * np.sin(2 * d) ** 2 / ((np.cos(2 * d) - 3) * (np.cos(2 * d) + 5))
    o_err = float(np.max(np.abs(neighbor_distance_sq_general(1 / math.sqrt(2), math.pi / 4, T) - o_ref)))
    t_err = float(np.max(np.abs(neighbor_distance_sq_general(1 / math.sqrt(3), math.pi / 3, T) - for_tt(T))))
    record(3, "general neighbor formula reductions", [
        ("octahedron reduction", o_err <= 1e-12, f"max diff {o_err:.3e}"),
        ("tetrahedron reduction", t_err <= 1e-12, f"max diff {t_err:.3e}"),
    ])


def test_criterion_04_octahedron_pair():
    smax = [p for p in critical_catalog("O") if p.kind == "smooth-max"]
    delta = smax[0].delta
    d2 = min_distance_sq("O", delta)[0]
    r = radius_from_distance(math.sqrt(d2))
    literal_r = 7 - math.sqrt(2) - 4 * math.sqrt(3) + 3 * math.sqrt(6)
    record(4, "octahedron pair delta_O, d_O^2, r_O", [
        close("delta_O closed form", delta, math.atan(3**0.25 / math.sqrt(2)), 1e-10),
        close("delta_O ~ 0.74946", delta, 0.74946, 5e-6),
        close("d_O^2 = 2 - sqrt3", d2, 2 - math.sqrt(3), 1e-12),
        close("r_O = 7 - sqrt2 - 4 sqrt3 + 3 sqrt6", r, literal_r, 1e-12),
        close("r_O ~ 0.3492", r, 0.3492, 5e-5),
    ])


def test_criterion_05_octahedron_global_check():
    nb = neighbor_label("O")
    target = 2 - math.sqrt(3)
    margins = {o.label: branch_distance_sq("O", o.label, C.DELTA_O) - target
               for o in edge_pair_orbits("O") if o.label != nb}
    worst = min(margins.values())
    record(5, "octahedron non-neighbor branches clear at delta_O", [
        ("every margin > 0", worst > 0.0, f"smallest margin {worst:.6g}"),
    ])


def test_criterion_06_octahedron_corner():
    corner = [p for p in critical_catalog("O") if p.kind == "corner"][0]
    record(6, "octahedron first corner", [
        close("corner delta", corner.delta, 0.800811, 1e-5),
        close("corner min^2", corner.d_sq, 0.26534, 1e-4),
    ])


def test_criterion_07_icosahedron_neighbor_branch():
    top = maximize_branch("I", neighbor_label("I"))
    r = radius_from_distance(math.sqrt(top.d_sq))
    record(7, "icosahedron neighbor branch maximum", [
        close("tan delta_I", math.tan(top.delta), (6 / (5 + math.sqrt(5))) ** 0.25, 1e-12),
        close("max value closed form", top.d_sq, (9 - math.sqrt(5) - math.sqrt(6 * (5 + math.sqrt(5)))) / 4, 1e-12),
        close("max value ~ 0.0437", top.d_sq, 0.0437, 5e-4),
        close("r_I closed form", r, 11 - 5 * math.sqrt(5) + math.sqrt(3 * (85 - 38 * math.sqrt(5))), 1e-12),
    ])


def test_criterion_08_icosahedron_true_minimum():
    m, act = min_distance_sq("I", C.DELTA_I)
    record(8, "icosahedron true minimum at delta_I", [
        close("min^2", m, 0.00291762, 1e-7),
        close("radius", radius_from_distance(math.sqrt(m)), 0.0277571, 1e-6),
        ("active orbit is not the neighbor orbit", neighbor_label("I") not in act, f"active {sorted(act)}"),
    ])


def test_criterion_09_sextic_root():
    poly = Polynomial((9, -84, -4, 190, 0, -80, 5))
    roots = real_roots(poly, (-10.0, 20.0))
    near = [t for t in roots if abs(t - 0.694356) <= 1e-5]
    t0 = near[0] if near else float("nan")
    top = max(critical_catalog("I"), key=lambda p: p.d_sq)
    record(9, "degree-6 polynomial and delta_max", [
        ("t0 ~ 0.694356 found", len(near) == 1, f"roots {roots}"),
        ("residual at t0 < 1e-9", abs(float(poly(t0))) < 1e-9, f"residual {float(poly(t0)):.3e}"),
        ("exactly 6 real roots", len(roots) == 6, f"found {len(roots)}"),
        close("delta_max = atan sqrt t0", math.atan(math.sqrt(t0)), 0.694707, 1e-5),
        close("catalog delta_max", top.delta, 0.694707, 1e-5),
        close("min^2 at delta_max", top.d_sq, 0.0429216, 1e-6),
        close("r_max", radius_from_distance(math.sqrt(top.d_sq)), 0.115558, 1e-5),
    ])


def test_criterion_10_branch_closed_forms():
    forms = [("O", "O-green"), ("I", "I-5"), ("I", "I-3"), ("I", "I-8"), ("I", "I-9")]
    checks = []
    for pair, form in forms:
        hits = matching_orbits(pair, form, tol=1e-10)
        checks.append((f"{form} matches exactly one orbit", len(hits) == 1, f"matching orbits {hits}"))
    delta = (math.pi - math.atan(2)) / 2
    for form in ("I-8", "I-9"):
        v = closed_form_branch("I", form, delta)
        checks.append((f"{form} vanishes at (pi - atan 2)/2", abs(v) <= 1e-12, f"value {v:.3e}"))
    record(10, "branch closed forms", checks)


def test_criterion_11_orbit_structure():
    rng = np.random.default_rng(11)
    checks = []
    for pair, count, total in (("T", 2, 15), ("O", 5, 66), ("I", 11, 435)):
        table = edge_pair_orbits(pair)
        checks.append((f"{pair} orbit count", len(table) == count, f"got {len(table)}"))
        checks.append((f"{pair} pair total", sum(o.size for o in table) == total, f"got {sum(o.size for o in table)}"))
        if pair != "T":
            values = all_branches(pair, SAMPLES)
            const = [k for k, row in enumerate(values) if np.max(np.abs(row - 4.0)) < 1e-12]
            checks.append((f"{pair} one constant-4 orbit", len(const) == 1, f"orbits {const}"))
        worst = 0.0
        for delta in rng.uniform(0, HALF_PI, 50):
            m = min_distance_sq(pair, delta)[0]
            full = configuration_min_distance(rotated_configuration(pair, delta)) ** 2
            worst = max(worst, abs(m - full))
        checks.append((f"{pair} orbit min = configuration min", worst <= 1e-10, f"max diff {worst:.3e}"))
    record(11, "orbit structure", checks)


def test_criterion_12_local_maxima():
    checks = [(f"{p} local maxima count", len(local_maxima(p)) == n, f"got {len(local_maxima(p))}")
              for p, n in (("T", 1), ("O", 2), ("I", 4))]
    fine = [p for p in critical_catalog("I") if p.kind == "corner" and 0.874 <= p.delta <= 0.876]
    illusive = [p for p in fine if not p.local_max]
    checks.append(("non-maximum corner in [0.874, 0.876]", len(illusive) >= 1,
                   f"corners {[(p.delta, p.local_max) for p in fine]}"))
    record(12, "local maxima of the min curve", checks)


def _abs_lk(loops):
    lk = linking_matrix(loops)
    return set(np.abs(lk[np.triu_indices(len(lk), 1)]).tolist())


def test_criterion_13_minima_structures():
    checks = []
    o1 = extract_compound(rotated_configuration("O", math.atan(math.sqrt(2))))
    lens = np.concatenate([c.edge_lengths for c in o1.components])
    st = vertex_stats(o1)
    checks += [
        ("O: 4 triangles", (len(o1.components), o1.component_type) == (4, "triangle"),
         f"{len(o1.components)} x {o1.component_type}"),
        ("O: edge 2 sqrt3", np.max(np.abs(lens - 2 * math.sqrt(3))) <= 1e-9, f"lengths {lens.min()}..{lens.max()}"),
        ("O: 12 vertices", st.vertex_count == 12, f"{st.vertex_count}"),
        close("O: hull edge 2", st.min_pairwise_distance, 2.0, 1e-9),
        ("O: triangles pairwise |lk| = 1", _abs_lk(o1.loops) == {1}, f"{_abs_lk(o1.loops)}"),
    ]
    i1 = extract_compound(rotated_configuration("I", 0.5 * math.atan(2 / math.sqrt(5))))
    lens = np.concatenate([c.edge_lengths for c in i1.components])
    st = vertex_stats(i1)
    checks += [
        ("I1: 10 triangles", (len(i1.components), i1.component_type) == (10, "triangle"),
         f"{len(i1.components)} x {i1.component_type}"),
        ("I1: edge 2 sqrt3", np.max(np.abs(lens - 2 * math.sqrt(3))) <= 1e-9, f"lengths {lens.min()}..{lens.max()}"),
        ("I1: 30 vertices", st.vertex_count == 30, f"{st.vertex_count}"),
        close("I1: hull edge sqrt5 - 1", st.min_pairwise_distance, math.sqrt(5) - 1, 1e-9),
        ("I1: triangles pairwise |lk| = 1", _abs_lk(i1.loops) == {1}, f"{_abs_lk(i1.loops)}"),
    ]
    i2 = extract_compound(rotated_configuration("I", math.pi / 4))
    lens = np.concatenate([c.edge_lengths for c in i2.components])
    checks += [
        ("I2: 5 tetrahedron skeletons", (len(i2.components), i2.component_type) == (5, "tetrahedron-skeleton"),
         f"{len(i2.components)} x {i2.component_type}"),
        ("I2: edge 2 sqrt2", np.max(np.abs(lens - 2 * math.sqrt(2))) <= 1e-9, f"lengths {lens.min()}..{lens.max()}"),
    ]
    i3 = extract_compound(rotated_configuration("I", math.atan(C.TAU)))
    pents = star_inner_pentagons(i3)
    checks += [
        ("I3: 6 pentagonal stars", (len(i3.components), i3.component_type) == (6, "pentagonal-star"),
         f"{len(i3.components)} x {i3.component_type}"),
        ("I3: inner pentagons pairwise |lk| = 1", _abs_lk(pents) == {1}, f"{_abs_lk(pents)}"),
    ]
    record(13, "structures at the minima", checks)


def test_criterion_14_id_balls():
    t = C.TAU
    ids = [np.roll(v, r) for r in range(3)
           for v in [(s, 0.0, 0.0) for s in (1, -1)]
           + [(a / 2, b * t / 2, c / (2 * t)) for a in (1, -1) for b in (1, -1) for c in (1, -1)]]
    cubo = [np.roll((0.0, a, b), r) for r in range(3) for a in (1, -1) for b in (1, -1)]
    record(14, "balls on icosidodecahedron and cuboctahedron directions", [
        close("icosidodecahedron -> 1/sqrt5", id_ball_radius(ids), 1 / math.sqrt(5), 1e-12),
        close("cuboctahedron -> 1", id_ball_radius(cubo), 1.0, 1e-12),
    ])


def test_criterion_15_field_identity():
    rep = radii_identity_check()
    x = (9 - math.sqrt(5) - math.sqrt(6 * (5 + math.sqrt(5)))) / 4
    r = 11 - 5 * math.sqrt(5) + math.sqrt(3 * (85 - 38 * math.sqrt(5)))
    record(15, "radius as a cubic in the squared distance", [
        close("r_I = 12x^3 - 62x^2 + 74x - 3", 12 * x**3 - 62 * x**2 + 74 * x - 3, r, 1e-12),
        ("library report", rep.ok, f"residual {rep.residual:.3e}"),
    ])


def test_criterion_16_duality_endpoints():
    checks = []
    for pair in "TOI":
        kind = PairKind(pair)
        lines = rotated_configuration(kind, HALF_PI).lines
        dual = edge_tangent_lines(build_solid(kind.dual))
        missing = sum(not any(l.same_line(m, 1e-9) for m in dual) for l in lines)
        extra = sum(not any(m.same_line(l, 1e-9) for l in lines) for m in dual)
        checks.append((f"{pair} lines at pi/2 = dual edges", missing == extra == 0 and len(lines) == len(dual),
                       f"{missing} unmatched, {extra} extra"))
    record(16, "duality at delta = pi/2", checks)
