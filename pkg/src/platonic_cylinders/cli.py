"""Command-line interface: ``platonic-cylinders {verify,curve,critical,orbits,compound,minima}``."""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass

import numpy as np

from platonic_cylinders import constants as C
from platonic_cylinders.compounds import (
    CompoundError,
    axial_generation_check,
    extract_compound,
    id_ball_radius,
    linking_matrix,
    star_inner_pentagons,
    vertex_stats,
)
from platonic_cylinders.criticality import (
    Polynomial,
    critical_catalog,
    delta_max_root,
    local_maxima,
    maximize_branch,
    real_roots,
)
from platonic_cylinders.export import to_csv, to_json, to_obj
from platonic_cylinders.geom import radius_from_distance
from platonic_cylinders.platonic import PairKind, edge_pair_orbits
from platonic_cylinders.rotation import (
    all_branches,
    branch_distance_sq,
    configuration_min_distance,
    min_distance_sq,
    neighbor_label,
    pinned_labels,
    rotated_configuration,
)


class UsageError(Exception):
    pass


def _g(x: float, digits: int = 15) -> str:
    return f"{x:.{digits}g}"


def _write(text: str, out_path: str | None) -> None:
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------- named angles

def interior_zeros(pair) -> list[float]:
    pair = PairKind.parse(pair)
    return {"T": [], "O": [C.DELTA_O_MIN], "I": [C.DELTA_I_MIN1, C.DELTA_I_MIN2, C.DELTA_I_MIN3]}[pair.value]


def delta_max(pair) -> float:
    pair = PairKind.parse(pair)
    if pair is PairKind.T:
        return C.DELTA_O6
    if pair is PairKind.O:
        return C.DELTA_O
    return math.atan(math.sqrt(delta_max_root()))


def resolve_delta(pair, text: str) -> float:
    pair = PairKind.parse(pair)
    text = text.strip().lower()
    if text == "o6":
        if pair is not PairKind.T:
            raise UsageError("delta 'o6' is only defined for pair T")
        return C.DELTA_O6
    if text == "delta-max":
        return delta_max(pair)
    if text.startswith("min-"):
        zeros = interior_zeros(pair)
        k = int(text[4:]) if text[4:].isdigit() else 0
        if not 1 <= k <= len(zeros):
            raise UsageError(f"pair {pair.value} has {len(zeros)} interior minima; got {text!r}")
        return zeros[k - 1]
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"unrecognized delta {text!r}") from None


# ---------------------------------------------------------------- verify

@dataclass
class Row:
    name: str
    reference: float
    computed: float
    tol: float

    @property
    def diff(self) -> float:
        return abs(self.computed - self.reference)

    @property
    def ok(self) -> bool:
        return self.diff <= self.tol


def verification_rows() -> list[Row]:
    rows: list[Row] = []
    add = lambda *a: rows.append(Row(*a))

    o6 = rotated_configuration("T", C.DELTA_O6)
    add("r(O6)", 1.0, radius_from_distance(configuration_min_distance(o6)), 1e-12)
    add("R3 = r(sqrt 3)", 3 + 2 * C.SQRT3, radius_from_distance(C.SQRT3), 1e-12)
    for p, n in (("T", 2), ("O", 5), ("I", 11)):
        add(f"orbit count {p}", n, len(edge_pair_orbits(p)), 0)

    mo = maximize_branch("O", neighbor_label("O"))
    d2o, _ = min_distance_sq("O", mo.delta)
    # printed digits of delta_O are truncated, so allow one unit in the last place
    add("delta_O", 0.74946, mo.delta, 1e-5)
    add("delta_O / pi", 0.23856, mo.delta / math.pi, 5e-6)
    add("delta_O exact", C.DELTA_O, mo.delta, 1e-10)
    add("d_O^2", 0.26795, d2o, 5e-6)
    add("d_O^2 exact", C.D2_O, d2o, 1e-12)
    add("r_O", 0.3492, radius_from_distance(math.sqrt(d2o)), 5e-5)
    add("r_O exact", C.R_O, radius_from_distance(math.sqrt(d2o)), 1e-12)
    add("r_O quotient form", (C.SQRT3 - 1) / (1 + 2 * C.SQRT2 - C.SQRT3), radius_from_distance(math.sqrt(d2o)), 1e-12)
    corner = next(c for c in critical_catalog("O") if c.kind == "corner" and not c.local_max)
    add("O corner delta", 0.800811, corner.delta, 1e-5)
    add("O corner d^2", 0.26534, corner.d_sq, 1e-4)

    mi = maximize_branch("I", neighbor_label("I"))
    add("tan delta_I", C.TAN_DELTA_I, math.tan(mi.delta), 1e-12)
    add("delta_I / pi", 0.24255, mi.delta / math.pi, 5e-6)
    add("d_I^2", 0.0437, mi.d_sq, 5e-4)
    add("d_I^2 exact", C.D2_I, mi.d_sq, 1e-12)
    add("r_I", 0.1167, radius_from_distance(math.sqrt(mi.d_sq)), 5e-5)
    add("r_I exact", C.R_I, radius_from_distance(math.sqrt(mi.d_sq)), 1e-12)
    m2, _ = min_distance_sq("I", mi.delta)
    add("min d^2 at delta_I", 0.00291762, m2, 1e-7)
    add("radius at delta_I", 0.0277571, radius_from_distance(math.sqrt(m2)), 1e-6)

    roots = real_roots(Polynomial(C.DELTA_MAX_POLY), (-10.0, 20.0))
    add("real roots of degree-6 polynomial", 6, len(roots), 0)
    t0 = delta_max_root()
    add("t0", 0.694356, t0, 1e-5)
    gmax = max(local_maxima("I"), key=lambda c: c.d_sq)
    add("delta_max", 0.694707, gmax.delta, 1e-5)
    add("tan(delta_max)^2 - t0", 0.0, math.tan(gmax.delta) ** 2 - t0, 1e-10)
    add("d_max (squared)", 0.0429216, gmax.d_sq, 1e-6)
    add("r_max", 0.115558, gmax.radius, 1e-5)
    for p in "TOI":
        add(f"local maxima {p}", PairKind(p).t, len(local_maxima(p)), 0)

    tri = extract_compound(rotated_configuration("O", C.DELTA_O_MIN))
    add("O min triangle edge", 2 * C.SQRT3, float(tri.components[0].edge_lengths.max()), 1e-9)
    add("cuboctahedron edge", 2.0, vertex_stats(tri).min_pairwise_distance, 1e-9)
    tri_i = extract_compound(rotated_configuration("I", C.DELTA_I_MIN1))
    add("I min-1 triangle edge", 2 * C.SQRT3, float(tri_i.components[0].edge_lengths.max()), 1e-9)
    add("icosidodecahedron edge", C.SQRT5 - 1, vertex_stats(tri_i).min_pairwise_distance, 1e-9)
    tet = extract_compound(rotated_configuration("I", C.DELTA_I_MIN2))
    add("I min-2 tetrahedron edge", 2 * C.SQRT2, float(tet.components[0].edge_lengths.max()), 1e-9)
    add("ID ball radius", C.ID_BALL_RADIUS, id_ball_radius(tri_i.vertices), 1e-12)
    return rows


def cmd_verify(args) -> int:
    rows = verification_rows()
    width = max(len(r.name) for r in rows)
    print(f"{'quantity':<{width}}  {'reference':>20}  {'computed':>20}  {'|diff|':>9}  {'tol':>7}  result")
    for r in rows:
        print(f"{r.name:<{width}}  {_g(r.reference):>20}  {_g(r.computed):>20}  {r.diff:9.2e}  {r.tol:7.0e}  "
              f"{'PASS' if r.ok else 'FAIL'}")
    failed = [r for r in rows if not r.ok]
    print(f"{len(rows) - len(failed)}/{len(rows)} passed")
    return 1 if failed else 0


# ---------------------------------------------------------------- curve

def curve_csv(pair, samples: int) -> str:
    pair = PairKind.parse(pair)
    if samples < 2:
        raise UsageError("samples must be at least 2")
    grid = np.linspace(0.0, math.pi / 2, samples)
    values = all_branches(pair, grid)
    n = values.shape[0]
    buf = io.StringIO()
    buf.write("delta," + ",".join(f"orbit_{k}" for k in range(n)) + ",min,active,radius\n")
    for j, d in enumerate(grid):
        col = values[:, j]
        m = float(col.min())
        active = ";".join(str(k) for k in np.flatnonzero(col - m <= 1e-9))
        cells = [repr(float(d))] + [repr(float(v)) for v in col]
        cells += [repr(m), active, repr(radius_from_distance(math.sqrt(max(m, 0.0))))]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def cmd_curve(args) -> int:
    _write(curve_csv(args.pair, args.samples), args.out)
    return 0


# ---------------------------------------------------------------- critical / orbits

def cmd_critical(args) -> int:
    pair = PairKind.parse(args.pair)
    unit = "deg" if args.degrees else "rad"
    print(f"{'delta(' + unit + ')':>20} {'tan(delta)':>20} {'d^2':>22} {'d':>20} {'radius':>20} "
          f"{'kind':>10} {'max':>5}  active")
    for c in critical_catalog(pair):
        shown = math.degrees(c.delta) if args.degrees else c.delta
        tan = "inf" if abs(c.delta - math.pi / 2) < 1e-15 else _g(math.tan(c.delta))
        print(f"{_g(shown):>20} {tan:>20} {_g(c.d_sq):>22} {_g(c.distance):>20} {_g(c.radius):>20} "
              f"{c.kind:>10} {'yes' if c.local_max else 'no':>5}  {','.join(map(str, c.active_orbits))}")
    return 0


def cmd_orbits(args) -> int:
    pair = PairKind.parse(args.pair)
    names = pinned_labels(pair)
    print(f"{'label':>5} {'size':>5} {'representative':>15} {'d^2(0.1)':>20}  name")
    total = 0
    for o in edge_pair_orbits(pair):
        total += o.size
        rep = f"({o.representative[0]},{o.representative[1]})"
        print(f"{o.label:>5} {o.size:>5} {rep:>15} {_g(branch_distance_sq(pair, o.label, 0.1)):>20}  "
              f"{names.get(o.label, '')}")
    print(f"{len(edge_pair_orbits(pair))} orbits, {total} pairs")
    return 0


# ---------------------------------------------------------------- compound export

def cmd_compound(args) -> int:
    pair = PairKind.parse(args.pair)
    delta = resolve_delta(pair, args.delta)
    if not 0.0 <= delta <= math.pi / 2:
        print(f"warning: delta={delta!r} lies outside [0, pi/2]", file=sys.stderr)
    config = rotated_configuration(pair, delta)
    touching = radius_from_distance(configuration_min_distance(config))
    if args.radius.strip().lower() == "auto":
        radius = touching
    else:
        try:
            radius = float(args.radius)
        except ValueError:
            raise UsageError(f"unrecognized radius {args.radius!r}") from None
        if radius < 0:
            raise UsageError("radius must be non-negative")
        if radius > touching + 1e-12 and not args.force:
            raise UsageError(f"radius {radius!r} exceeds the touching radius {touching!r}; "
                             "cylinders would overlap (use --force)")
    if args.format == "json":
        text = to_json(pair.value, delta, radius, config.lines)
    elif args.format == "csv":
        text = to_csv(config.lines)
    else:
        text = to_obj(config.lines, radius, args.length, args.sphere)
    _write(text, args.out)
    return 0


# ---------------------------------------------------------------- minima

def minima_report(pair, which: int) -> str:
    pair = PairKind.parse(pair)
    zeros = interior_zeros(pair)
    if not zeros:
        raise UsageError(f"pair {pair.value} has no interior minima")
    if not 1 <= which <= len(zeros):
        raise UsageError(f"pair {pair.value} has {len(zeros)} interior minima; --which must be in 1..{len(zeros)}")
    delta = zeros[which - 1]
    pc = extract_compound(rotated_configuration(pair, delta))
    lines = [f"pair {pair.value}, minimum {which} at delta = {_g(delta)}"]
    lengths = np.concatenate([c.edge_lengths for c in pc.components])
    lines.append(f"components: {len(pc.components)} x {pc.component_type}")
    lines.append(f"edge length: {_g(float(lengths.mean()))} (spread {float(lengths.max() - lengths.min()):.1e})")
    st = vertex_stats(pc)
    lines.append(f"vertices: {st.vertex_count}, circumradius {_g(st.circumradius)}, "
                 f"min distance {_g(st.min_pairwise_distance)}, {st.nearest_neighbor_count} nearest neighbours")
    if pc.loops:
        lk = linking_matrix(pc.loops)
        off = np.abs(lk[np.triu_indices(len(lk), 1)])
        lines.append(f"|linking numbers| of loop pairs: {sorted(set(off.tolist()))}")
    if pc.component_type == "pentagonal-star":
        pents = star_inner_pentagons(pc)
        ps = vertex_stats(np.vstack(pents))
        lk = linking_matrix(pents)
        off = np.abs(lk[np.triu_indices(len(lk), 1)])
        lines.append(f"inner pentagons: {len(pents)}, {ps.vertex_count} vertices, circumradius "
                     f"{_g(ps.circumradius)}, |linking numbers| {sorted(set(off.tolist()))}")
    lines.append(f"group orbit of one axial planar loop: {axial_generation_check(pair, pc)}")
    return "\n".join(lines) + "\n"


def cmd_minima(args) -> int:
    sys.stdout.write(minima_report(args.pair, args.which))
    return 0


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="platonic-cylinders", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    pair_kw = dict(required=True, choices=["T", "O", "I"], help="dual pair; T, O or I (base solid at delta=0)")

    p = sub.add_parser("verify", help="recompute every reference constant")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curve", help="sample all orbit branches on [0, pi/2] as CSV")
    p.add_argument("--pair", **pair_kw)
    p.add_argument("--samples", type=int, default=1025)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("critical", help="distinguished angles of the min curve")
    p.add_argument("--pair", **pair_kw)
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("orbits", help="orbits of edge pairs under the rotation group")
    p.add_argument("--pair", **pair_kw)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("compound", help="export a rotated configuration")
    p.add_argument("--pair", **pair_kw)
    p.add_argument("--delta", required=True, help="number, or delta-max | min-1 | min-2 | min-3 | o6")
    p.add_argument("--radius", default="auto", help="number, or auto (touching radius)")
    p.add_argument("--format", choices=["json", "obj", "csv"], default="json")
    p.add_argument("--length", type=float, default=10.0, help="cylinder half-length for OBJ")
    p.add_argument("--sphere", action="store_true", help="add a unit-sphere mesh to OBJ output")
    p.add_argument("--force", action="store_true", help="allow overlapping cylinders")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_compound)

    p = sub.add_parser("minima", help="structure of the compound at an interior zero")
    p.add_argument("--pair", **pair_kw)
    p.add_argument("--which", type=int, required=True)
    p.set_defaults(func=cmd_minima)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CompoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
