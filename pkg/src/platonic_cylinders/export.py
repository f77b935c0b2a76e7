"""Serialization of line configurations: JSON, CSV and OBJ cylinder meshes."""

from __future__ import annotations

import io
import json
import math

import numpy as np

from platonic_cylinders.geom import TangentLine

OBJ_SEGMENTS = 48


def to_json(pair: str, delta: float, radius: float, lines) -> str:
    # repr() of a float is the shortest string that round-trips exactly (<= 17 digits)
    doc = {
        "pair": pair,
        "delta": float(delta),
        "radius": float(radius),
        "lines": [
            {"tangency": [float(x) for x in l.tangency], "direction": [float(x) for x in l.direction]}
            for l in lines
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def from_json(text: str) -> tuple[dict, list[TangentLine]]:
    doc = json.loads(text)
    lines = [TangentLine(np.array(l["tangency"]), np.array(l["direction"])) for l in doc["lines"]]
    return doc, lines


def to_csv(lines) -> str:
    buf = io.StringIO()
    buf.write("index,px,py,pz,ux,uy,uz\n")
    for k, l in enumerate(lines):
        vals = [*l.tangency, *l.direction]
        buf.write(f"{k}," + ",".join(repr(float(v)) for v in vals) + "\n")
    return buf.getvalue()


def _fmt(v) -> str:
    return " ".join(f"{float(x):.12g}" for x in v)


def to_obj(lines, radius: float, half_length: float = 10.0, sphere: bool = False) -> str:
    """Cylinders as 48-gon prisms of half-length ``half_length`` around each axis.

    The axis of the cylinder on tangent line ``l`` passes through
    ``(1 + radius) * l.tangency`` parallel to ``l.direction``.
    """
    out = ["# cylinders touching the unit sphere", f"# radius {radius!r}"]
    base = 0
    theta = np.linspace(0.0, 2.0 * math.pi, OBJ_SEGMENTS, endpoint=False)
    for k, l in enumerate(lines):
        p, u = l.tangency, l.direction
        e2 = np.cross(u, p)
        centre = (1.0 + radius) * p
        ring = radius * (np.cos(theta)[:, None] * p + np.sin(theta)[:, None] * e2)
        out.append(f"o cylinder_{k}")
        for end in (-half_length, half_length):
            for r in ring:
                out.append("v " + _fmt(centre + end * u + r))
        n = OBJ_SEGMENTS
        for j in range(n):
            a, b = base + j + 1, base + (j + 1) % n + 1
            out.append(f"f {a} {b} {b + n} {a + n}")
        out.append("f " + " ".join(str(base + j + 1) for j in reversed(range(n))))
        out.append("f " + " ".join(str(base + n + j + 1) for j in range(n)))
        base += 2 * n
    if sphere:
        out.append("o unit_sphere")
        n_lat, n_lon = 24, 48
        out.append("v 0 0 1")
        for i in range(1, n_lat):
            phi = math.pi * i / n_lat
            for j in range(n_lon):
                lam = 2.0 * math.pi * j / n_lon
                out.append("v " + _fmt((math.sin(phi) * math.cos(lam), math.sin(phi) * math.sin(lam), math.cos(phi))))
        out.append("v 0 0 -1")
        top, bottom = base + 1, base + 2 + (n_lat - 1) * n_lon
        ring0 = lambda i: base + 2 + (i - 1) * n_lon
        for j in range(n_lon):
            out.append(f"f {top} {ring0(1) + j} {ring0(1) + (j + 1) % n_lon}")
        for i in range(1, n_lat - 1):
            for j in range(n_lon):
                a, b = ring0(i) + j, ring0(i) + (j + 1) % n_lon
                out.append(f"f {a} {a + n_lon} {b + n_lon} {b}")
        for j in range(n_lon):
            out.append(f"f {ring0(n_lat - 1) + (j + 1) % n_lon} {ring0(n_lat - 1) + j} {bottom}")
    return "\n".join(out) + "\n"
