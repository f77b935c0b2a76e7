"""The delta-rotation process and its pairwise distance branches.

Every edge line of the base solid is turned by the same angle delta about the
diameter through its tangency point. Pairwise distances then depend only on
the orbit of the edge pair under the rotation group, so the whole
configuration is summarized by one squared-distance function ("branch") per
orbit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from platonic_cylinders.geom import PARALLEL_TOL, TangentLine, line_distance, rotate_tangent_line
from platonic_cylinders.platonic import (
    TAU,
    PairKind,
    build_solid,
    edge_pair_orbits,
    edge_tangent_lines,
    neighboring_pairs,
)

SQRT5 = math.sqrt(5.0)
ACTIVE_TOL = 1e-9


@dataclass(frozen=True)
class DeltaConfiguration:
    pair: PairKind
    delta: float
    lines: tuple[TangentLine, ...]

    @property
    def in_range(self) -> bool:
        return 0.0 <= self.delta <= math.pi / 2


def rotated_configuration(pair, delta: float) -> DeltaConfiguration:
    """Base-solid edge lines, each turned by ``delta`` about its tangency normal."""
    pair = PairKind.parse(pair)
    base = edge_tangent_lines(build_solid(pair.base))
    return DeltaConfiguration(pair, float(delta), tuple(rotate_tangent_line(l, delta) for l in base))


def configuration_min_distance(config) -> float:
    """Minimal pairwise distance d(m) of a configuration or a plain list of lines."""
    lines = config.lines if isinstance(config, DeltaConfiguration) else list(config)
    if len(lines) < 2:
        raise ValueError("need at least two lines")
    return min(line_distance(a, b) for a, b in itertools.combinations(lines, 2))


@dataclass(frozen=True)
class _Rep:
    p_a: np.ndarray
    u_a: np.ndarray
    q_a: np.ndarray  # p_a x u_a, the direction after a quarter turn
    p_b: np.ndarray
    u_b: np.ndarray
    q_b: np.ndarray


@lru_cache(maxsize=None)
def _representatives(pair: PairKind) -> tuple[_Rep, ...]:
    lines = edge_tangent_lines(build_solid(pair.base))
    reps = []
    for orbit in edge_pair_orbits(pair):
        a, b = (lines[i] for i in orbit.representative)
        reps.append(_Rep(a.tangency, a.direction, np.cross(a.tangency, a.direction),
                         b.tangency, b.direction, np.cross(b.tangency, b.direction)))
    return tuple(reps)


def _directions(rep: _Rep, delta: np.ndarray):
    c, s = np.cos(delta)[:, None], np.sin(delta)[:, None]
    ua = c * rep.u_a + s * rep.q_a
    ub = c * rep.u_b + s * rep.q_b
    # derivative of the turned direction is p x u
    dua = -s * rep.u_a + c * rep.q_a
    dub = -s * rep.u_b + c * rep.q_b
    return ua, ub, dua, dub


def _branch_values(rep: _Rep, delta: np.ndarray) -> np.ndarray:
    ua, ub, _, _ = _directions(rep, delta)
    w = rep.p_b - rep.p_a
    n = np.cross(ua, ub)
    nn = np.einsum("ij,ij->i", n, n)
    skew = nn >= PARALLEL_TOL**2
    out = np.empty(len(delta))
    g = n[skew] @ w
    out[skew] = g * g / nn[skew]
    if not skew.all():
        perp = w - (ua[~skew] @ w)[:, None] * ua[~skew]
        out[~skew] = np.einsum("ij,ij->i", perp, perp)
    return out


def _branch_slopes(rep: _Rep, delta: np.ndarray) -> np.ndarray:
    ua, ub, dua, dub = _directions(rep, delta)
    w = rep.p_b - rep.p_a
    n = np.cross(ua, ub)
    dn = np.cross(dua, ub) + np.cross(ua, dub)
    nn = np.einsum("ij,ij->i", n, n)
    g = n @ w
    dg = dn @ w
    dnn = 2.0 * np.einsum("ij,ij->i", n, dn)
    with np.errstate(divide="ignore", invalid="ignore"):
        return 2.0 * g * dg / nn - g * g * dnn / (nn * nn)


def _as_array(delta):
    arr = np.atleast_1d(np.asarray(delta, dtype=float))
    return arr, np.ndim(delta) == 0


def branch_distance_sq(pair, orbit_label: int, delta):
    """Squared distance of the orbit representative pair at ``delta`` (scalar or array)."""
    pair = PairKind.parse(pair)
    reps = _representatives(pair)
    if not 0 <= orbit_label < len(reps):
        raise ValueError(f"no orbit {orbit_label} for pair {pair.value}")
    arr, scalar = _as_array(delta)
    out = _branch_values(reps[orbit_label], arr)
    return float(out[0]) if scalar else out


def branch_slope(pair, orbit_label: int, delta):
    """Exact derivative in delta of :func:`branch_distance_sq` (skew lines only)."""
    pair = PairKind.parse(pair)
    arr, scalar = _as_array(delta)
    out = _branch_slopes(_representatives(pair)[orbit_label], arr)
    return float(out[0]) if scalar else out


def all_branches(pair, delta) -> np.ndarray:
    """Array of shape (n_orbits, len(delta)) with every branch evaluated."""
    pair = PairKind.parse(pair)
    arr, _ = _as_array(delta)
    return np.vstack([_branch_values(rep, arr) for rep in _representatives(pair)])


def min_distance_sq(pair, delta: float) -> tuple[float, frozenset[int]]:
    """Minimum over orbit branches and the labels attaining it (within 1e-9)."""
    values = all_branches(pair, float(delta))[:, 0]
    m = float(values.min())
    return m, frozenset(int(i) for i in np.flatnonzero(values - m <= ACTIVE_TOL))


def neighbor_distance_sq_general(S: float, alpha: float, T):
    """Squared distance of two neighboring lines after the delta-rotation.

    ``S`` is 1/h for the vertex at height h, ``alpha`` = pi/k and ``T`` = tan(delta).
    """
    T = np.asarray(T, dtype=float)
    sa2, ca2 = math.sin(alpha) ** 2, math.cos(alpha) ** 2
    num = 4.0 * sa2 * (1.0 - S * S) ** 2 * T * T
    den = (S * S + T * T) * (1.0 - sa2 * S * S + ca2 * T * T)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den == 0.0, 0.0, num / np.where(den == 0.0, 1.0, den))
    return float(out) if out.ndim == 0 else out


def _c(x):
    return np.cos(x)


def _s(x):
    return np.sin(x)


# Literal closed forms. I-5, I-8 and I-9 are kept exactly as quoted; they do
# not coincide with any orbit branch. The *-fixed forms are the expressions
# that do (see tests/test_rotation.py).
_FORMS = {
    "T-neighbor": ("T", lambda d: -4 * _s(2 * d) ** 2 / ((_c(2 * d) - 2) * (_c(2 * d) + 2))),
    "O-neighbor": ("O", lambda d: -4 * _s(2 * d) ** 2 / ((_c(2 * d) - 3) * (_c(2 * d) + 5))),
    "O-green": ("O", lambda d: (4 * _c(2 * d) + math.sqrt(2) * _s(2 * d)) ** 2
                / (6 * _c(d) ** 4 + 8 * math.sqrt(2) * _c(d) ** 3 * _s(d) + 8 * _s(d) ** 4)),
    "I-neighbor": ("I", lambda d: -4 * _s(2 * d) ** 2
                   / ((_c(2 * d) - (4 + SQRT5)) * (_c(2 * d) - (1 - 2 * SQRT5) * TAU**3))),
    "I-3": ("I", lambda d: 4 * _c(2 * d) ** 2 / (3 + _c(2 * d) ** 2)),
    "I-5": ("I", lambda d: 8 * (SQRT5 * _s(2 * d) - 2 * _c(2 * d)) ** 2
            / (21 + 4 * SQRT5 + 4 * SQRT5 * _c(2 * d) - _c(4 * d) + 8 * _s(2 * d) - 4 * SQRT5 * _s(4 * d))),
    "I-8": ("I", lambda d: 8 * (2 * _c(2 * d) + _s(2 * d)) ** 2
            / (25 + 8 * SQRT5 + 4 * TAU**3 * (2 * _c(2 * d) - _s(2 * d)) + 3 * _c(4 * d) + 4 * _s(4 * d))),
    "I-9": ("I", lambda d: 8 * TAU * (2 * _c(2 * d) + _s(2 * d)) ** 2
            / (TAU**3 * (25 - 8 * SQRT5) + 4 * (2 * _c(2 * d) - _s(2 * d))
               + TAU**3 * (3 * _c(4 * d) + 4 * _s(4 * d)))),
    "I-5-fixed": ("I", lambda d: 8 * (SQRT5 * _s(2 * d) - 2 * _c(2 * d)) ** 2
                  / (21 + 4 * SQRT5 * _c(2 * d) - _c(4 * d) + 8 * _s(2 * d) - 4 * SQRT5 * _s(4 * d))),
    "I-8-fixed": ("I", lambda d: 8 * (2 * _c(2 * d) + _s(2 * d)) ** 2
                  / (25 + 8 * SQRT5 + 4 * TAU**3 * (2 * _s(2 * d) - _c(2 * d)) + 3 * _c(4 * d) + 4 * _s(4 * d))),
    "I-9-fixed": ("I", lambda d: 8 * TAU**3 * (2 * _c(2 * d) + _s(2 * d)) ** 2
                  / (TAU**3 * (25 - 8 * SQRT5) + 4 * (2 * _s(2 * d) - _c(2 * d))
                     + TAU**3 * (3 * _c(4 * d) + 4 * _s(4 * d)))),
}

FORM_IDS = tuple(_FORMS)


def closed_form_branch(pair, form_id: str, delta):
    """Evaluate a named closed-form branch expression at ``delta``."""
    pair = PairKind.parse(pair)
    if form_id not in _FORMS:
        raise ValueError(f"unknown closed form {form_id!r}; known: {', '.join(FORM_IDS)}")
    owner, f = _FORMS[form_id]
    if owner != pair.value:
        raise ValueError(f"closed form {form_id!r} belongs to pair {owner}, not {pair.value}")
    out = f(np.asarray(delta, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def matching_orbits(pair, form_id: str, tol: float = 1e-10, samples: int = 101) -> list[int]:
    """Orbit labels whose numeric branch equals the closed form on [0, pi/2]."""
    pair = PairKind.parse(pair)
    grid = np.linspace(0.0, math.pi / 2, samples)
    target = closed_form_branch(pair, form_id, grid)
    branches = all_branches(pair, grid)
    return [i for i, row in enumerate(branches) if np.max(np.abs(row - target)) <= tol]


@lru_cache(maxsize=None)
def neighbor_label(pair) -> int:
    pair = PairKind.parse(pair)
    orbits = edge_pair_orbits(pair)
    labels = {orbits.label_of(a, b) for a, b in neighboring_pairs(build_solid(pair.base))}
    if len(labels) != 1:
        raise RuntimeError(f"neighboring pairs spread over orbits {sorted(labels)}")
    return labels.pop()


@lru_cache(maxsize=None)
def opposite_label(pair) -> int:
    """The orbit of pairs with antipodal tangency points (constant distance 2)."""
    pair = PairKind.parse(pair)
    lines = edge_tangent_lines(build_solid(pair.base))
    for orbit in edge_pair_orbits(pair):
        a, b = orbit.representative
        if np.linalg.norm(lines[a].tangency + lines[b].tangency) < 1e-9:
            return orbit.label
    raise RuntimeError("no antipodal orbit")


_PINNING_FORMS = {
    "T": {"neighbor": "T-neighbor"},
    "O": {"neighbor": "O-neighbor", "green": "O-green"},
    "I": {"1": "I-neighbor", "3": "I-3", "5": "I-5-fixed", "8": "I-8-fixed", "9": "I-9-fixed"},
}


@lru_cache(maxsize=None)
def pinned_labels(pair) -> dict[int, str]:
    """Internal orbit label -> conventional name, where a closed form fixes it."""
    pair = PairKind.parse(pair)
    out = {opposite_label(pair): "opposite"}
    for name, form in _PINNING_FORMS[pair.value].items():
        hits = matching_orbits(pair, form)
        if len(hits) != 1:
            raise RuntimeError(f"closed form {form} matches orbits {hits}")
        out[hits[0]] = name
    return out
