"""Critical points of the min-distance curve and related root finding."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from platonic_cylinders import constants as C
from platonic_cylinders.geom import radius_from_distance
from platonic_cylinders.platonic import PairKind
from platonic_cylinders.rotation import all_branches, branch_distance_sq, branch_slope

log = logging.getLogger(__name__)

GRID_CELLS = 4096
ZERO_TOL = 1e-14
DEGENERATE_SLOPE_TOL = 1e-6
HALF_PI = math.pi / 2

KINDS = ("smooth-max", "smooth-min", "corner", "zero", "endpoint")


class CriticalPointError(RuntimeError):
    pass


@dataclass(frozen=True)
class CriticalPoint:
    """A distinguished angle of the min curve.

    ``kind`` is one of smooth-max, smooth-min, corner, zero, endpoint.
    ``local_max`` is set for smooth maxima and for corners whose one-sided
    slopes have opposite signs. ``slopes`` are the left/right one-sided
    derivatives of the min curve.
    """

    delta: float
    d_sq: float
    kind: str
    active_orbits: tuple[int, ...]
    local_max: bool = False
    slopes: tuple[float, float] = (0.0, 0.0)
    degenerate: bool = False

    @property
    def radius(self) -> float:
        return radius_from_distance(math.sqrt(max(self.d_sq, 0.0)))

    @property
    def distance(self) -> float:
        return math.sqrt(max(self.d_sq, 0.0))


def _bisect(f, lo: float, hi: float, tol: float = 1e-15, max_iter: int = 200) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise CriticalPointError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _golden_max(f, lo: float, hi: float, tol: float = 1e-8) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def _scan(pair: PairKind, cells: int):
    grid = np.linspace(0.0, HALF_PI, cells + 1)
    values = all_branches(pair, grid)
    return grid, values


def critical_catalog(pair, cells: int = GRID_CELLS) -> list[CriticalPoint]:
    """All distinguished angles of the min curve on [0, pi/2], sorted by delta.

    The min curve is scanned on a uniform grid; changes of the active branch
    are refined into corners by bisecting the difference of the two branches,
    and slope sign changes within one branch are refined by bisecting the
    exact branch derivative.
    """
    return list(_catalog(PairKind.parse(pair), cells))


@lru_cache(maxsize=None)
def _catalog(pair: PairKind, cells: int) -> tuple[CriticalPoint, ...]:
    grid, values = _scan(pair, cells)
    active = values.argmin(axis=0)
    points: list[CriticalPoint] = []

    for delta in (0.0, HALF_PI):
        col = values[:, 0 if delta == 0.0 else -1]
        m = float(col.min())
        act = tuple(int(i) for i in np.flatnonzero(col - m <= 1e-9))
        points.append(CriticalPoint(delta, m, "endpoint", act))

    # first and last cells are skipped: several branches vanish together at the solids
    for i in range(1, cells - 1):
        lo, hi = grid[i], grid[i + 1]
        a, b = int(active[i]), int(active[i + 1])
        if a != b:
            points.extend(_refine_corner(pair, a, b, lo, hi, grid, values))
            continue
        s_lo = branch_slope(pair, a, lo)
        s_hi = branch_slope(pair, a, hi)
        if s_lo > 0.0 >= s_hi:
            x = _bisect(lambda t: branch_slope(pair, a, t), lo, hi)
            points.append(CriticalPoint(x, branch_distance_sq(pair, a, x), "smooth-max", (a,), local_max=True))
        elif s_lo < 0.0 <= s_hi:
            x = _bisect(lambda t: branch_slope(pair, a, t), lo, hi)
            v = branch_distance_sq(pair, a, x)
            points.append(CriticalPoint(x, v, "zero" if v < ZERO_TOL else "smooth-min", (a,)))

    points.sort(key=lambda p: p.delta)
    return tuple(points)


def _refine_corner(pair, a, b, lo, hi, grid, values) -> list[CriticalPoint]:
    diff = lambda t: branch_distance_sq(pair, a, t) - branch_distance_sq(pair, b, t)
    try:
        x = _bisect(diff, lo, hi)
    except CriticalPointError as exc:
        i = int(np.searchsorted(grid, lo))
        raise CriticalPointError(
            f"pair {pair.value}: active branch {a}->{b} on [{lo:.6f}, {hi:.6f}] does not bracket a crossing; "
            f"branch values at ends: {values[[a, b], i]}, {values[[a, b], i + 1]}"
        ) from exc
    v = branch_distance_sq(pair, a, x)
    others = all_branches(pair, x)[:, 0]
    if others.min() < v - 1e-9:
        raise CriticalPointError(f"pair {pair.value}: a third branch undercuts the corner at {x!r}")
    left, right = branch_slope(pair, a, x), branch_slope(pair, b, x)
    degenerate = abs(left - right) < DEGENERATE_SLOPE_TOL
    if degenerate:
        log.warning("tangential branch crossing at delta=%r (orbits %d, %d)", x, a, b)
    return [CriticalPoint(x, v, "corner", (a, b), local_max=bool(left > 0.0 > right),
                          slopes=(left, right), degenerate=degenerate)]


def local_maxima(pair) -> list[CriticalPoint]:
    return [p for p in critical_catalog(pair) if p.local_max]


class BranchMaximum(NamedTuple):
    delta: float
    d_sq: float

    @property
    def at_endpoint(self) -> bool:
        return self.delta in (0.0, HALF_PI)


def maximize_branch(pair, orbit_label: int, samples: int = 512) -> BranchMaximum:
    """Maximum of one orbit branch over [0, pi/2].

    Golden-section search narrows the best grid cell, then the exact
    derivative is bisected. Monotone branches return the better endpoint.
    """
    pair = PairKind.parse(pair)
    f = lambda t: branch_distance_sq(pair, orbit_label, t)
    grid = np.linspace(0.0, HALF_PI, samples + 1)
    vals = branch_distance_sq(pair, orbit_label, grid)
    k = int(np.argmax(vals))
    if k in (0, samples):
        return BranchMaximum(float(grid[k]), float(vals[k]))
    x = _golden_max(f, grid[k - 1], grid[k + 1])
    slope = lambda t: branch_slope(pair, orbit_label, t)
    lo, hi, step = x, x, 1e-7
    while slope(lo) <= 0.0 and lo > grid[k - 1]:
        lo -= step
    while slope(hi) >= 0.0 and hi < grid[k + 1]:
        hi += step
    x = _bisect(slope, max(lo, grid[k - 1]), min(hi, grid[k + 1]))
    return BranchMaximum(x, f(x))


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with ascending coefficients."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        if not coeffs or coeffs[-1] == 0.0:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coefficients)


def real_roots(poly: Polynomial | Sequence[float], interval: tuple[float, float], step: float = 1e-4,
               tol: float = 1e-13) -> list[float]:
    """Real roots of odd multiplicity inside ``interval``.

    Sign changes on a grid of spacing ``step`` bracket the roots, which are
    then bisected to width ``tol``.
    """
    if not isinstance(poly, Polynomial):
        poly = Polynomial(tuple(poly))
    lo, hi = map(float, interval)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError(f"bad interval {interval!r}")
    n = max(int(math.ceil((hi - lo) / step)), 1)
    grid = np.linspace(lo, hi, n + 1)
    signs = np.sign(poly(grid))
    roots = []
    for i in np.flatnonzero(signs == 0):
        roots.append(float(grid[i]))
    for i in np.flatnonzero(signs[:-1] * signs[1:] < 0):
        roots.append(_bisect(lambda t: float(poly(t)), grid[i], grid[i + 1], tol=tol))
    roots.sort()
    expected = int(np.count_nonzero(signs[:-1] * signs[1:] < 0) + np.count_nonzero(signs == 0))
    assert len(roots) == expected
    return roots


def delta_max_root() -> float:
    """The root t0 in (0, 1) of the polynomial fixing tan(delta_max)^2."""
    roots = [t for t in real_roots(Polynomial(C.DELTA_MAX_POLY), (0.0, 1.0)) if 0.5 < t < 0.9]
    if len(roots) != 1:
        raise CriticalPointError(f"expected one root in (0.5, 0.9), got {roots}")
    return roots[0]


@dataclass(frozen=True)
class IdentityReport:
    d_sq: float
    r_closed_form: float
    r_polynomial: float
    r_from_distance: float

    @property
    def residual(self) -> float:
        return abs(self.r_closed_form - self.r_polynomial)

    @property
    def ok(self) -> bool:
        return self.residual < 1e-12 and abs(self.r_closed_form - self.r_from_distance) < 1e-12


def radii_identity_check() -> IdentityReport:
    """Check that the neighboring-branch radius is a cubic in the squared distance."""
    x = C.D2_I
    return IdentityReport(
        d_sq=x,
        r_closed_form=C.R_I,
        r_polynomial=12 * x**3 - 62 * x**2 + 74 * x - 3,
        r_from_distance=radius_from_distance(math.sqrt(x)),
    )
