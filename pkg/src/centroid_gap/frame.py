"""Canonical placement of a polygon for a chosen direction.

The direction is rotated onto the positive x-axis, the abscissa where the
vertical chord is longest is moved to x = 0 (midpoint of the maximizer
interval; the chord function is concave so that set is an interval), and
the body is translated and uniformly scaled so its projection onto the
x-axis becomes [-1, omega] with omega >= 0.  If the cut would land on the
left end of the projection the body is reflected once; if it then lands on
the right end, omega = 0 is accepted and the checks that need a right part
are skipped.

The frame also carries every scalar the downstream inequality checks
consume: the maximal chord ell, the common support-slope factor alpha (the
polygon fits in a parallelogram with slanted sides of length
alpha*(1+omega)), the left-slice area ratio B = A(0)/ell, the two
perimeter ratios lambda5 = ell/Ptilde(0) and lambda6 = 2*ell/P(0),
s = 2*alpha/P(0), the right-part fullness u = 2*Area(right)/(ell*omega),
c = -c_a(0), b = s*B and rho = s*omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .checks import CheckReport, REL_TOL
from .errors import InternalInvariantViolation
from .geometry import ConvexPolygon, clip_below, make_polygon, measures
from .sweep import SliceCache


@dataclass(frozen=True)
class NormalizedFrame:
    polygon: ConvexPolygon
    omega: float
    ell: float
    alpha: float
    slope: float
    half_strip: float
    B: float
    lambda5: float
    lambda6: float
    s: float
    u: float  # NaN when omega == 0
    c: float
    b: float
    rho: float
    cache: SliceCache = field(repr=False)

    def scalars(self) -> dict:
        """Frame scalars for report serialization (u is None at omega=0)."""
        return {
            "omega": self.omega, "ell": self.ell, "alpha": self.alpha,
            "slope": self.slope, "half_strip": self.half_strip, "B": self.B,
            "lambda5": self.lambda5, "lambda6": self.lambda6, "s": self.s,
            "u": None if math.isnan(self.u) else self.u,
            "c": self.c, "b": self.b, "rho": self.rho,
        }


def _chord_argmax_cut(cache: SliceCache):
    """Midpoint of the maximizer interval of the chord function.

    The chord function is concave and piecewise linear with kinks only at
    vertex abscissae, so its maximum over the vertex abscissae is global
    and the argmax set is an interval with vertex endpoints.
    """
    ts = cache.break_ts
    ells = cache.ell(ts)
    top = float(ells.max())
    tie = ts[ells >= top * (1.0 - 1e-12)]
    return 0.5 * (float(tie.min()) + float(tie.max())), top


def normalize(P: ConvexPolygon, theta) -> NormalizedFrame:
    """Build the canonical frame of P for direction theta."""
    theta = np.asarray(theta, dtype=float)
    perp = np.array([-theta[1], theta[0]])
    verts = np.column_stack([P.vertices @ theta, P.vertices @ perp])
    poly = make_polygon(verts)

    cache = SliceCache(poly)
    span = cache.t_max - cache.t_min
    cut, _ = _chord_argmax_cut(cache)
    if abs(cut - cache.t_min) <= 1e-12 * span:
        flipped = poly.vertices.copy()
        flipped[:, 0] *= -1.0
        poly = make_polygon(flipped)
        cache = SliceCache(poly)
        cut, _ = _chord_argmax_cut(cache)

    k = 1.0 / (cut - cache.t_min)
    verts = (poly.vertices - np.array([cut, 0.0])) * k
    poly = ConvexPolygon(verts)
    cache = SliceCache(poly)
    omega = max(cache.t_max, 0.0)
    if abs(omega) <= 1e-12:
        omega = 0.0

    at0 = np.array([0.0])
    ell = float(cache.ell(at0)[0])
    A0 = float(cache.area(at0)[0])
    Pt0 = float(cache.ptilde(at0)[0])
    P0 = Pt0 + ell
    ca0 = float(cache.c_a(at0)[0])
    slope, alpha = _support_slope(poly, ell)
    B = A0 / ell
    u = float("nan")
    if omega > 0.0:
        psi = right_part_polygon(poly)
        if psi is None:
            omega = 0.0  # right part too thin to represent
        else:
            u = 2.0 * measures(psi)[0] / (ell * omega)
    s = 2.0 * alpha / P0
    return NormalizedFrame(
        polygon=poly, omega=omega, ell=ell, alpha=alpha, slope=slope,
        half_strip=ell / (2.0 * alpha), B=B, lambda5=ell / Pt0,
        lambda6=2.0 * ell / P0, s=s, u=u, c=-ca0, b=s * B,
        rho=s * omega, cache=cache)


def right_part_polygon(poly: ConvexPolygon):
    """The sub-body right of the cut, {x >= 0}, or None when degenerate."""
    mirrored = poly.vertices.copy()
    mirrored[:, 0] *= -1.0
    clipped = clip_below(make_polygon(mirrored), 0.0)
    if clipped is None:
        return None
    back = clipped.vertices.copy()
    back[:, 0] *= -1.0
    return make_polygon(back)


def _support_slope(poly: ConvexPolygon, ell: float):
    """Common slope of parallel support lines at the maximal chord ends.

    At the top endpoint of the chord at x = 0 a support line with slope m
    must keep every vertex below it, at the bottom endpoint above it; both
    admissible slope sets are intervals and they intersect because the
    chord is maximal at 0.  Returns (midpoint slope, sqrt(1 + m^2)).
    """
    cache = SliceCache(poly)
    at0 = np.array([0.0])
    y_top = float(cache._up.y_at(at0)[0])
    y_bot = float(cache._low.y_at(at0)[0])

    v = poly.vertices
    scale = poly.bbox_diagonal
    right = v[v[:, 0] > 1e-12 * scale]
    left = v[v[:, 0] < -1e-12 * scale]

    def bounds(y0, keep_below):
        lo, hi = -math.inf, math.inf
        pos, neg = (right, left) if keep_below else (left, right)
        if len(pos):
            lo = float(((pos[:, 1] - y0) / pos[:, 0]).max())
        if len(neg):
            hi = float(((neg[:, 1] - y0) / neg[:, 0]).min())
        return lo, hi

    top_lo, top_hi = bounds(y_top, keep_below=True)
    bot_lo, bot_hi = bounds(y_bot, keep_below=False)
    lo = max(top_lo, bot_lo)
    hi = min(top_hi, bot_hi)
    if lo > hi + 1e-9 * max(1.0, abs(lo), abs(hi)):
        raise InternalInvariantViolation(
            f"support slope intervals are disjoint: [{top_lo}, {top_hi}] "
            f"vs [{bot_lo}, {bot_hi}]")
    if math.isinf(lo) and math.isinf(hi):
        m = 0.0
    elif math.isinf(lo):
        m = min(hi, 0.0)
    elif math.isinf(hi):
        m = max(lo, 0.0)
    else:
        m = 0.5 * (lo + hi)
    return m, math.sqrt(1.0 + m * m)


def support_parallelogram(frame: NormalizedFrame):
    """(slope, alpha) of the circumscribing parallelogram, recomputed."""
    return _support_slope(frame.polygon, frame.ell)


def frame_scalars_valid(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """Assert every scalar restriction the frame construction guarantees.

    Reports the worst margin over all bullets; margins are relative to
    max(1, quantities involved).
    """
    f = frame
    cache = f.cache
    items = [
        ("alpha >= 1", f.alpha - 1.0, 1.0),
        ("s > 0", f.s, 1.0),
        ("s < 1", 1.0 - f.s, 1.0),
        ("lambda6 > 0", f.lambda6, 1.0),
        ("lambda6 < 1", 1.0 - f.lambda6, 1.0),
        ("lambda5 > 0", f.lambda5, 1.0),
        ("lambda5 <= 1", 1.0 - f.lambda5, 1.0),
        ("B >= 1/2", f.B - 0.5, 1.0),
        ("B <= min(1,(1-lambda6/2)/s)",
         min(1.0, (1.0 - f.lambda6 / 2.0) / f.s) - f.B, 1.0),
        ("c >= B/2", f.c - f.B / 2.0, 1.0),
        ("c <= 1/2", 0.5 - f.c, 1.0),
        ("left extent = -1", -(abs(cache.t_min + 1.0)), 1.0),
        ("right extent = omega", -(abs(cache.t_max - f.omega)),
         max(1.0, abs(f.omega))),
    ]
    if f.omega > 0.0:
        items.append(("u >= 1", f.u - 1.0, 1.0))
        items.append(("u <= 2", 2.0 - f.u, 1.0))
    ells = cache.ell(cache.break_ts)
    items.append(("chord maximal at 0", f.ell - float(ells.max()),
                  max(1.0, f.ell)))

    worst_name, worst = None, math.inf
    for name, margin, mag in items:
        rel = margin / mag
        if rel < worst:
            worst_name, worst = name, rel
    return CheckReport("frame_scalars", -worst, 0.0, worst, worst >= -tol,
                       f"worst bullet: {worst_name}")


def strip_contains(frame: NormalizedFrame, tol: float = 1e-9) -> bool:
    """All vertices lie between the two parallel support lines."""
    cache = frame.cache
    at0 = np.array([0.0])
    y_top = float(cache._up.y_at(at0)[0])
    y_bot = float(cache._low.y_at(at0)[0])
    v = frame.polygon.vertices
    m = frame.slope
    pad = tol * max(1.0, frame.polygon.bbox_diagonal)
    above = np.all(v[:, 1] <= y_top + m * v[:, 0] + pad)
    below = np.all(v[:, 1] >= y_bot + m * v[:, 0] - pad)
    return bool(above and below)
