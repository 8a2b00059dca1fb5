"""Slicing profiles of a convex polygon along the x-axis.

For the sub-body left of a moving vertical line, Omega_t = {x <= t}, this
module computes the chord length ell(t), area A(t), perimeter P(t) with
the cut chord included, the chord-free perimeter Ptilde(t) = P(t) - ell(t),
and the x-coordinates c_a(t), c_p(t) of the area and boundary centroids of
Omega_t.  Everything is evaluated exactly: the boundary splits into two
monotone chains over x, so chord length and arclength are piecewise linear
in t and their moments piecewise quadratic, integrable segment by segment
in closed form.

Conventions.  A vertical edge at the left extent belongs to Omega_t for
every t >= t_min (so Ptilde is right-continuous and the degenerate slice
at t_min has perimeter twice the edge length, matching the Minkowski
perimeter of a segment).  A vertical edge at the right extent coincides
with the cut chord at t = t_max and is therefore counted once, inside
ell(t_max).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .checks import CheckReport, rel_check
from .geometry import ConvexPolygon, monotone_chains

DEFAULT_GRID = 2048


class SliceCache:
    """Exact slice quantities of one polygon, vectorized over abscissae."""

    def __init__(self, P: ConvexPolygon):
        self.polygon = P
        low, up, left_edge, right_edge = monotone_chains(P)
        self.t_min = float(low[0, 0])
        self.t_max = float(low[-1, 0])
        self.left_edge = left_edge
        self.right_edge = right_edge
        self._low = _ChainIntegrals(low)
        self._up = _ChainIntegrals(up)
        # breakpoints: all vertex abscissae
        self.break_ts = np.unique(np.concatenate([low[:, 0], up[:, 0]]))
        ells = self.ell(self.break_ts)
        dt = np.diff(self.break_ts)
        # cumulative area and area x-moment are exact: ell is linear
        # between breakpoints
        self._cum_area = np.concatenate(
            [[0.0], np.cumsum(0.5 * (ells[1:] + ells[:-1]) * dt)])
        a, b = self.break_ts[:-1], self.break_ts[1:]
        la, lb = ells[:-1], ells[1:]
        seg_mom = dt / 6.0 * (la * (2 * a + b) + lb * (a + 2 * b))
        self._cum_xmom = np.concatenate([[0.0], np.cumsum(seg_mom)])
        self._break_ells = ells
        self.scale = P.bbox_diagonal

    def _locate(self, ts):
        idx = np.searchsorted(self.break_ts, ts, side="right") - 1
        return np.clip(idx, 0, len(self.break_ts) - 2)

    def ell(self, ts):
        """Vertical chord length at each abscissa."""
        ts = np.asarray(ts, dtype=float)
        y_lo = self._low.y_at(ts)
        y_up = self._up.y_at(ts)
        return np.maximum(y_up - y_lo, 0.0)

    def area(self, ts):
        """Area of the slice {x <= t}."""
        ts = np.asarray(ts, dtype=float)
        i = self._locate(ts)
        a = self.break_ts[i]
        la = self._break_ells[i]
        lt = self.ell(ts)
        return self._cum_area[i] + 0.5 * (la + lt) * (ts - a)

    def area_xmoment(self, ts):
        """Integral of x * ell(x) from the left extent to each t."""
        ts = np.asarray(ts, dtype=float)
        i = self._locate(ts)
        a = self.break_ts[i]
        la = self._break_ells[i]
        lt = self.ell(ts)
        h = ts - a
        part = h / 6.0 * (la * (2 * a + ts) + lt * (a + 2 * ts))
        return self._cum_xmom[i] + part

    def ptilde(self, ts):
        """Boundary length of the slice without the cut chord."""
        ts = np.asarray(ts, dtype=float)
        chains = self._low.arclen_at(ts) + self._up.arclen_at(ts)
        return chains + np.where(ts > self.t_min, self.left_edge, 0.0)

    def boundary_xmoment(self, ts):
        """Integral of x over the chord-free boundary of the slice."""
        ts = np.asarray(ts, dtype=float)
        chains = self._low.xmom_at(ts) + self._up.xmom_at(ts)
        return chains + np.where(ts > self.t_min,
                                 self.left_edge * self.t_min, 0.0)

    def c_a(self, ts):
        """x-centroid of the slice; degenerate slices report t itself."""
        ts = np.asarray(ts, dtype=float)
        A = self.area(ts)
        tiny = 1e-12 * self.scale ** 2
        safe = np.where(A > tiny, A, 1.0)
        return np.where(A > tiny, self.area_xmoment(ts) / safe, ts)

    def c_p(self, ts):
        """x-centroid of the slice boundary, cut chord included."""
        ts = np.asarray(ts, dtype=float)
        P = self.ptilde(ts) + self.ell(ts)
        tiny = 1e-12 * self.scale
        safe = np.where(P > tiny, P, 1.0)
        mom = self.boundary_xmoment(ts) + ts * self.ell(ts)
        return np.where(P > tiny, mom / safe, ts)


class _ChainIntegrals:
    """Linear-in-x interpolants of one monotone boundary chain."""

    def __init__(self, chain: np.ndarray):
        self.x = chain[:, 0]
        self.y = chain[:, 1]
        if len(chain) > 1:
            dx = np.diff(self.x)
            dy = np.diff(self.y)
            seg = np.hypot(dx, dy)
            self.sec = seg / dx
            self.cum_len = np.concatenate([[0.0], np.cumsum(seg)])
            self.cum_mom = np.concatenate(
                [[0.0], np.cumsum(seg * 0.5 * (self.x[:-1] + self.x[1:]))])
        else:
            self.sec = np.zeros(0)
            self.cum_len = np.zeros(1)
            self.cum_mom = np.zeros(1)

    def _locate(self, ts):
        idx = np.searchsorted(self.x, ts, side="right") - 1
        return np.clip(idx, 0, max(len(self.x) - 2, 0))

    def y_at(self, ts):
        return np.interp(ts, self.x, self.y)

    def arclen_at(self, ts):
        return np.interp(np.clip(ts, self.x[0], self.x[-1]), self.x, self.cum_len)

    def xmom_at(self, ts):
        if len(self.sec) == 0:
            return np.zeros_like(np.asarray(ts, dtype=float))
        ts = np.clip(ts, self.x[0], self.x[-1])
        i = self._locate(ts)
        a = self.x[i]
        return self.cum_mom[i] + self.sec[i] * 0.5 * (ts * ts - a * a)


@dataclass(frozen=True)
class Profile:
    """Sampled slice functions on a merged grid (vertices + uniform)."""

    ts: np.ndarray = field(repr=False)
    ell: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    Pfull: np.ndarray = field(repr=False)
    Ptilde: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    c_a: np.ndarray = field(repr=False)
    c_p: np.ndarray = field(repr=False)
    ref_t: float
    scale: float

    def __len__(self):
        return len(self.ts)


def merged_grid(cache: SliceCache, grid_points: int, lo=None, hi=None):
    """Vertex abscissae united with a uniform grid, near-duplicates merged."""
    lo = cache.t_min if lo is None else lo
    hi = cache.t_max if hi is None else hi
    uni = np.linspace(lo, hi, grid_points)
    verts = cache.break_ts[(cache.break_ts >= lo) & (cache.break_ts <= hi)]
    tol = 1e-12 * max(hi - lo, cache.scale)
    if len(verts):
        d = np.abs(uni[:, None] - verts[None, :]).min(axis=1)
        uni = uni[d > tol]
    ts = np.sort(np.concatenate([verts, uni]))
    keep = np.concatenate([[True], np.diff(ts) > tol])
    return ts[keep]


def profile(P: ConvexPolygon, grid_points: int = DEFAULT_GRID) -> Profile:
    """Profile of the slice functions over the whole projection interval.

    The normalizing abscissa for the ratio columns a = A(t)/A(ref) and
    p = Ptilde(t)/P(ref) is 0 when the projection contains it with a
    non-degenerate slice, otherwise the right endpoint.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    cache = SliceCache(P)
    ts = merged_grid(cache, grid_points)
    ell = cache.ell(ts)
    A = cache.area(ts)
    Pt = cache.ptilde(ts)
    Pf = Pt + ell
    c_a = cache.c_a(ts)
    c_p = cache.c_p(ts)

    ref_t = 0.0
    if not (cache.t_min < 0.0 <= cache.t_max) or \
            float(cache.area(np.array([0.0]))[0]) <= 1e-12 * cache.scale ** 2:
        ref_t = cache.t_max
    A_ref = float(cache.area(np.array([ref_t]))[0])
    P_ref = float(cache.ptilde(np.array([ref_t]))[0]
                  + cache.ell(np.array([ref_t]))[0])
    return Profile(ts, ell, A, Pf, Pt, A / A_ref, Pt / P_ref,
                   c_a, c_p, ref_t, cache.scale)


def verify_cp_identity(prof: Profile, tol: float = 1e-6) -> CheckReport:
    """Boundary-centroid identity P(t) c_p(t) = t P(t) - int P + A(t).

    The integral runs from the left extent; it is evaluated by the
    trapezoid rule, which is exact here because P is piecewise linear with
    kinks only at vertex abscissae, all of which are grid points.
    """
    ts, Pf, A, c_p = prof.ts, prof.Pfull, prof.A, prof.c_p
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (Pf[1:] + Pf[:-1]) * np.diff(ts))])
    lhs = Pf * c_p
    rhs = ts * Pf - cum + A
    mag = max(np.abs(lhs).max(), np.abs(rhs).max(), 1e-30)
    disc = np.abs(lhs - rhs) / mag
    i = int(np.argmax(disc))
    return CheckReport("cp_identity", float(disc[i]), tol,
                       tol - float(disc[i]), float(disc[i]) <= tol,
                       f"worst at t={ts[i]!r} (relative discrepancy)")


def concavity_check(prof: Profile, tol: float = 1e-9) -> CheckReport:
    """Slopes of P(t) between consecutive samples must be nonincreasing."""
    ts, Pf = prof.ts, prof.Pfull
    dt = np.diff(ts)
    slopes = np.diff(Pf) / dt
    if len(slopes) < 2:
        return CheckReport("concavity", 0.0, 0.0, 0.0, True, "too few samples")
    rises = np.diff(slopes)
    i = int(np.argmax(rises))
    worst = float(rises[i])
    # slope is dimensionless-ish (length per length); allow fp noise from
    # short sample intervals
    allowance = tol * max(1.0, float(Pf[-1]) / max(prof.ts[-1] - prof.ts[0], 1e-30))
    return CheckReport("concavity", worst, 0.0, -worst, worst <= allowance,
                       f"largest slope rise at t={ts[i + 1]!r}")


def integral_identity_check(P: ConvexPolygon,
                            grid_points: int = DEFAULT_GRID,
                            tol: float = 1e-6) -> CheckReport:
    """Checks c_p(0) - c_a(0) = integral of (a(t) - p(t)) over t <= 0.

    Both sides are computed from the same exact slice engine but along
    independent routes: the left side from boundary/area moments at 0, the
    right by trapezoid quadrature of the ratio profiles on a dense grid of
    the left part.  Requires 0 to lie inside the projection interval.
    """
    cache = SliceCache(P)
    if not (cache.t_min < 0.0 <= cache.t_max):
        raise ValueError("projection must contain 0")
    ts = merged_grid(cache, grid_points, lo=cache.t_min, hi=0.0)
    at0 = np.array([0.0])
    A0 = float(cache.area(at0)[0])
    P0 = float(cache.ptilde(at0)[0] + cache.ell(at0)[0])
    a = cache.area(ts) / A0
    p = cache.ptilde(ts) / P0
    integral = float(np.trapezoid(a - p, ts))
    lhs_gap = float(cache.c_p(at0)[0] - cache.c_a(at0)[0])
    disc = abs(integral - lhs_gap) / max(1.0, abs(lhs_gap))
    return CheckReport("integral_identity", disc, tol, tol - disc, disc <= tol,
                       f"int(a-p)={integral!r} vs c_p(0)-c_a(0)={lhs_gap!r}")


def endpoint_consistency(prof: Profile, P: ConvexPolygon) -> list[CheckReport]:
    """Profile centroids at the right extent match whole-polygon centroids."""
    from .geometry import area_centroid, boundary_centroid
    ca = float(area_centroid(P)[0])
    cp = float(boundary_centroid(P)[0])
    tol = 1e-9 * prof.scale
    out = []
    for name, got, want in [("endpoint_c_a", float(prof.c_a[-1]), ca),
                            ("endpoint_c_p", float(prof.c_p[-1]), cp)]:
        err = abs(got - want)
        out.append(CheckReport(name, err, tol, tol - err, err <= tol,
                               f"profile={got!r} polygon={want!r}"))
    return out


def profile_monotonicity(prof: Profile, tol: float = 1e-9) -> CheckReport:
    """A, P and Ptilde must all be nondecreasing along the sweep."""
    worst = 0.0
    where = ""
    for name, arr in [("A", prof.A), ("Pfull", prof.Pfull), ("Ptilde", prof.Ptilde)]:
        drops = -np.diff(arr)
        i = int(np.argmax(drops))
        if drops[i] > worst:
            worst = float(drops[i])
            where = f"{name} drops at t={prof.ts[i + 1]!r}"
    allowance = tol * prof.scale
    return CheckReport("profile_monotone", worst, 0.0, -worst,
                       worst <= allowance, where or "all nondecreasing")
