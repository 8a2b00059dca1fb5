"""Planar convex polygon primitives.

Construction (convex hull with cleanup), area/perimeter, area and boundary
centroids, support values, directional widths, diameter, half-plane
slicing, vertical chord lengths, and a Monte-Carlo centroid oracle.

All operations are pure functions of immutable values.  Vertices are
stored counterclockwise in a read-only float64 array.  Tolerances are
relative to the bounding-box diagonal of the polygon at hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, InternalInvariantViolation, OutOfRange

DEGENERACY_REL_TOL = 1e-12


def unit_from_angle(phi: float) -> np.ndarray:
    """Unit vector at angle phi (radians) from the positive x-axis."""
    return np.array([math.cos(phi), math.sin(phi)])


def as_unit(d) -> np.ndarray:
    """Validate a direction as a unit vector (norm within 1e-12 of 1)."""
    d = np.asarray(d, dtype=float)
    if d.shape != (2,) or not np.all(np.isfinite(d)):
        raise ValueError(f"direction must be a finite 2-vector, got {d!r}")
    n = float(d @ d)
    if abs(n - 1.0) > 1e-12:
        raise ValueError(f"direction must have unit norm, |d|^2 = {n!r}")
    return d


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise."""

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def bbox_diagonal(self) -> float:
        v = self.vertices
        span = v.max(axis=0) - v.min(axis=0)
        return float(math.hypot(span[0], span[1]))

    def __repr__(self):
        return f"ConvexPolygon({self.n} vertices, diag={self.bbox_diagonal:.4g})"


@dataclass(frozen=True)
class CentroidPair:
    c_area: np.ndarray
    c_boundary: np.ndarray


def _hull_ccw(points: np.ndarray, eps_area: float) -> np.ndarray:
    """Andrew monotone chain; pops collinear turns (cross <= eps_area)."""
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if cross <= eps_area:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def make_polygon(points) -> ConvexPolygon:
    """Convex hull of the input points as a clean counterclockwise polygon.

    Duplicate and collinear vertices are removed (relative tolerance 1e-12
    of the bounding-box diagonal).  Raises DegenerateInput when fewer than
    three hull vertices remain or the hull area is below threshold.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise DegenerateInput(f"need at least 3 planar points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("input points must be finite")

    span = pts.max(axis=0) - pts.min(axis=0)
    diag = math.hypot(span[0], span[1])
    if diag <= 0.0:
        raise DegenerateInput("all input points coincide")
    eps_area = DEGENERACY_REL_TOL * diag * diag

    hull = _hull_ccw(pts, eps_area)
    if len(hull) < 3:
        raise DegenerateInput(f"convex hull has only {len(hull)} vertices")
    if _shoelace(hull) <= eps_area:
        raise DegenerateInput("hull area below degeneracy threshold")
    return ConvexPolygon(hull)


def _shoelace(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def measures(P: ConvexPolygon):
    """(area, perimeter) by the shoelace formula and edge-length sum."""
    v = P.vertices
    edges = np.roll(v, -1, axis=0) - v
    perimeter = float(np.hypot(edges[:, 0], edges[:, 1]).sum())
    return _shoelace(v), perimeter


def area_centroid(P: ConvexPolygon) -> np.ndarray:
    """Center of mass of the polygon with uniform area density."""
    v = P.vertices
    w = np.roll(v, -1, axis=0)
    cross = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
    area = 0.5 * cross.sum()
    cx = float(((v[:, 0] + w[:, 0]) * cross).sum() / (6.0 * area))
    cy = float(((v[:, 1] + w[:, 1]) * cross).sum() / (6.0 * area))
    return np.array([cx, cy])


def boundary_centroid(P: ConvexPolygon) -> np.ndarray:
    """Center of mass of the boundary with uniform arclength density."""
    v = P.vertices
    w = np.roll(v, -1, axis=0)
    lengths = np.hypot(*(w - v).T)
    mids = 0.5 * (v + w)
    return (lengths[:, None] * mids).sum(axis=0) / lengths.sum()


def centroid_pair(P: ConvexPolygon) -> CentroidPair:
    return CentroidPair(area_centroid(P), boundary_centroid(P))


def support_value(P: ConvexPolygon, d) -> float:
    """Support function h(d) = max over vertices of <v, d>."""
    return float((P.vertices @ np.asarray(d, dtype=float)).max())


def width(P: ConvexPolygon, theta) -> float:
    """Distance between the two support lines perpendicular to theta."""
    t = np.asarray(theta, dtype=float)
    proj = P.vertices @ t
    return float(proj.max() - proj.min())


def gap_projection(P: ConvexPolygon, theta) -> float:
    """Signed projection <c(boundary) - c(area), theta>."""
    g = boundary_centroid(P) - area_centroid(P)
    return float(g @ np.asarray(theta, dtype=float))


def gap_ratio(P: ConvexPolygon, theta) -> float:
    """|gap_projection| / width.

    The verified bound says this never exceeds 1/6; the function itself
    does not enforce that so searches can surface would-be violations.
    """
    return abs(gap_projection(P, theta)) / width(P, theta)


def diameter(P: ConvexPolygon) -> float:
    """Maximum pairwise vertex distance via rotating calipers."""
    best = 0.0
    for p, q in _antipodal_pairs(P.vertices):
        d = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2
        if d > best:
            best = d
    return math.sqrt(best)


def diameter_bruteforce(P: ConvexPolygon) -> float:
    """O(n^2) pairwise scan; cross-checks the calipers in tests."""
    v = P.vertices
    d2 = ((v[:, None, :] - v[None, :, :]) ** 2).sum(axis=2)
    return math.sqrt(float(d2.max()))


def _antipodal_pairs(points: np.ndarray):
    """Yield vertex pairs touched by parallel support lines (calipers)."""
    pts = sorted(map(tuple, points))

    def half(seq, sign):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                cr = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if sign * cr <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    upper = half(pts, -1)
    lower = half(pts, +1)
    i, j = 0, len(lower) - 1
    while i < len(upper) - 1 or j > 0:
        yield upper[i], lower[j]
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        elif ((upper[i + 1][1] - upper[i][1]) * (lower[j][0] - lower[j - 1][0])
              > (lower[j][1] - lower[j - 1][1]) * (upper[i + 1][0] - upper[i][0])):
            i += 1
        else:
            j -= 1
    yield upper[-1], lower[0]


def clip_below(P: ConvexPolygon, t: float):
    """Intersection of the polygon with the half-plane x <= t.

    Returns None (empty) when the slice has no area, the original polygon
    when t is at or beyond the right extent, and a new ConvexPolygon
    otherwise.  The empty result is a value, not an exception, so sweeps
    can iterate past the body's extent.
    """
    v = P.vertices
    xs = v[:, 0]
    if t >= xs.max():
        return P
    if t <= xs.min():
        return None
    out = []
    n = len(v)
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        ain, bin_ = a[0] <= t, b[0] <= t
        if ain:
            out.append(a)
        if ain != bin_:
            lam = (t - a[0]) / (b[0] - a[0])
            out.append(a + lam * (b - a))
    return _polygon_from_chain(np.array(out), P.bbox_diagonal)


def _polygon_from_chain(chain: np.ndarray, parent_diag: float):
    """Assemble a clip result, collapsing near-duplicate corners."""
    if len(chain) < 3:
        return None
    keep = [chain[0]]
    tol = DEGENERACY_REL_TOL * parent_diag
    for p in chain[1:]:
        if math.hypot(p[0] - keep[-1][0], p[1] - keep[-1][1]) > tol:
            keep.append(p)
    while len(keep) >= 2 and math.hypot(*(keep[0] - keep[-1])) <= tol:
        keep.pop()
    if len(keep) < 3:
        return None
    out = np.array(keep)
    if _shoelace(out) <= 0.0:
        return None
    return ConvexPolygon(out)


def monotone_chains(P: ConvexPolygon):
    """Split the boundary into lower/upper chains as graphs over x.

    Returns (lower, upper, left_edge_len, right_edge_len) where each chain
    is a (k, 2) array with strictly increasing x from the left extent to
    the right extent.  Vertical edges can only occur at the two extents of
    a strictly convex polygon; anything else raises.
    """
    v = P.vertices
    n = len(v)
    xs = v[:, 0]
    t_min, t_max = xs.min(), xs.max()

    left_ids = np.flatnonzero(xs == t_min)
    start = left_ids[np.argmin(v[left_ids, 1])]  # leftmost-bottom corner
    vv = v[np.roll(np.arange(n), -start)]

    i = 0
    lower = [0]
    while i + 1 < n and vv[i + 1, 0] > vv[i, 0]:
        i += 1
        lower.append(i)
    if vv[i, 0] != t_max:
        raise InternalInvariantViolation("lower chain did not reach the right extent")
    j = i
    if j + 1 < n and vv[j + 1, 0] == vv[j, 0]:
        j += 1  # vertical right edge
    upper = [j]
    while j + 1 < n and vv[j + 1, 0] < vv[j, 0]:
        j += 1
        upper.append(j)
    if j + 1 < n:
        raise InternalInvariantViolation("interior vertical edge in convex polygon")
    if vv[j, 0] != t_min:
        upper.append(0)  # wrap edge descends to the left extent

    low = vv[lower]
    up = vv[upper][::-1]
    left_edge = float(up[0, 1] - low[0, 1])
    right_edge = float(up[-1, 1] - low[-1, 1])
    if left_edge < 0 or right_edge < 0 or up[0, 0] != t_min:
        raise InternalInvariantViolation("chain extraction produced crossed extents")
    return low, up, left_edge, right_edge


def chord_length(P: ConvexPolygon, t: float) -> float:
    """Length of the vertical cross-section at x = t.

    At a vertical edge this is the edge length.  Raises OutOfRange when t
    lies outside the projection of the polygon onto the x-axis.
    """
    v = P.vertices
    xs = v[:, 0]
    t_min, t_max = xs.min(), xs.max()
    tol = DEGENERACY_REL_TOL * P.bbox_diagonal
    if t < t_min - tol or t > t_max + tol:
        raise OutOfRange(f"t={t!r} outside projection [{t_min!r}, {t_max!r}]")
    t = min(max(t, t_min), t_max)
    low, up, _, _ = monotone_chains(P)
    y_lo = float(np.interp(t, low[:, 0], low[:, 1]))
    y_up = float(np.interp(t, up[:, 0], up[:, 1]))
    return y_up - y_lo


def contains_point(P: ConvexPolygon, p, tol_rel: float = 1e-9) -> bool:
    """Point-in-convex-polygon test with a relative boundary tolerance."""
    v = P.vertices
    w = np.roll(v, -1, axis=0)
    p = np.asarray(p, dtype=float)
    cross = (w[:, 0] - v[:, 0]) * (p[1] - v[:, 1]) - (w[:, 1] - v[:, 1]) * (p[0] - v[:, 0])
    return bool(np.all(cross >= -tol_rel * P.bbox_diagonal ** 2))


@dataclass(frozen=True)
class OracleCentroids:
    """Monte-Carlo centroid estimates with per-component standard errors."""

    c_area: np.ndarray
    c_boundary: np.ndarray
    se_area: np.ndarray
    se_boundary: np.ndarray
    n_accepted: int


def oracle_centroid_mc(P: ConvexPolygon, n_samples: int, seed: int) -> OracleCentroids:
    """Independent centroid oracle.

    Area centroid: rejection sampling of the bounding box.  Boundary
    centroid: uniform-arclength sampling of the edges.  Standard errors
    are sample standard deviations divided by sqrt(count).
    """
    if n_samples < 10_000:
        raise ValueError("n_samples must be at least 10^4 for a usable oracle")
    rng = np.random.default_rng(seed)
    v = P.vertices
    lo, hi = v.min(axis=0), v.max(axis=0)

    count = 0
    s1 = np.zeros(2)
    s2 = np.zeros(2)
    remaining = n_samples
    chunk = min(1_000_000, n_samples)
    w = np.roll(v, -1, axis=0)
    ex, ey = (w - v).T
    while remaining > 0:
        m = min(chunk, remaining)
        pts = lo + rng.random((m, 2)) * (hi - lo)
        cross = (ex[None, :] * (pts[:, 1:2] - v[None, :, 1])
                 - ey[None, :] * (pts[:, 0:1] - v[None, :, 0]))
        inside = np.all(cross >= 0.0, axis=1)
        acc = pts[inside]
        count += len(acc)
        s1 += acc.sum(axis=0)
        s2 += (acc ** 2).sum(axis=0)
        remaining -= m
    if count < 2:
        raise InternalInvariantViolation("rejection sampler accepted nothing")
    c_area = s1 / count
    var = (s2 / count - c_area ** 2) * count / (count - 1)
    se_area = np.sqrt(np.maximum(var, 0.0) / count)

    lengths = np.hypot(ex, ey)
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    u = rng.random(n_samples) * cum[-1]
    idx = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(v) - 1)
    frac = (u - cum[idx]) / lengths[idx]
    bpts = v[idx] + frac[:, None] * (w - v)[idx]
    c_boundary = bpts.mean(axis=0)
    se_boundary = bpts.std(axis=0, ddof=1) / math.sqrt(n_samples)
    return OracleCentroids(c_area, c_boundary, se_area, se_boundary, count)
