"""Extremal family, random polygon corpus, and a gap-ratio maximizer.

The thin isosceles triangle with apex at the origin and base of length
2*eps at x = 1 realizes centroid-gap ratios approaching the 1/6 bound as
eps -> 0; its gap, width and ratio have closed forms that double as
oracles for the geometric code.  A random-restart hill climber probes the
bound from below over polygons with a fixed vertex budget; it can never
exceed the bound, which makes every search run a fuzz test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, DomainError
from .geometry import (ConvexPolygon, area_centroid, boundary_centroid,
                       diameter, gap_ratio, make_polygon, measures)


@dataclass(frozen=True)
class TriangleFamily:
    eps: float
    polygon: ConvexPolygon


@dataclass(frozen=True)
class SearchState:
    best_polygon: ConvexPolygon
    best_ratio: float
    best_angle: float
    evaluations: int
    seed: int
    n_vertices: int


def triangle(eps: float) -> TriangleFamily:
    """Isosceles triangle (0,0), (1,eps), (1,-eps); axis direction (1,0)."""
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    poly = make_polygon([(0.0, 0.0), (1.0, eps), (1.0, -eps)])
    return TriangleFamily(eps, poly)


def closed_form_gap(eps: float) -> float:
    """Signed distance surplus of the boundary centroid over the area
    centroid, measured toward the base: 1/6 + eps^2/2 - (eps/2) sqrt(1+eps^2).

    Equals |c(boundary) - c(area)| of triangle(eps) while positive (it
    changes sign at eps = 1/sqrt(3)); geometric agreement is asserted for
    eps <= 0.5 only.
    """
    return 1.0 / 6.0 + 0.5 * eps * eps - 0.5 * eps * math.sqrt(1.0 + eps * eps)


def closed_form_width(eps: float, cos_etheta: float) -> float:
    """Width of the family triangle against a direction at the given
    cosine to the axis: |cos| + eps * sqrt(1 - cos^2).  Valid while the
    antipodal pair stays apex-to-base, i.e. |cos| not too small."""
    return abs(cos_etheta) + eps * math.sqrt(max(1.0 - cos_etheta ** 2, 0.0))


def closed_form_ratio(eps: float, cos_etheta: float) -> float:
    """Gap ratio of the family triangle from the closed forms."""
    if not (0.0 < eps):
        raise DomainError(f"eps must be positive, got {eps!r}")
    if abs(cos_etheta) > 1.0 or abs(cos_etheta) < 0.1:
        raise DomainError(
            f"cos_etheta={cos_etheta!r}: width formula regime needs |cos| >= 0.1")
    gap = closed_form_gap(eps)
    return gap * abs(cos_etheta) / closed_form_width(eps, cos_etheta)


def convergence_table(eps_list) -> list[dict]:
    """Geometric gap quantities for a decreasing eps sequence.

    Rows carry the ratio along the family axis and the gap relative to
    diameter and perimeter, the quantities that approach 1/6, 1/6 and 1/12.
    """
    rows = []
    for eps in eps_list:
        poly = triangle(float(eps)).polygon
        g = boundary_centroid(poly) - area_centroid(poly)
        gap = float(math.hypot(g[0], g[1]))
        _, perim = measures(poly)
        rows.append({
            "eps": float(eps),
            "ratio_axis": gap_ratio(poly, np.array([1.0, 0.0])),
            "gap_over_diameter": gap / diameter(poly),
            "gap_over_perimeter": gap / perim,
        })
    return rows


def random_convex_polygon(n: int, seed: int, anisotropy: float = 1.0) -> ConvexPolygon:
    """Hull of n uniform points in the unit disk, x-axis stretched.

    Deterministic per (n, seed, anisotropy); the hull may have fewer than
    n vertices.  Redraws (deterministically) in the vanishing-probability
    event of a degenerate hull.
    """
    if n < 3:
        raise DomainError(f"need n >= 3 points, got {n}")
    if anisotropy < 1.0:
        raise DomainError(f"anisotropy must be >= 1, got {anisotropy!r}")
    rng = np.random.default_rng([seed, n])
    for _ in range(64):
        r = np.sqrt(rng.random(n))
        phi = rng.random(n) * 2.0 * math.pi
        pts = np.column_stack([r * np.cos(phi) * anisotropy, r * np.sin(phi)])
        try:
            return make_polygon(pts)
        except DegenerateInput:
            continue
    raise DegenerateInput("random generator failed 64 consecutive draws")


def corpus_item(i: int, seed: int, max_vertices: int = 30,
                anisotropies=(1.0, 10.0, 100.0)) -> ConvexPolygon:
    """Item i of the deterministic mixed corpus for a master seed.

    Vertex counts cycle over 3..max_vertices and anisotropies over the
    given levels; the per-item seed is derived statelessly from (seed, i)
    so items can be generated independently and in any order.
    """
    n = 3 + (i % (max_vertices - 2))
    aniso = anisotropies[i % len(anisotropies)]
    item_seed = int(np.random.default_rng([seed, 0xC0, i]).integers(2 ** 63))
    return random_convex_polygon(n, item_seed, aniso)


def corpus_polygons(count: int, seed: int, max_vertices: int = 30,
                    anisotropies=(1.0, 10.0, 100.0)):
    """Deterministic mixed corpus: yields (index, polygon)."""
    for i in range(count):
        yield i, corpus_item(i, seed, max_vertices, anisotropies)


def direction_grid(k: int) -> np.ndarray:
    """k unit vectors with angles uniform over the half-turn."""
    ang = np.linspace(0.0, math.pi, k, endpoint=False)
    return np.column_stack([np.cos(ang), np.sin(ang)])


def best_ratio_direction(P: ConvexPolygon, n_dirs: int = 64,
                         refine_tol: float = 1e-6):
    """Max gap ratio over directions: coarse grid + golden-section refine.

    The ratio is invariant under direction negation, so the search runs
    over a half-turn.  Returns (ratio, angle).
    """
    g = boundary_centroid(P) - area_centroid(P)
    v = P.vertices

    def ratio_of(angle):
        d = np.array([math.cos(angle), math.sin(angle)])
        proj = v @ d
        return abs(float(g @ d)) / float(proj.max() - proj.min())

    ang = np.linspace(0.0, math.pi, n_dirs, endpoint=False)
    dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    proj = v @ dirs.T
    widths = proj.max(axis=0) - proj.min(axis=0)
    ratios = np.abs(g @ dirs.T) / widths
    i = int(np.argmax(ratios))
    step = math.pi / n_dirs

    lo, hi = ang[i] - step, ang[i] + step
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = ratio_of(x1), ratio_of(x2)
    while b - a > refine_tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = ratio_of(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = ratio_of(x1)
    best_angle = x1 if f1 >= f2 else x2
    best = max(float(ratios[i]), ratio_of(best_angle))
    return best, float(best_angle)


def maximize_ratio(n: int, budget: int, seed: int,
                   restarts: int = 8) -> SearchState:
    """Random-restart hill climbing over the gap ratio.

    Each restart perturbs one vertex at a time with a Gaussian step whose
    scale halves after 20 consecutive rejections; moves that break convex
    position are repaired by re-hulling.  Three restarts start from thin
    family triangles so the attained floor does not depend on luck.  The
    budget counts ratio evaluations, split evenly across restarts.
    """
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if budget < 1:
        raise DomainError(f"budget must be positive, got {budget}")
    per_restart = max(budget // max(restarts, 1), 1)
    best_poly = None
    best_ratio = -1.0
    best_angle = 0.0
    evaluations = 0

    seeds_eps = [0.1, 0.01, 0.001]
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        if r < len(seeds_eps):
            poly = triangle(seeds_eps[r]).polygon
        else:
            poly = random_convex_polygon(n, int(rng.integers(2 ** 62)))
        ratio, angle = best_ratio_direction(poly)
        evaluations += 1
        sigma = 0.1 * poly.bbox_diagonal
        fails = 0
        local_poly, local_ratio, local_angle = poly, ratio, angle
        while evaluations < per_restart * (r + 1):
            verts = local_poly.vertices.copy()
            k = int(rng.integers(len(verts)))
            verts[k] += rng.normal(0.0, sigma, size=2)
            try:
                cand = make_polygon(verts)
            except DegenerateInput:
                fails += 1
                if fails % 20 == 0:
                    sigma *= 0.5
                continue
            ratio, angle = best_ratio_direction(cand)
            evaluations += 1
            if ratio > local_ratio:
                local_poly, local_ratio, local_angle = cand, ratio, angle
                fails = 0
            else:
                fails += 1
                if fails % 20 == 0:
                    sigma *= 0.5
        if local_ratio > best_ratio:
            best_poly, best_ratio, best_angle = local_poly, local_ratio, local_angle

    return SearchState(best_poly, best_ratio, best_angle,
                       evaluations, seed, n)
