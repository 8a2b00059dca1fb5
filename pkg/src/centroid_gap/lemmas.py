"""Numeric verifiers for the inequality chain behind the centroid-gap bound.

Geometric checks operate on a normalized frame (projection [-1, omega],
maximal vertical chord at x = 0) and compare exact slice quantities
against the claimed bounds on dense grids.  Scalar checks (the tangent
inequality, a quintic positivity fact, and a family of algebraic
inequalities in the frame scalars over an explicit box) need no geometry
and are sampled directly.

Nomenclature for the region inequalities: after clearing denominators the
final estimate is linear in rho = s*omega, so it suffices that the value
at rho = 0 and the slope in rho are both nonnegative.  The checks below
verify those two coefficients, the intermediate majorized forms used to
prove them, the assembled rho-forms at sampled rho, and the two closing
factorizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .checks import ABS_TOL, REL_TOL, CheckReport, rel_check
from .errors import DomainError, SkippedDegenerate
from .frame import NormalizedFrame, normalize, right_part_polygon
from .geometry import ConvexPolygon, area_centroid
from .sweep import concavity_check, profile

GUARD_LEFT = 1e-6   # exclude |t + 1| below this
GUARD_CUT = 1e-12   # exclude |t| below this
DEFAULT_T_POINTS = 512


def default_t_grid(frame: NormalizedFrame, n: int = DEFAULT_T_POINTS) -> np.ndarray:
    """Vertex abscissae plus n uniform points in (-1, 0], guard bands cut."""
    cache = frame.cache
    verts = cache.break_ts
    ts = np.concatenate([verts, np.linspace(-1.0, 0.0, n)])
    ts = np.unique(ts)
    ts = ts[(ts > -1.0 + GUARD_LEFT) & (np.abs(ts) > GUARD_CUT) & (ts < 0.0)]
    return ts


def lemma1_check(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """The left-slice centroid abscissa lies in [-1/2, -B/2]."""
    ca0 = -frame.c
    low_margin = ca0 - (-0.5)
    high_margin = (-frame.B / 2.0) - ca0
    margin = min(low_margin, high_margin)
    side = "lower" if low_margin <= high_margin else "upper"
    return CheckReport("lemma1", ca0, -frame.B / 2.0, margin,
                       margin >= -tol, f"B={frame.B!r}, binding side: {side}")


def lemma2_check(frame: NormalizedFrame, grid=None, tol: float = REL_TOL) -> CheckReport:
    """Area fraction of the left slice is bounded by its chord-free
    boundary fraction: A(t)/A(0) <= Ptilde(t)/Ptilde(0)."""
    ts = default_t_grid(frame) if grid is None else np.asarray(grid)
    cache = frame.cache
    at0 = np.array([0.0])
    a = cache.area(ts) / float(cache.area(at0)[0])
    r = cache.ptilde(ts) / float(cache.ptilde(at0)[0])
    margins = r - a
    i = int(np.argmin(margins))
    return CheckReport("lemma2", float(a[i]), float(r[i]), float(margins[i]),
                       float(margins[i]) >= -tol, f"worst at t={ts[i]!r}")


def lemma3_check(frame: NormalizedFrame, grid=None, tol: float = REL_TOL) -> CheckReport:
    """Trapezoid bound on the left-slice area fraction.

    With ell' = ell(t), the fraction A(t)/A(0) is at most
    (1+t) * ((1+t) ell - (1-t) ell') / ((1+2t) ell - ell').  Numerator and
    denominator are both strictly negative on (-1, 0) because the chord is
    concave with maximum at 0; that is asserted as a sub-check.
    """
    ts = default_t_grid(frame) if grid is None else np.asarray(grid)
    cache = frame.cache
    ell = frame.ell
    lp = cache.ell(ts)
    num = (1.0 + ts) * ell - (1.0 - ts) * lp
    den = (1.0 + 2.0 * ts) * ell - lp
    sign_ok = bool(np.all(num < 0.0) and np.all(den < 0.0))
    bound = (1.0 + ts) * num / den
    a = cache.area(ts) / float(cache.area(np.array([0.0]))[0])
    margins = bound - a
    i = int(np.argmin(margins))
    ok = float(margins[i]) >= -tol and sign_ok
    ctx = f"worst at t={ts[i]!r}, signs_negative={sign_ok}"
    return CheckReport("lemma3", float(a[i]), float(bound[i]),
                       float(margins[i]), ok, ctx)


def lemma4_check(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """Centroid abscissa of the right part is at least
    omega (u^2 - u + 1) / (3u)."""
    if frame.omega <= 0.0 or math.isnan(frame.u):
        raise SkippedDegenerate("right part is empty (omega = 0)")
    psi = right_part_polygon(frame.polygon)
    if psi is None:
        raise SkippedDegenerate("right part is numerically empty")
    c_psi = float(area_centroid(psi)[0])
    u = frame.u
    rhs = frame.omega * (u * u - u + 1.0) / (3.0 * u)
    return rel_check("lemma4", rhs, c_psi, tol,
                     f"u={u!r}, omega={frame.omega!r}")


def lemma5_check(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """Left-slice area is at most (P(0) - ell) * ell / (2 alpha)."""
    cache = frame.cache
    at0 = np.array([0.0])
    A0 = float(cache.area(at0)[0])
    P0 = float(cache.ptilde(at0)[0]) + frame.ell
    rhs = (P0 - frame.ell) * frame.ell / (2.0 * frame.alpha)
    return rel_check("lemma5", A0, rhs, tol, f"alpha={frame.alpha!r}")


def star_star_check(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """Centroid gap of the left slice: c_p(0) - c_a(0) <= 1/6."""
    cache = frame.cache
    at0 = np.array([0.0])
    gap = float(cache.c_p(at0)[0] - cache.c_a(at0)[0])
    return rel_check("star_star", gap, 1.0 / 6.0, tol,
                     f"observed={gap!r}")


def star_star_star_check(frame: NormalizedFrame, tol: float = REL_TOL) -> CheckReport:
    """Full-body centroid gap: c_p(omega) - c_a(omega) <= (1 + omega)/6.

    The width of the normalized body along the axis is 1 + omega, so this
    is the main bound in frame coordinates.
    """
    cache = frame.cache
    end = np.array([cache.t_max])
    gap = float(cache.c_p(end)[0] - cache.c_a(end)[0])
    rhs = (1.0 + frame.omega) / 6.0
    return rel_check("star_star_star", gap, rhs, tol,
                     f"omega={frame.omega!r}")


def pointwise_bound_values(frame: NormalizedFrame, ts) -> dict:
    """The three pointwise bounds on a(t) - p(t) and the skip mask.

    Bounds, with lam = ell/Ptilde(0) and mu = Ptilde(t)/Ptilde(0):
      chain:     lam*mu/(1+lam)
      trapezoid: (1+t)*(2mu-(1+t)(mu+lam))/(lam+mu-2(1+t)lam) - mu/(1+lam)
      linear:    (1+t) - mu/(1+lam)
      combined:  min(chain, (1+t)*min(1, trapezoid fraction) - mu/(1+lam))
    The trapezoid fraction is skipped where its denominator (in body
    units) falls below 1e-9 of the frame scale.
    """
    ts = np.asarray(ts, dtype=float)
    cache = frame.cache
    at0 = np.array([0.0])
    A0 = float(cache.area(at0)[0])
    Pt0 = float(cache.ptilde(at0)[0])
    lam = frame.lambda5
    mu = cache.ptilde(ts) / Pt0
    a = cache.area(ts) / A0
    p = mu / (1.0 + lam)
    d = a - p

    chain = lam * mu / (1.0 + lam)
    linear = (1.0 + ts) - mu / (1.0 + lam)
    den = lam + mu - 2.0 * (1.0 + ts) * lam
    skip = den * Pt0 <= 1e-9 * cache.scale
    safe_den = np.where(skip, 1.0, den)
    frac = (2.0 * mu - (1.0 + ts) * (mu + lam)) / safe_den
    trapezoid = (1.0 + ts) * frac - mu / (1.0 + lam)
    combined = np.minimum(
        chain, (1.0 + ts) * np.minimum(1.0, np.where(skip, 1.0, frac))
        - mu / (1.0 + lam))
    return {"ts": ts, "diff": d, "mu": mu, "chain": chain,
            "trapezoid": trapezoid, "linear": linear,
            "combined": combined, "skip": skip}


def pointwise_bounds_check(frame: NormalizedFrame, grid=None,
                           tol: float = REL_TOL) -> CheckReport:
    """All three pointwise bounds and their combined minimum hold on the
    grid; mu stays in [0, 1]."""
    ts = default_t_grid(frame) if grid is None else np.asarray(grid)
    vals = pointwise_bound_values(frame, ts)
    d, skip = vals["diff"], vals["skip"]
    keep = ~skip
    worst = math.inf
    worst_ctx = ""
    for name in ("chain", "linear"):
        margins = vals[name] - d
        i = int(np.argmin(margins))
        if margins[i] < worst:
            worst, worst_ctx = float(margins[i]), f"{name} at t={ts[i]!r}"
    for name in ("trapezoid", "combined"):
        margins = np.where(keep, vals[name] - d, math.inf)
        i = int(np.argmin(margins))
        if margins[i] < worst:
            worst, worst_ctx = float(margins[i]), f"{name} at t={ts[i]!r}"
    mu = vals["mu"]
    mu_ok = bool(np.all(mu >= -tol) and np.all(mu <= 1.0 + tol))
    n_skip = int(skip.sum())
    ok = worst >= -tol and mu_ok
    ctx = f"worst: {worst_ctx}; skipped={n_skip}/{len(ts)}; mu_in_01={mu_ok}"
    return CheckReport("pointwise_bounds", -worst, 0.0, worst, ok, ctx)


# ----------------------------- scalar suites -----------------------------

def tan_margin(phi, psi):
    """tan(phi+psi) - tan(phi) - 2 tan(psi/2), vectorized."""
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    return np.tan(phi + psi) - np.tan(phi) - 2.0 * np.tan(psi / 2.0)


def tan_inequality_check(phi: float, psi: float,
                         tol: float = ABS_TOL) -> CheckReport:
    """tan(phi+psi) >= tan(phi) + 2 tan(psi/2) on the admissible wedge.

    Requires -pi/2 < phi < phi + psi < pi/2, clamped away from the poles
    by 1e-6.
    """
    half = math.pi / 2.0 - 1e-6
    if not (-half < phi and psi >= 0.0 and phi + psi < half):
        raise DomainError(f"(phi, psi)=({phi!r}, {psi!r}) outside the wedge")
    m = float(tan_margin(phi, psi))
    lhs = math.tan(phi) + 2.0 * math.tan(psi / 2.0)
    return CheckReport("tan_inequality", lhs, lhs + m, m, m >= -tol,
                       f"phi={phi!r}, psi={psi!r}")


def tan_inequality_iterated(phi: float, psis, tol: float = ABS_TOL) -> CheckReport:
    """Chained form: tan(phi + sum psi_k) >= tan(phi) + sum 2 tan(psi_k/2)."""
    psis = np.atleast_1d(np.asarray(psis, dtype=float))
    half = math.pi / 2.0 - 1e-6
    total = float(psis.sum())
    if not (-half < phi and np.all(psis >= 0.0) and phi + total < half):
        raise DomainError("chain leaves the admissible wedge")
    lhs = math.tan(phi) + float(np.sum(2.0 * np.tan(psis / 2.0)))
    m = math.tan(phi + total) - lhs
    return CheckReport("tan_inequality_iterated", lhs, lhs + m, m, m >= -tol,
                       f"phi={phi!r}, k={psis.size}")


def tan_random_margins(n: int, seed: int) -> np.ndarray:
    """Margins of the tangent inequality at n random admissible pairs."""
    rng = np.random.default_rng(seed)
    half = math.pi / 2.0 - 1e-6
    phi = -half + rng.random(n) * 2.0 * half
    psi = (half - phi) * rng.random(n)
    return tan_margin(phi, psi)


QUINTIC = (5, -10, -10, 35, -24, 6)  # ascending powers


def quintic_coeffs() -> list:
    """Coefficients (ascending) of the positivity polynomial."""
    return list(QUINTIC)


def quintic_decomposition_coeffs() -> list:
    """Same polynomial assembled from its three nonneg-friendly pieces:
    (5 - 16 x + 13 x^2) + (x^2 - x^3) + 6 x (1 - x)^4, in exact ints."""
    part1 = [5, -16, 13, 0, 0, 0]
    part2 = [0, 0, 1, -1, 0, 0]
    pow4 = [1]
    for _ in range(4):
        pow4 = [a - b for a, b in
                zip(pow4 + [0], [0] + pow4)]  # multiply by (1 - x)
    part3 = [0] + [6 * c for c in pow4]
    return [a + b + c for a, b, c in zip(part1, part2, part3)]


def quintic_check(step: float = 1e-5) -> CheckReport:
    """Grid positivity on [0, 1] plus the exact decomposition identity."""
    xs = np.arange(0.0, 1.0 + step / 2.0, step)
    vals = np.polynomial.polynomial.polyval(xs, np.array(QUINTIC, dtype=float))
    i = int(np.argmin(vals))
    grid_min = float(vals[i])
    ends_exact = vals[0] == 5.0 and vals[-1] == 2.0
    coeffs_match = quintic_decomposition_coeffs() == list(QUINTIC)
    ok = grid_min >= 0.0 and ends_exact and coeffs_match
    ctx = (f"grid_min={grid_min!r} at x={xs[i]!r}; endpoints_exact={ends_exact}; "
           f"decomposition_coeffs_match={coeffs_match}")
    return CheckReport("quintic", -grid_min, 0.0, grid_min, ok, ctx)


# --------------------------- region inequalities -------------------------

@dataclass(frozen=True)
class RegionSample:
    """One admissible point of the free-variable box.

    u in [1,2], s in (0,1], lam in (0,1], B in [1/2, min(1,(1-lam/2)/s)],
    c in [B/2, 1/2], b = s*B.
    """
    u: float
    s: float
    lam: float
    B: float
    c: float
    b: float = field(default=float("nan"))

    def __post_init__(self):
        object.__setattr__(self, "b", self.s * self.B)
        upper = min(1.0, (1.0 - self.lam / 2.0) / self.s)
        if not (1.0 <= self.u <= 2.0 and 0.0 < self.s <= 1.0
                and 0.0 < self.lam <= 1.0
                and 0.5 <= self.B <= upper + 1e-15
                and self.B / 2.0 <= self.c <= 0.5 + 1e-15):
            raise DomainError(f"sample outside the admissible box: {self}")


def draw_region_sample(rng) -> RegionSample | None:
    """Uniform draw from the box; None when the B-interval is empty."""
    u = 1.0 + rng.random()
    s = 1.0 - rng.random()
    lam = 1.0 - rng.random()
    upper = min(1.0, (1.0 - lam / 2.0) / s)
    if upper < 0.5:
        return None
    B = 0.5 + rng.random() * (upper - 0.5)
    c = B / 2.0 + rng.random() * (0.5 - B / 2.0)
    return RegionSample(u, s, lam, B, c)


def region_lhs_values(u, s, lam, B, c, rho):
    """Left-hand sides of every region inequality, vectorized.

    Returns (values, domain_masks); a value participates only where its
    mask is True.  All inequalities assert lhs >= 0.
    """
    u = np.asarray(u, dtype=float)
    b = s * B
    base = -s * (c - 1.0 / 6.0) + 0.5 - u * lam / 4.0
    uq = (u * u - u + 1.0)
    curv = (u - 2.0 + 1.0 / u) / 3.0

    vals = {
        "rho_value_at_0": curv + (s * u * c / 2.0 - b / (3.0 * u) * uq) / b + base,
        "rho_slope": curv + s * c - 2.0 * b * uq / (3.0 * u * u) + base,
        "rho_value_reduced": (1.0 / 6.0 + u * c / (2.0 * B)
                              - s * (c - 1.0 / 6.0) - u * lam / 4.0),
        "rho_value_majorized": (1.0 / 6.0 + u * c / (2.0 * B)
                                - s * (c - 1.0 / 6.0) - u / 2.0
                                + u / 2.0 * np.maximum(s * B, 0.5)),
        "rho_value_top_c": (1.0 / 6.0 + u / (4.0 * B) - s / 3.0 - u / 2.0
                            + u / 2.0 * np.maximum(s * B, 0.5)),
        "rho_value_top_c_steep": (1.0 / 6.0 + u / (4.0 * B) - s / 3.0
                                  - u / 2.0 + u * s * B / 2.0),
        "rho_slope_expanded": (curv - 2.0 * b * uq / (3.0 * u * u)
                               + s / 6.0 + 0.5 - u * lam / 4.0),
        "rho_form_split": (curv / (1.0 + rho)
                           + (s * u * c / 2.0 - b / (3.0 * u) * uq)
                           / (b + u * rho / 2.0)
                           + base / (1.0 + rho)),
        "rho_form_full": ((s * u * c / 2.0 + rho * uq / 6.0)
                          / (b + u * rho / 2.0)
                          + base / (1.0 + rho) - 1.0 / 3.0),
        "factor_B": (1.0 / B - 1.0) * (u / 4.0 - 1.0 / 6.0),
        "factor_u": (u - 1.0) * (u - 2.0) ** 2 / (12.0 * u * u),
    }
    everywhere = np.ones_like(u, dtype=bool)
    masks = {name: everywhere for name in vals}
    masks["rho_value_top_c_steep"] = s >= 1.0 / (2.0 * B)
    return vals, masks


def region_inequality_minima(n_samples: int, seed: int):
    """(per-name minimum lhs, number of rejected empty boxes)."""
    if n_samples < 10_000:
        raise ValueError("n_samples must be at least 10^4")
    rng = np.random.default_rng(seed)
    u = 1.0 + rng.random(n_samples)
    s = 1.0 - rng.random(n_samples)
    lam = 1.0 - rng.random(n_samples)
    upper = np.minimum(1.0, (1.0 - lam / 2.0) / s)
    ok = upper >= 0.5
    B = 0.5 + rng.random(n_samples) * np.maximum(upper - 0.5, 0.0)
    c = B / 2.0 + rng.random(n_samples) * (0.5 - B / 2.0)
    rho = rng.random(n_samples) * 10.0
    n_empty = int(n_samples - ok.sum())

    vals, masks = region_lhs_values(u[ok], s[ok], lam[ok], B[ok], c[ok], rho[ok])
    minima = {}
    for name, arr in vals.items():
        m = masks[name]
        minima[name] = float(arr[m].min()) if m.any() else math.inf
    return minima, n_empty


def region_inequalities_check(n_samples: int, seed: int,
                              tol: float = ABS_TOL) -> CheckReport:
    """Every region inequality is nonnegative over the sampled box."""
    minima, n_empty = region_inequality_minima(n_samples, seed)
    worst_name = min(minima, key=minima.get)
    worst = minima[worst_name]
    ok = worst >= -tol
    parts = ", ".join(f"{k}={v:.3e}" for k, v in minima.items())
    ctx = f"n={n_samples}, empty_boxes={n_empty}, minima: {parts}"
    return CheckReport("region_inequalities", -worst, 0.0, worst, ok, ctx)


# ------------------------------ orchestration ----------------------------

@dataclass(frozen=True)
class LemmaSuiteReport:
    frame: NormalizedFrame
    checks: tuple
    grid: np.ndarray = field(repr=False)
    skipped: tuple = ()

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_margin(self) -> float:
        return min(c.margin for c in self.checks)

    def by_name(self) -> dict:
        return {c.name: c for c in self.checks}


def run_lemma_suite(P: ConvexPolygon, theta, grid=None,
                    tol: float = REL_TOL,
                    profile_points: int = 512) -> LemmaSuiteReport:
    """Normalize for the direction and run every geometric check."""
    frame = normalize(P, theta)
    ts = default_t_grid(frame) if grid is None else np.asarray(grid)
    checks = [
        lemma1_check(frame, tol),
        lemma2_check(frame, ts, tol),
        lemma3_check(frame, ts, tol),
    ]
    skipped = []
    try:
        checks.append(lemma4_check(frame, tol))
    except SkippedDegenerate as e:
        skipped.append(f"lemma4: {e}")
    checks.append(lemma5_check(frame, tol))
    checks.append(star_star_check(frame, tol))
    checks.append(star_star_star_check(frame, tol))
    checks.append(pointwise_bounds_check(frame, ts, tol))
    checks.append(concavity_check(profile(frame.polygon, profile_points), tol))
    return LemmaSuiteReport(frame, tuple(checks), ts, tuple(skipped))
